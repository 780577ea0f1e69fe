use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{log_spaced, TimeSeries};

/// Smallest `r²` that counts as a clean fit.
pub const R_SQUARED_THRESHOLD: f64 = 0.999;

/// Fewest samples a fit accepts.
pub const MIN_FIT_SAMPLES: usize = 10;

/// Samples per window used by the paper-scale pipelines.
pub const RECOMMENDED_SAMPLES: usize = 50;

/// Algebraic fits need `t_min ≥ ASYMPTOTIC_FACTOR·|t⋆|`.
pub const ASYMPTOTIC_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitWindow {
    pub t_min: f64,
    pub t_max: f64,
}

impl FitWindow {
    pub fn new(t_min: f64, t_max: f64) -> Result<Self> {
        if !(t_min.is_finite() && t_max.is_finite() && t_max > t_min) {
            return Err(Error::InvalidParams(format!(
                "fit window [{t_min}, {t_max}] is empty"
            )));
        }
        Ok(Self { t_min, t_max })
    }
}

impl Default for FitWindow {
    fn default() -> Self {
        Self {
            t_min: 10.0,
            t_max: 100.0,
        }
    }
}

/// `n` log-spaced sample times covering the window.
pub fn fit_window_times(window: FitWindow, n: usize) -> Vec<f64> {
    log_spaced(window.t_min, window.t_max, n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecayKind {
    Algebraic,
    Exponential,
    Indeterminate,
}

/// Result of a decay fit. `|u| ≈ C (t - t⋆)^p` for algebraic fits and
/// `|u| ≈ C e^{-r t}` for exponential ones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub kind: DecayKind,
    pub exponent: Option<f64>,
    pub rate: Option<f64>,
    pub prefactor: f64,
    pub r_squared: f64,
    /// First and last sample time used.
    pub window: FitWindow,
    pub t_star: Option<f64>,
    pub samples: usize,
}

struct Line {
    slope: f64,
    intercept: f64,
    r_squared: f64,
    ss_res: f64,
}

fn least_squares(x: &[f64], y: &[f64]) -> Line {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxx += (a - mx) * (a - mx);
        sxy += (a - mx) * (b - my);
        syy += (b - my) * (b - my);
    }
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let ss_res: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| {
            let r = b - (intercept + slope * a);
            r * r
        })
        .sum();
    // a flat series carries no information about either model
    let r_squared = if syy > 0.0 {
        (1.0 - ss_res / syy).max(0.0)
    } else {
        0.0
    };
    Line {
        slope,
        intercept,
        r_squared,
        ss_res,
    }
}

/// Samples inside the window with `ln|u|`.
fn windowed(ts: &TimeSeries, window: FitWindow) -> Result<(Vec<f64>, Vec<f64>)> {
    let w = ts.window(window.t_min, window.t_max);
    if w.len() < MIN_FIT_SAMPLES {
        return Err(Error::WindowTooShort {
            found: w.len(),
            required: MIN_FIT_SAMPLES,
        });
    }
    let mut logs = Vec::with_capacity(w.len());
    for &v in w.values() {
        if !(v.abs() > 0.0) || !v.is_finite() {
            return Err(Error::NonPositiveValues(v));
        }
        logs.push(v.abs().ln());
    }
    Ok((w.times().to_vec(), logs))
}

fn used_window(times: &[f64]) -> FitWindow {
    FitWindow {
        t_min: times[0],
        t_max: times[times.len() - 1],
    }
}

fn algebraic_unchecked(times: &[f64], logs: &[f64], t_star: f64) -> Result<(Line, Vec<f64>)> {
    let x = times
        .iter()
        .map(|&t| {
            let s = t - t_star;
            if s > 0.0 {
                Ok(s.ln())
            } else {
                Err(Error::Domain(format!(
                    "sample t = {t} is not after t_star = {t_star}"
                )))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((least_squares(&x, logs), x))
}

/// Slope of `ln|u|` against `ln(t - t⋆)`.
pub fn fit_algebraic(ts: &TimeSeries, t_star: f64, window: FitWindow) -> Result<DecayFit> {
    let required = ASYMPTOTIC_FACTOR * t_star.abs();
    if window.t_min < required {
        return Err(Error::WindowNotAsymptotic {
            t_min: window.t_min,
            required,
        });
    }
    let (times, logs) = windowed(ts, window)?;
    let (line, _) = algebraic_unchecked(&times, &logs, t_star)?;
    Ok(DecayFit {
        kind: DecayKind::Algebraic,
        exponent: Some(line.slope),
        rate: None,
        prefactor: line.intercept.exp(),
        r_squared: line.r_squared,
        window: used_window(&times),
        t_star: Some(t_star),
        samples: times.len(),
    })
}

/// Algebraic fit with `t⋆` chosen by golden-section search over
/// `[lo, hi]` to minimise the residual. `hi` must lie before the window.
pub fn fit_algebraic_search(
    ts: &TimeSeries,
    window: FitWindow,
    lo: f64,
    hi: f64,
) -> Result<DecayFit> {
    if !(lo < hi) {
        return Err(Error::InvalidParams(format!(
            "empty t_star bracket [{lo}, {hi}]"
        )));
    }
    let (times, logs) = windowed(ts, window)?;
    if hi >= times[0] {
        return Err(Error::InvalidParams(format!(
            "t_star bracket must end before the first sample {}",
            times[0]
        )));
    }
    let cost = |s: f64| algebraic_unchecked(&times, &logs, s).map(|(l, _)| l.ss_res);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (cost(c)?, cost(d)?);
    for _ in 0..200 {
        if (b - a).abs() <= 1e-10 * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = cost(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = cost(d)?;
        }
    }
    let t_star = 0.5 * (a + b);
    let (line, _) = algebraic_unchecked(&times, &logs, t_star)?;
    Ok(DecayFit {
        kind: DecayKind::Algebraic,
        exponent: Some(line.slope),
        rate: None,
        prefactor: line.intercept.exp(),
        r_squared: line.r_squared,
        window: used_window(&times),
        t_star: Some(t_star),
        samples: times.len(),
    })
}

/// Slope of `ln|u|` against `t`; the rate is minus the slope.
pub fn fit_exponential(ts: &TimeSeries, window: FitWindow) -> Result<DecayFit> {
    let (times, logs) = windowed(ts, window)?;
    let line = least_squares(&times, &logs);
    Ok(DecayFit {
        kind: DecayKind::Exponential,
        exponent: None,
        rate: Some(-line.slope),
        prefactor: line.intercept.exp(),
        r_squared: line.r_squared,
        window: used_window(&times),
        t_star: None,
        samples: times.len(),
    })
}

/// [`classify_decay_in`] over the default window `[10, 100]`.
pub fn classify_decay(ts: &TimeSeries, t_star: f64) -> Result<DecayFit> {
    classify_decay_in(ts, t_star, FitWindow::default())
}

/// Fits both models and keeps the one with the larger `r²`; below
/// [`R_SQUARED_THRESHOLD`] for both the result is indeterminate and carries
/// both parameters.
pub fn classify_decay_in(ts: &TimeSeries, t_star: f64, window: FitWindow) -> Result<DecayFit> {
    let alg = fit_algebraic(ts, t_star, window)?;
    let exp = fit_exponential(ts, window)?;
    if alg.samples < RECOMMENDED_SAMPLES {
        log::warn!(
            "decay classification from {} samples; {RECOMMENDED_SAMPLES} are recommended",
            alg.samples
        );
    }
    let best = if alg.r_squared >= exp.r_squared {
        &alg
    } else {
        &exp
    };
    if best.r_squared < R_SQUARED_THRESHOLD {
        return Ok(DecayFit {
            kind: DecayKind::Indeterminate,
            exponent: alg.exponent,
            rate: exp.rate,
            prefactor: best.prefactor,
            r_squared: best.r_squared,
            window: best.window,
            t_star: Some(t_star),
            samples: best.samples,
        });
    }
    Ok(best.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(f: impl Fn(f64) -> f64) -> TimeSeries {
        let t = fit_window_times(FitWindow::default(), 50);
        TimeSeries::from_fn(t, |t| Ok(f(t))).unwrap()
    }

    #[test]
    fn exact_power_law() {
        let ts = series(|t| 3.0 * t.powf(-0.5));
        let fit = fit_algebraic(&ts, 0.0, FitWindow::default()).unwrap();
        assert!((fit.exponent.unwrap() + 0.5).abs() < 1e-13);
        assert!((fit.prefactor - 3.0).abs() < 1e-12);
        assert!(fit.r_squared > 1.0 - 1e-12);
    }

    #[test]
    fn exact_exponential() {
        let ts = series(|t| 2.0 * (-3.0 * t).exp());
        let fit = fit_exponential(&ts, FitWindow::default()).unwrap();
        assert!((fit.rate.unwrap() - 3.0).abs() < 1e-12);
        assert_eq!(
            classify_decay(&ts, 0.0).unwrap().kind,
            DecayKind::Exponential
        );
    }

    #[test]
    fn classification() {
        let alg = classify_decay(&series(|t| (t + 0.5).powf(-1.5)), -0.5).unwrap();
        assert_eq!(alg.kind, DecayKind::Algebraic);
        assert!((alg.exponent.unwrap() + 1.5).abs() < 1e-12);
        let flat = classify_decay(&series(|_| 2.0), 0.0).unwrap();
        assert_eq!(flat.kind, DecayKind::Indeterminate);
        assert_eq!(flat.r_squared, 0.0);
    }

    #[test]
    fn errors() {
        let ts = series(|t| t.powf(-1.0));
        assert!(matches!(
            fit_algebraic(&ts, -2.0, FitWindow::default()),
            Err(Error::WindowNotAsymptotic { .. })
        ));
        let short = FitWindow::new(10.0, 11.0).unwrap();
        assert!(matches!(
            fit_exponential(&ts, short),
            Err(Error::WindowTooShort { .. })
        ));
        let with_zero = series(|t| if t > 50.0 { 0.0 } else { 1.0 / t });
        assert!(matches!(
            fit_exponential(&with_zero, FitWindow::default()),
            Err(Error::NonPositiveValues(_))
        ));
    }

    #[test]
    fn recovers_unknown_t_star() {
        let ts = series(|t| (t + 3.0).powf(-1.0));
        let fit = fit_algebraic_search(&ts, FitWindow::default(), -9.0, 5.0).unwrap();
        assert!((fit.t_star.unwrap() + 3.0).abs() < 1e-4);
        assert!((fit.exponent.unwrap() + 1.0).abs() < 1e-6);
    }
}
