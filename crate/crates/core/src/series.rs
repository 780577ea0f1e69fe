//! Sine-series solution of the Dirichlet problem on `[-D, D]`:
//!
//! ```text
//! u(x,t) = (1/D) Σ_n e^{-k²t} [û₀(k) + k(g̃(k²,t) - (-1)ⁿ h̃(k²,t))] sin(k(x+D)),
//! k = nπ/(2D),   g̃(k²,t) = ∫₀ᵗ e^{k²t'} g(t') dt'.
//! ```
//!
//! The growing `g̃` is always paired with the decaying `e^{-k²t}`.

use serde::{Deserialize, Serialize};

use crate::cauchy::{split_interval, InitialData};
use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::quadrature::{integrate_value, simpson_uniform, QuadOptions};
use crate::signal::TimeSignal;

/// Tolerance of the sine and boundary transforms.
pub const TRANSFORM_TOL: f64 = 1e-12;

/// `e^{-k²s}` is dropped once `k²s` exceeds this.
const DECAY_CUTOFF: f64 = 40.0;

/// Largest `k²t` for which the raw `g̃` is returned.
pub const RAW_TRANSFORM_MAX_EXPONENT: f64 = 700.0;

/// `∫_{-D}^{D} sin(k(x+D)) u₀(x) dx` by adaptive quadrature.
pub fn sine_transform(u0: &InitialData, k: f64, d: f64) -> Result<f64> {
    let cuts = u0.breakpoints(-d, d);
    let pieces = split_interval(-d, d, cuts);
    // a few panels per half wavelength keep the adaptive rule out of trouble
    let panels = ((k.abs() * 2.0 * d / std::f64::consts::PI).ceil() as usize).max(1);
    let opts = QuadOptions::abs(TRANSFORM_TOL / (pieces.len() * panels) as f64);
    let mut total = 0.0;
    for (a, b) in pieces {
        let w = (b - a) / panels as f64;
        for j in 0..panels {
            let lo = a + j as f64 * w;
            let hi = if j + 1 == panels { b } else { lo + w };
            total += integrate_value(|x: f64| (k * (x + d)).sin() * u0.eval(x), lo, hi, opts)?;
        }
    }
    Ok(total)
}

/// Sine transform of sampled data by composite Simpson on the grid nodes.
pub fn sine_transform_grid(u0: &GridFunction, k: f64) -> f64 {
    let grid = u0.grid();
    let d = grid.half_width();
    let samples: Vec<f64> = grid
        .nodes()
        .iter()
        .zip(u0.values())
        .map(|(x, u)| (k * (x + d)).sin() * u)
        .collect();
    simpson_uniform(&samples, grid.dx())
}

/// `e^{-k²t} g̃(k², t) = ∫₀ᵗ e^{-k²(t-t')} g(t') dt'`, the overflow-safe form.
pub fn boundary_transform(g: &TimeSignal, k2: f64, t: f64) -> Result<f64> {
    if t < 0.0 || k2 < 0.0 {
        return Err(Error::Domain(format!(
            "boundary transform needs t, k2 >= 0 (t = {t}, k2 = {k2})"
        )));
    }
    if t == 0.0 || g.is_zero() {
        return Ok(0.0);
    }
    if let TimeSignal::Constant(c) = g {
        return Ok(if k2 == 0.0 {
            c * t
        } else {
            c * (-(-k2 * t).exp_m1()) / k2
        });
    }
    let lo = if k2 > 0.0 {
        (t - DECAY_CUTOFF / k2).max(0.0)
    } else {
        0.0
    };
    let mut cuts = Vec::new();
    if let TimeSignal::Tabulated { times, .. } = g {
        cuts.extend(times.iter().copied());
    }
    // resolve the boundary layer of width 1/k² next to t
    if k2 > 0.0 {
        let mut s = 1.0 / k2;
        while t - s > lo {
            cuts.push(t - s);
            s *= 4.0;
        }
    }
    let pieces = split_interval(lo, t, cuts);
    let opts = QuadOptions::abs(TRANSFORM_TOL / pieces.len() as f64);
    let failure = std::cell::RefCell::new(None);
    let mut total = 0.0;
    for (a, b) in pieces {
        total += integrate_value(
            |s: f64| match g.eval(s) {
                Ok(v) => (-k2 * (t - s)).exp() * v,
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    0.0
                }
            },
            a,
            b,
            opts,
        )?;
    }
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(total)
}

/// The raw transform `g̃(k², t) = ∫₀ᵗ e^{k²t'} g(t') dt'`, only for
/// `k²t ≤ 700`.
pub fn boundary_transform_raw(g: &TimeSignal, k2: f64, t: f64) -> Result<f64> {
    if k2 * t > RAW_TRANSFORM_MAX_EXPONENT {
        return Err(Error::Overflow(format!(
            "raw boundary transform at k2*t = {} exceeds {RAW_TRANSFORM_MAX_EXPONENT}",
            k2 * t
        )));
    }
    if t == 0.0 || g.is_zero() {
        return Ok(0.0);
    }
    integrate_value(
        |s: f64| (k2 * s).exp() * g.eval(s).unwrap_or(f64::NAN),
        0.0,
        t,
        QuadOptions {
            abs_tol: 0.0,
            rel_tol: TRANSFORM_TOL,
            max_depth: 30,
        },
    )
}

/// How the boundary contributions of the series are summed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Summation {
    /// The truncated series as written.
    Plain,
    /// The slowly converging parts `q_n/k` and `q̇_n/k³` of the boundary
    /// terms are summed in closed form (a linear plus a cubic profile in x),
    /// leaving a remainder that decays like `k^{-5}`.
    #[default]
    Lifted,
}

/// Truncated sine-series solution with precomputed `û₀` coefficients.
#[derive(Debug, Clone)]
pub struct SineSeriesSolution {
    d: f64,
    u0_hat: Vec<f64>,
    g0: TimeSignal,
    h0: TimeSignal,
    summation: Summation,
}

impl SineSeriesSolution {
    /// `n_terms` modes of the problem with initial data `u0` and Dirichlet
    /// data `g0` at `-D`, `h0` at `D`.
    pub fn new(
        u0: &InitialData,
        d: f64,
        n_terms: usize,
        g0: TimeSignal,
        h0: TimeSignal,
    ) -> Result<Self> {
        Self::check(d, n_terms)?;
        let u0_hat = (1..=n_terms)
            .map(|n| sine_transform(u0, wavenumber(d, n), d))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            d,
            u0_hat,
            g0,
            h0,
            summation: Summation::default(),
        })
    }

    /// Coefficients from sampled initial data.
    pub fn from_grid(
        u0: &GridFunction,
        n_terms: usize,
        g0: TimeSignal,
        h0: TimeSignal,
    ) -> Result<Self> {
        let d = u0.grid().half_width();
        Self::check(d, n_terms)?;
        let u0_hat = (1..=n_terms)
            .map(|n| sine_transform_grid(u0, wavenumber(d, n)))
            .collect();
        Ok(Self {
            d,
            u0_hat,
            g0,
            h0,
            summation: Summation::default(),
        })
    }

    fn check(d: f64, n_terms: usize) -> Result<()> {
        if !(d > 0.0) || n_terms == 0 {
            return Err(Error::InvalidParams(format!(
                "series needs D > 0 and at least one term (D = {d}, N = {n_terms})"
            )));
        }
        Ok(())
    }

    pub fn with_summation(mut self, summation: Summation) -> Self {
        self.summation = summation;
        self
    }

    pub fn half_width(&self) -> f64 {
        self.d
    }

    pub fn terms(&self) -> usize {
        self.u0_hat.len()
    }

    pub fn u0_hat(&self) -> &[f64] {
        &self.u0_hat
    }

    fn homogeneous(&self) -> bool {
        self.g0.is_zero() && self.h0.is_zero()
    }
}

fn wavenumber(d: f64, n: usize) -> f64 {
    n as f64 * std::f64::consts::PI / (2.0 * d)
}

/// `u(x, t)` from the first `N` modes (ascending `n`). At `t = 0` this is the
/// truncated sine expansion of `u₀`.
pub fn series_solution(s: &SineSeriesSolution, x: f64, t: f64) -> Result<f64> {
    let d = s.d;
    if !(x.abs() <= d) || !(t >= 0.0) {
        return Err(Error::Domain(format!(
            "series evaluated outside |x| <= {d}, t >= 0 at ({x}, {t})"
        )));
    }
    let lifted = s.summation == Summation::Lifted && t > 0.0 && !s.homogeneous();
    let (g, h, dg, dh) = if lifted {
        (
            s.g0.eval(t)?,
            s.h0.eval(t)?,
            s.g0.derivative(t)?,
            s.h0.derivative(t)?,
        )
    } else {
        (0.0, 0.0, 0.0, 0.0)
    };
    let mut sum = 0.0;
    for (i, &u0_hat) in s.u0_hat.iter().enumerate() {
        let n = i + 1;
        let k = wavenumber(d, n);
        let k2 = k * k;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 }; // (-1)^n
        let mut coeff = (-k2 * t).exp() * u0_hat;
        if t > 0.0 && !s.homogeneous() {
            let bg = boundary_transform(&s.g0, k2, t)?;
            let bh = boundary_transform(&s.h0, k2, t)?;
            coeff += k * (bg - sign * bh);
            if lifted {
                coeff -= (g - sign * h) / k - (dg - sign * dh) / (k2 * k);
            }
        }
        sum += coeff * (k * (x + d)).sin();
    }
    let mut u = sum / d;
    if lifted {
        // linear interpolant of the boundary values plus the cubic ψ with
        // ψ'' = ∂_t(linear interpolant), ψ(±D) = 0
        let len = 2.0 * d;
        let y = x + d;
        u += g + (h - g) * y / len;
        u += dg * y * y / 2.0 + (dh - dg) * y * y * y / (6.0 * len)
            - len * (2.0 * dg + dh) / 6.0 * y;
    }
    Ok(u)
}

/// `Σ_{n≤N} A_n e^{-(nπ/D)²t} sin(nπx/D)` on `[0, D]` with homogeneous
/// Dirichlet ends, `A_n = (2/D) ∫₀^D u₀(x) sin(nπx/D) dx`.
pub fn dirichlet_series_0d(
    u0: impl Fn(f64) -> f64,
    d: f64,
    n_terms: usize,
    x: f64,
    t: f64,
) -> Result<f64> {
    if !(d > 0.0) || !(0.0..=d).contains(&x) || t < 0.0 {
        return Err(Error::Domain(format!(
            "series on [0, {d}] evaluated at ({x}, {t})"
        )));
    }
    let mut sum = 0.0;
    for n in 1..=n_terms {
        let k = n as f64 * std::f64::consts::PI / d;
        let a = 2.0 / d
            * integrate_value(
                |y: f64| u0(y) * (k * y).sin(),
                0.0,
                d,
                QuadOptions::abs(TRANSFORM_TOL),
            )?;
        sum += a * (-k * k * t).exp() * (k * x).sin();
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cauchy::InitialPreset;
    use crate::exact::ExactSolution;
    use crate::signal::Trace;
    use std::f64::consts::PI;

    #[test]
    fn sine_transform_examples() {
        let d = 1.3;
        let mode = InitialData::preset(InitialPreset::SineMode { d, n: 1 }).unwrap();
        assert!((sine_transform(&mode, PI / (2.0 * d), d).unwrap() - d).abs() < 1e-12);
        let even = InitialData::preset(InitialPreset::Gaussian).unwrap();
        assert!(
            sine_transform(&even, 2.0 * PI / (2.0 * d), d)
                .unwrap()
                .abs()
                < 1e-12
        );
    }

    #[test]
    fn constant_boundary_transform() {
        let c = TimeSignal::Constant(2.5);
        let (k2, t) = (3.0f64, 0.7f64);
        let expected = 2.5 * (1.0 - (-k2 * t).exp()) / k2;
        assert!((boundary_transform(&c, k2, t).unwrap() - expected).abs() < 1e-15);
        // same value through the general quadrature path
        let f = TimeSignal::function(|_| Ok(2.5));
        assert!((boundary_transform(&f, k2, t).unwrap() - expected).abs() < 1e-12);
        let raw = boundary_transform_raw(&f, k2, t).unwrap();
        assert!((raw - 2.5 * ((k2 * t).exp() - 1.0) / k2).abs() < 1e-11);
        assert!(matches!(
            boundary_transform_raw(&f, 1000.0, 1.0),
            Err(Error::Overflow(_))
        ));
        assert_eq!(
            boundary_transform(&TimeSignal::Zero, 1.0, 1.0).unwrap(),
            0.0
        );
    }

    #[test]
    fn large_wavenumber_transform() {
        let f = TimeSignal::function(|t: f64| Ok(t.cos()));
        let (k2, t) = (1e4f64, 2.0f64);
        // ∫₀ᵗ e^{-k²(t-s)} cos s ds ≈ (k² cos t + sin t)/(k⁴ + 1)
        let expected = (k2 * t.cos() + t.sin()) / (k2 * k2 + 1.0);
        assert!((boundary_transform(&f, k2, t).unwrap() - expected).abs() < 1e-14);
    }

    #[test]
    fn eigenmode_is_exact() {
        let d = 1.0;
        let mode = InitialData::preset(InitialPreset::SineMode { d, n: 1 }).unwrap();
        let s = SineSeriesSolution::new(&mode, d, 5, TimeSignal::Zero, TimeSignal::Zero).unwrap();
        let k = PI / 2.0;
        for (x, t) in [(0.0, 0.3), (0.4, 1.0), (1.0, 0.5)] {
            let u = series_solution(&s, x, t).unwrap();
            assert!((u - (-k * k * t).exp() * (k * (x + d)).sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn lifted_and_plain_agree_with_closed_form() {
        let e = ExactSolution::Hermite1;
        let u0 = InitialData::preset(InitialPreset::Hermite1).unwrap();
        let g = TimeSignal::exact(e.clone(), -1.0, Trace::Value);
        let h = TimeSignal::exact(e.clone(), 1.0, Trace::Value);
        let lifted = SineSeriesSolution::new(&u0, 1.0, 60, g.clone(), h.clone()).unwrap();
        let plain = lifted.clone().with_summation(Summation::Plain);
        for (x, t) in [(0.3, 0.1), (-0.7, 1.0), (0.95, 2.0)] {
            let exact = e.value(x, t).unwrap();
            let ul = series_solution(&lifted, x, t).unwrap();
            let up = series_solution(&plain, x, t).unwrap();
            assert!(
                (ul - exact).abs() < 1e-8,
                "lifted ({x}, {t}): {ul} vs {exact}"
            );
            assert!(
                (up - exact).abs() < 1e-2,
                "plain ({x}, {t}): {up} vs {exact}"
            );
        }
    }

    #[test]
    fn half_interval_series() {
        let d = 2.0;
        let u = dirichlet_series_0d(|x| (PI * x / d).sin(), d, 4, 0.5, 0.2).unwrap();
        let k = PI / d;
        assert!((u - (-k * k * 0.2).exp() * (k * 0.5).sin()).abs() < 1e-12);
    }
}
