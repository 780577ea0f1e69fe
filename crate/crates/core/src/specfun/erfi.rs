use std::f64::consts::PI;

use crate::error::{Error, Result};

use super::KahanSum;

/// `|x|` guard for [`erfi`]: `e^{x²}` stays representable below it.
pub const ERFI_MAX_ARG: f64 = 26.0;

const SERIES_LIMIT: f64 = 3.0;

/// Sample spacing of Rybicki's formula; the aliasing error is `~e^{-(π/2h)²}`.
const RYBICKI_STEP: f64 = 0.25;

/// `Σ x^{2k+1} / (k! (2k+1))`, all terms positive for `x > 0`.
fn erfi_series_sum(x: f64) -> f64 {
    let x2 = x * x;
    let mut sum = KahanSum::default();
    let mut power = x; // x^{2k+1}/k!
    let mut k = 0u32;
    loop {
        let term = power / (2 * k + 1) as f64;
        sum.add(term);
        if term.abs() <= 1e-17 * sum.value().abs() || k > 400 {
            return sum.value();
        }
        k += 1;
        power *= x2 / k as f64;
    }
}

/// Dawson's integral `F(x) = e^{-x²} ∫₀ˣ e^{s²} ds`.
///
/// Power series for `|x| ≤ 3`, Rybicki's sampling formula
/// `F(x) ≈ π^{-1/2} Σ_{n odd} e^{-(x-nh)²}/n` beyond.
pub fn dawson(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= SERIES_LIMIT {
        return (-x * x).exp() * erfi_series_sum(x);
    }
    let h = RYBICKI_STEP;
    let lo = ((ax - 8.0) / h).floor() as i64;
    let hi = ((ax + 8.0) / h).ceil() as i64;
    let mut sum = KahanSum::default();
    for n in lo..=hi {
        if n % 2 == 0 {
            continue;
        }
        let d = ax - n as f64 * h;
        sum.add((-d * d).exp() / n as f64);
    }
    x.signum() * sum.value() / PI.sqrt()
}

/// Imaginary error function `erfi(x) = (2/√π) ∫₀ˣ e^{s²} ds`.
pub fn erfi(x: f64) -> Result<f64> {
    if !x.is_finite() || x.abs() > ERFI_MAX_ARG {
        return Err(Error::Overflow(format!(
            "erfi({x}) beyond guard |x| <= {ERFI_MAX_ARG}"
        )));
    }
    let scale = 2.0 / PI.sqrt();
    if x.abs() <= SERIES_LIMIT {
        Ok(scale * erfi_series_sum(x))
    } else {
        Ok(scale * (x * x).exp() * dawson(x))
    }
}
