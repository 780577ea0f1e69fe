use crate::error::{Error, Result};

use super::{is_nonpositive_integer, log_gamma, KahanSum};

/// Above this argument `kummer_1f1` returns the leading asymptotic term.
pub const KUMMER_Z_SWITCH: f64 = 40.0;

/// Hard cap on the number of Taylor terms.
pub const KUMMER_MAX_TERMS: usize = 500;

/// Arguments of `₁F₁(α, β; z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerParams {
    pub alpha: f64,
    pub beta: f64,
    pub z: f64,
}

impl KummerParams {
    /// Validates `β ∉ {0, -1, -2, ...}` and `z ≥ 0`.
    pub fn new(alpha: f64, beta: f64, z: f64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite() && z.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "non-finite 1F1 arguments ({alpha}, {beta}, {z})"
            )));
        }
        if is_nonpositive_integer(beta) {
            return Err(Error::InvalidParams(format!(
                "beta = {beta} is a nonpositive integer"
            )));
        }
        if z < 0.0 {
            return Err(Error::InvalidParams(format!("z = {z} is negative")));
        }
        Ok(Self { alpha, beta, z })
    }

    fn terminates(&self) -> bool {
        is_nonpositive_integer(self.alpha)
    }
}

/// Taylor series of `₁F₁` with compensated summation, capped at
/// [`KUMMER_MAX_TERMS`] terms. Terminates after `-α + 1` terms when α is a
/// nonpositive integer.
pub fn kummer_series(p: KummerParams) -> Result<f64> {
    let KummerParams { alpha, beta, z } = p;
    let mut sum = KahanSum::default();
    let mut term = 1.0f64;
    sum.add(term);
    for k in 0..KUMMER_MAX_TERMS {
        let kf = k as f64;
        term *= (alpha + kf) / (beta + kf) * z / (kf + 1.0);
        if term == 0.0 {
            return Ok(sum.value());
        }
        sum.add(term);
        if !sum.value().is_finite() {
            return Err(Error::Overflow(format!("1F1 series overflow at z = {z}")));
        }
        // past the peak of the terms and past the sign changes of (α)_k
        if kf > z && kf > -alpha && term.abs() <= 1e-17 * sum.value().abs() {
            return Ok(sum.value());
        }
    }
    Err(Error::InvalidParams(format!(
        "1F1({alpha}, {beta}; {z}) series did not converge in {KUMMER_MAX_TERMS} terms"
    )))
}

/// `ln |e^z z^{α-β} Γ(β)/Γ(α)|` and its sign.
fn asymptotic_log(p: KummerParams) -> Result<(f64, f64)> {
    let KummerParams { alpha, beta, z } = p;
    if is_nonpositive_integer(alpha) {
        return Err(Error::DegenerateLeadingTerm { alpha });
    }
    if z <= 0.0 {
        return Err(Error::InvalidParams(
            "asymptotic form of 1F1 needs z > 0".to_string(),
        ));
    }
    let gb = log_gamma(beta)?;
    let ga = log_gamma(alpha)?;
    Ok((
        (alpha - beta) * z.ln() + gb.ln_abs - ga.ln_abs,
        gb.sign * ga.sign,
    ))
}

/// Leading large-argument term `e^z z^{α-β} Γ(β)/Γ(α)`, evaluated in log space.
pub fn kummer_asymptotic(p: KummerParams) -> Result<f64> {
    let (ln_rest, sign) = asymptotic_log(p)?;
    let ln_abs = p.z + ln_rest;
    if ln_abs > f64::MAX.ln() {
        return Err(Error::Overflow(format!(
            "1F1 asymptotic at z = {} exceeds f64 range",
            p.z
        )));
    }
    Ok(sign * ln_abs.exp())
}

/// `₁F₁(α, β; z)`: Taylor series for `z ≤ KUMMER_Z_SWITCH` (or whenever the
/// series terminates), leading asymptotic term above.
pub fn kummer_1f1(p: KummerParams) -> Result<f64> {
    if p.z <= KUMMER_Z_SWITCH || p.terminates() {
        kummer_series(p)
    } else {
        kummer_asymptotic(p)
    }
}

/// `e^{-z} ₁F₁(α, β; z)`, finite for arguments where `₁F₁` itself overflows.
pub fn kummer_1f1_scaled(p: KummerParams) -> Result<f64> {
    if p.z <= KUMMER_Z_SWITCH {
        Ok(kummer_series(p)? * (-p.z).exp())
    } else if p.terminates() {
        // polynomial times a decaying exponential; combine in log space
        let poly = kummer_series(p)?;
        if poly == 0.0 {
            return Ok(0.0);
        }
        Ok(poly.signum() * (poly.abs().ln() - p.z).exp())
    } else {
        let (ln_rest, sign) = asymptotic_log(p)?;
        Ok(sign * ln_rest.exp())
    }
}
