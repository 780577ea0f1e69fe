use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};

use super::{kummer_1f1, kummer_1f1_scaled, log_gamma, KummerParams};

/// Largest `x²` accepted by the unscaled [`hermite_nu`] when the Kummer terms
/// do not terminate.
pub const HERMITE_MAX_ARG_SQ: f64 = 700.0;

/// Weights of the two Kummer terms:
/// `H_ν(x) = a·M(-ν/2, 1/2, x²) + x·b·M((1-ν)/2, 3/2, x²)` with
/// `a = 2^ν √π / Γ((1-ν)/2)` and `b = -2·2^ν √π / Γ(-ν/2)`.
/// A weight is exactly zero where its gamma function has a pole.
fn weights(nu: f64) -> Result<(f64, f64)> {
    let ln_pref = nu * LN_2 + 0.5 * PI.ln();
    let w = |arg: f64, scale: f64| -> Result<f64> {
        match log_gamma(arg) {
            Ok(lg) => Ok(scale * lg.sign * (ln_pref - lg.ln_abs).exp()),
            Err(Error::Pole(_)) => Ok(0.0),
            Err(e) => Err(e),
        }
    };
    Ok((w(0.5 * (1.0 - nu), 1.0)?, w(-0.5 * nu, -2.0)?))
}

fn combine(nu: f64, x: f64, eval: impl Fn(KummerParams) -> Result<f64>) -> Result<f64> {
    if !(nu.is_finite() && x.is_finite()) {
        return Err(Error::InvalidParams(format!(
            "non-finite Hermite arguments ({nu}, {x})"
        )));
    }
    let (a, b) = weights(nu)?;
    let z = x * x;
    let mut value = 0.0;
    if a != 0.0 {
        value += a * eval(KummerParams::new(-0.5 * nu, 0.5, z)?)?;
    }
    if b != 0.0 && x != 0.0 {
        value += b * x * eval(KummerParams::new(0.5 * (1.0 - nu), 1.5, z)?)?;
    }
    Ok(value)
}

/// Hermite function `H_ν(x)` for real index ν, through its two-Kummer
/// representation. Reduces to the physicists' Hermite polynomial for integer
/// `ν ≥ 0`.
///
/// For non-integer ν and large positive `x` the two terms cancel heavily; the
/// representation is intended for the moderate arguments of the profile code.
pub fn hermite_nu(nu: f64, x: f64) -> Result<f64> {
    let value = combine(nu, x, |p| {
        let terminates = p.alpha <= 0.0 && p.alpha == p.alpha.round();
        if !terminates && p.z > HERMITE_MAX_ARG_SQ {
            return Err(Error::Overflow(format!(
                "H_nu argument squared {} beyond guard {HERMITE_MAX_ARG_SQ}",
                p.z
            )));
        }
        kummer_1f1(p)
    })?;
    if !value.is_finite() {
        return Err(Error::Overflow(format!("H_{nu}({x}) is not representable")));
    }
    Ok(value)
}

/// `e^{-x²} H_ν(x)`, the combination that appears under the Gaussian envelope
/// of the stationary profiles. Finite for all arguments.
pub fn hermite_nu_scaled(nu: f64, x: f64) -> Result<f64> {
    combine(nu, x, kummer_1f1_scaled)
}

/// Physicists' Hermite polynomial by the recurrence
/// `H_{n+1} = 2x H_n - 2n H_{n-1}`.
pub fn hermite_poly(n: u32, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}
