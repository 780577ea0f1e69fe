use crate::error::{Error, Result};

use super::is_nonpositive_integer;

/// `ln |Γ(x)|` together with the sign of `Γ(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogGamma {
    pub ln_abs: f64,
    pub sign: f64,
}

impl LogGamma {
    pub fn value(&self) -> f64 {
        self.sign * self.ln_abs.exp()
    }
}

/// Log-gamma with sign tracking. Fails with [`Error::Pole`] at 0, -1, -2, ...
pub fn log_gamma(x: f64) -> Result<LogGamma> {
    if !x.is_finite() {
        return Err(Error::InvalidParams(format!(
            "log_gamma argument {x} is not finite"
        )));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    let (ln_abs, sign) = libm::lgamma_r(x);
    Ok(LogGamma {
        ln_abs,
        sign: if sign < 0 { -1.0 } else { 1.0 },
    })
}

/// `1/Γ(x)`, which is entire: exactly zero at the poles of Γ.
pub fn recip_gamma(x: f64) -> f64 {
    match log_gamma(x) {
        Ok(lg) => lg.sign * (-lg.ln_abs).exp(),
        Err(_) => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn known_values() {
        let one = log_gamma(1.0).unwrap();
        assert!(one.ln_abs.abs() < 1e-15);
        assert_eq!(one.sign, 1.0);

        let half = log_gamma(0.5).unwrap();
        assert!((half.ln_abs - PI.sqrt().ln()).abs() < 1e-15);
        assert_eq!(half.sign, 1.0);
    }

    #[test]
    fn reflection_at_minus_half() {
        // Γ(-1/2) = Γ(1/2)/(-1/2) and Γ(3/2) = Γ(1/2)/2, so Γ(-1/2) = -4 Γ(3/2).
        let g15 = log_gamma(1.5).unwrap().value();
        let lg = log_gamma(-0.5).unwrap();
        assert_eq!(lg.sign, -1.0);
        let expected = (4.0 * g15).ln();
        assert!(((lg.ln_abs - expected) / expected).abs() < 1e-13);
    }

    #[test]
    fn poles() {
        for x in [0.0, -1.0, -7.0] {
            assert_eq!(log_gamma(x), Err(Error::Pole(x)));
            assert_eq!(recip_gamma(x), 0.0);
        }
    }

    #[test]
    fn relative_accuracy_against_factorials() {
        let mut fact = 1.0f64;
        for n in 1..40 {
            // Γ(n+1) = n!
            fact *= n as f64;
            let lg = log_gamma(n as f64 + 1.0).unwrap();
            let rel = (lg.value() / fact - 1.0).abs();
            assert!(rel < 1e-13, "n = {n}: rel {rel}");
        }
    }
}
