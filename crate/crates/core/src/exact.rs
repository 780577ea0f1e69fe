//! Closed-form solutions of `u_t = u_xx`, used as oracles and as sources of
//! consonant boundary data.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::selfsim::{
    gaussian_mode_sum, hermite_mode_exact, hermite_mode_sum, kummer_mode_exact, kummer_mode_sum,
    mode_to_physical, mode_to_physical_dx, profile_derivative, stationary_profile, ModeSum,
};
use crate::specfun::{kummer_1f1_scaled, KummerParams};

/// `|w(η)|` below which a Robin coefficient `w'(η)/w(η)` is treated as singular.
pub const ROBIN_SINGULAR_TOL: f64 = 1e-12;

/// Handle on a closed-form solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExactSolution {
    Zero,
    Constant {
        value: f64,
    },
    /// `x (2t+1)^{-3/2} e^{-x²/(2(2t+1))}`.
    Hermite1,
    /// `c⋆/(t+1) ₁F₁(-1/2, 1/2, x²/(4(t+1))) e^{-x²/(4(t+1))}`.
    KummerCompat {
        c_star: f64,
    },
    /// `mass · (4π(t-t⋆))^{-1/2} e^{-x²/(4(t-t⋆))}`.
    Gaussian {
        t_star: f64,
        mass: f64,
    },
    /// `e^{-k²t} sin(k(x+D))` with `k = nπ/(2D)`.
    SineMode {
        d: f64,
        n: u32,
    },
    Modes(ModeSum),
}

impl ExactSolution {
    /// Unit-mass heat kernel started at `t⋆`.
    pub fn gaussian(t_star: f64) -> Self {
        Self::Gaussian { t_star, mass: 1.0 }
    }

    pub fn value(&self, x: f64, t: f64) -> Result<f64> {
        match self {
            Self::Zero => Ok(0.0),
            Self::Constant { value } => Ok(*value),
            Self::Hermite1 => {
                check_after(t, -0.5)?;
                Ok(hermite_mode_exact(x, t))
            }
            Self::KummerCompat { c_star } => kummer_mode_exact(*c_star, x, t),
            Self::Gaussian { t_star, mass } => {
                let s = check_after(t, *t_star)?;
                Ok(mass * (-x * x / (4.0 * s)).exp() / (4.0 * PI * s).sqrt())
            }
            Self::SineMode { d, n } => {
                let k = sine_wavenumber(*d, *n);
                Ok((-k * k * t).exp() * (k * (x + d)).sin())
            }
            Self::Modes(sum) => mode_to_physical(sum, x, t),
        }
    }

    /// `u_x(x, t)`, analytic for every variant.
    pub fn dx(&self, x: f64, t: f64) -> Result<f64> {
        match self {
            Self::Zero | Self::Constant { .. } => Ok(0.0),
            Self::Hermite1 => {
                let s = 2.0 * check_after(t, -0.5)?;
                Ok(s.powf(-1.5) * (-x * x / (2.0 * s)).exp() * (1.0 - x * x / s))
            }
            Self::KummerCompat { c_star } => {
                let s = check_after(t, -1.0)?;
                let z = x * x / (4.0 * s);
                let m0 = kummer_1f1_scaled(KummerParams::new(-0.5, 0.5, z)?)?;
                let m1 = kummer_1f1_scaled(KummerParams::new(0.5, 1.5, z)?)?;
                Ok(c_star / s * (x / (2.0 * s)) * (-m1 - m0))
            }
            Self::Gaussian { t_star, .. } => {
                let s = check_after(t, *t_star)?;
                Ok(-x / (2.0 * s) * self.value(x, t)?)
            }
            Self::SineMode { d, n } => {
                let k = sine_wavenumber(*d, *n);
                Ok(k * (-k * k * t).exp() * (k * (x + d)).cos())
            }
            Self::Modes(sum) => mode_to_physical_dx(sum, x, t),
        }
    }

    /// The one-term mode sum behind a self-similar handle.
    pub fn mode_sum(&self) -> Option<ModeSum> {
        match self {
            Self::Hermite1 => Some(hermite_mode_sum()),
            Self::KummerCompat { c_star } => Some(kummer_mode_sum(*c_star)),
            Self::Gaussian { t_star, mass } => gaussian_mode_sum(*t_star).ok().map(|s| {
                let frame = *s.frame();
                let mut term = s.terms()[0];
                term.mode.c2 *= mass;
                ModeSum::new(frame)
                    .with_term(term.lambda, term.mode)
                    .expect("same index")
            }),
            Self::Modes(sum) => Some(sum.clone()),
            _ => None,
        }
    }

    /// Blow-up time of a self-similar handle.
    pub fn t_star(&self) -> Option<f64> {
        self.mode_sum().map(|s| s.frame().t_star())
    }

    /// Robin coefficient `κ(t) = w'(η)/(w(η) L)` with `L = √(2(t-t⋆))` and
    /// `η = x/L`, so that `u_x(x,t) = κ(t) u(x,t)` for this solution.
    pub fn robin_coefficient(&self, x: f64, t: f64) -> Result<f64> {
        let sum = self
            .mode_sum()
            .ok_or_else(|| Error::NotSelfSimilar(format!("{self:?} has no stationary profile")))?;
        let [term] = sum.terms() else {
            return Err(Error::NotSelfSimilar(format!(
                "{} profile terms, a single one is required",
                sum.terms().len()
            )));
        };
        let width = (2.0 * check_after(t, sum.frame().t_star())?).sqrt();
        let eta = x / width;
        let w = stationary_profile(&term.mode, eta)?;
        if w.abs() < ROBIN_SINGULAR_TOL {
            return Err(Error::RobinSingular { t, value: w });
        }
        Ok(profile_derivative(&term.mode, eta)? / (w * width))
    }
}

/// `k = nπ/(2D)`.
pub fn sine_wavenumber(d: f64, n: u32) -> f64 {
    n as f64 * PI / (2.0 * d)
}

fn check_after(t: f64, t_star: f64) -> Result<f64> {
    let s = t - t_star;
    if !(s > 0.0) {
        return Err(Error::Domain(format!(
            "t = {t} is not after the blow-up time {t_star}"
        )));
    }
    Ok(s)
}
