//! Scaling frame, stationary self-similar profiles and finite mode sums.
//!
//! A self-similar solution of `u_t = u_xx` has the form `u = A(t) w(x/L(t))`
//! with `L(t) = √(2(t - t⋆))`. In the rescaled variables the profile `w(ξ)`
//! is a steady state of
//!
//! ```text
//! w'' + ξ w' - b w = 0,        ν = -(b + 1),
//! ```
//!
//! whose solutions are `e^{-ξ²/2}[c₁ H_ν(ξ/√2) + c₂ ₁F₁(-ν/2, 1/2, ξ²/2)]`.

use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{dawson, hermite_nu_scaled, kummer_1f1_scaled, KummerParams};

/// Tolerance on `ν = -(b - λ + 1)` when a term is added to a [`ModeSum`].
const INDEX_TOL: f64 = 1e-12;

/// Rescaling parameters `(G, b, L₀, A₀, t⋆)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingFrame {
    g: f64,
    b: f64,
    l0: f64,
    a0: f64,
    t_star: f64,
}

impl ScalingFrame {
    /// Frame with unit growth rate `G = 1`.
    pub fn new(b: f64, l0: f64, a0: f64, t_star: f64) -> Result<Self> {
        Self::with_growth(1.0, b, l0, a0, t_star)
    }

    /// Frame with `L₀ = √(-2t⋆)` and `A₀ = (-t⋆)^{b/2}`, so that `τ(0) = 0`
    /// and `A(t) = (t - t⋆)^{b/2}`, the normalization of [`mode_to_physical`].
    pub fn normalized(b: f64, t_star: f64) -> Result<Self> {
        if !(t_star < 0.0) {
            return Err(Error::InvalidParams(format!(
                "t_star = {t_star} must be negative"
            )));
        }
        Self::new(b, (-2.0 * t_star).sqrt(), (-t_star).powf(0.5 * b), t_star)
    }

    /// General constructor. Everything downstream assumes `G = 1`, so any
    /// other rate is rejected.
    pub fn with_growth(g: f64, b: f64, l0: f64, a0: f64, t_star: f64) -> Result<Self> {
        if g != 1.0 {
            return Err(Error::InvalidParams(format!(
                "growth rate G = {g}; only G = 1 is supported"
            )));
        }
        let frame = Self {
            g,
            b,
            l0,
            a0,
            t_star,
        };
        frame.validate()?;
        Ok(frame)
    }

    #[cfg(test)]
    pub(crate) fn unchecked(g: f64, b: f64, l0: f64, a0: f64, t_star: f64) -> Self {
        Self {
            g,
            b,
            l0,
            a0,
            t_star,
        }
    }

    fn validate(&self) -> Result<()> {
        let finite = [self.g, self.b, self.l0, self.a0, self.t_star]
            .iter()
            .all(|v| v.is_finite());
        if !finite || self.g <= 0.0 || self.l0 <= 0.0 || self.t_star >= 0.0 {
            return Err(Error::InvalidParams(format!(
                "frame needs G > 0, L0 > 0, t_star < 0 (got G = {}, L0 = {}, t_star = {})",
                self.g, self.l0, self.t_star
            )));
        }
        Ok(())
    }

    pub fn g(&self) -> f64 {
        self.g
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn l0(&self) -> f64 {
        self.l0
    }
    pub fn a0(&self) -> f64 {
        self.a0
    }
    pub fn t_star(&self) -> f64 {
        self.t_star
    }
    /// `ν = -(b + 1)`.
    pub fn nu(&self) -> f64 {
        -(self.b + 1.0)
    }

    /// `2G(t - t⋆)/L₀²`, the base of the frame maps.
    fn base(&self, t: f64) -> Result<f64> {
        if !(t > self.t_star) {
            return Err(Error::Domain(format!(
                "t = {t} is not after the blow-up time t_star = {}",
                self.t_star
            )));
        }
        Ok(2.0 * self.g / (self.l0 * self.l0) * (t - self.t_star))
    }

    /// Rescaled width `L(t) = L₀ e^{Gτ} = √(2G(t - t⋆))`.
    pub fn width(&self, t: f64) -> Result<f64> {
        Ok(self.l0 * self.base(t)?.sqrt())
    }
}

/// Logarithmic time `τ` with `e^τ = [2G(t - t⋆)/L₀²]^{1/(2G)}`.
pub fn tau_of_t(frame: &ScalingFrame, t: f64) -> Result<f64> {
    Ok(frame.base(t)?.ln() / (2.0 * frame.g))
}

/// Inverse of [`tau_of_t`].
pub fn t_of_tau(frame: &ScalingFrame, tau: f64) -> f64 {
    frame.t_star + frame.l0 * frame.l0 / (2.0 * frame.g) * (2.0 * frame.g * tau).exp()
}

/// Amplitude `A(t) = A₀ [2G(t - t⋆)/L₀²]^{b/(2G)}`.
pub fn amplitude_of_t(frame: &ScalingFrame, t: f64) -> Result<f64> {
    Ok(frame.a0 * frame.base(t)?.powf(frame.b / (2.0 * frame.g)))
}

/// One stationary profile.
///
/// With `second_branch` set (only for `ν ∈ {0, 2}`, where the Hermite and
/// Kummer solutions coincide) `c₁` multiplies the odd Erfi solution instead of
/// the Hermite function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SelfSimilarMode {
    pub c1: f64,
    pub c2: f64,
    pub nu: f64,
    #[serde(default)]
    pub second_branch: bool,
}

impl SelfSimilarMode {
    pub fn new(c1: f64, c2: f64, nu: f64) -> Self {
        Self {
            c1,
            c2,
            nu,
            second_branch: false,
        }
    }

    pub fn hermite(c1: f64, nu: f64) -> Self {
        Self::new(c1, 0.0, nu)
    }

    pub fn kummer(c2: f64, nu: f64) -> Self {
        Self::new(0.0, c2, nu)
    }

    /// Odd Erfi solution for `ν ∈ {0, 2}`, scaled by `c1`.
    pub fn second_branch(c1: f64, nu: f64) -> Result<Self> {
        let mode = Self {
            c1,
            c2: 0.0,
            nu,
            second_branch: true,
        };
        mode.validate()?;
        Ok(mode)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c1.is_finite() && self.c2.is_finite() && self.nu.is_finite()) {
            return Err(Error::InvalidParams(format!("non-finite mode {self:?}")));
        }
        if self.second_branch && self.nu != 0.0 && self.nu != 2.0 {
            return Err(Error::UnsupportedBranch(self.nu));
        }
        Ok(())
    }

    /// The amplitude exponent `b = -(ν + 1)` this profile is stationary for.
    pub fn b(&self) -> f64 {
        -(self.nu + 1.0)
    }
}

/// Odd Erfi solution and its derivative, through Dawson's integral
/// (`e^{-ξ²/2} Erfi(ξ/√2) = (2/√π) F(ξ/√2)`).
fn erfi_branch(nu: f64, xi: f64) -> Result<(f64, f64)> {
    let y = xi / SQRT_2;
    let f = dawson(y);
    let df = 1.0 - 2.0 * y * f; // F'(y)
    let k = 2.0 / PI.sqrt();
    if nu == 0.0 {
        // w = e^{-ξ²/2} Erfi(ξ/√2)
        Ok((k * f, k * df / SQRT_2))
    } else if nu == 2.0 {
        // w = 2ξ + √(2π)(1 - ξ²) e^{-ξ²/2} Erfi(ξ/√2)
        let q = 1.0 - xi * xi;
        let w = 2.0 * xi + 2.0 * SQRT_2 * q * f;
        let dw = 2.0 + 2.0 * SQRT_2 * (-2.0 * xi * f) + 2.0 * q * df;
        Ok((w, dw))
    } else {
        Err(Error::UnsupportedBranch(nu))
    }
}

/// `e^{-ξ²/2} H_ν(ξ/√2)`.
fn hermite_part(nu: f64, xi: f64) -> Result<f64> {
    hermite_nu_scaled(nu, xi / SQRT_2)
}

/// `e^{-ξ²/2} ₁F₁(a, b, ξ²/2)`.
fn kummer_part(a: f64, b: f64, xi: f64) -> Result<f64> {
    kummer_1f1_scaled(KummerParams::new(a, b, 0.5 * xi * xi)?)
}

/// Stationary profile `w(ξ)`, evaluated with the Gaussian envelope folded
/// into the special functions so that large `|ξ|` does not overflow.
pub fn stationary_profile(mode: &SelfSimilarMode, xi: f64) -> Result<f64> {
    mode.validate()?;
    let nu = mode.nu;
    let mut w = 0.0;
    if mode.c1 != 0.0 {
        w += mode.c1
            * if mode.second_branch {
                erfi_branch(nu, xi)?.0
            } else {
                hermite_part(nu, xi)?
            };
    }
    if mode.c2 != 0.0 {
        w += mode.c2 * kummer_part(-0.5 * nu, 0.5, xi)?;
    }
    Ok(w)
}

/// `w'(ξ)`, using `d/dy H_ν(y) = 2ν H_{ν-1}(y)` and
/// `d/dz ₁F₁(a, b, z) = (a/b) ₁F₁(a+1, b+1, z)`.
pub fn profile_derivative(mode: &SelfSimilarMode, xi: f64) -> Result<f64> {
    mode.validate()?;
    let nu = mode.nu;
    let mut dw = 0.0;
    if mode.c1 != 0.0 {
        dw += mode.c1
            * if mode.second_branch {
                erfi_branch(nu, xi)?.1
            } else {
                let dh = if nu == 0.0 {
                    0.0
                } else {
                    SQRT_2 * nu * hermite_part(nu - 1.0, xi)?
                };
                dh - xi * hermite_part(nu, xi)?
            };
    }
    if mode.c2 != 0.0 {
        let dm = if nu == 0.0 {
            0.0
        } else {
            -nu * xi * kummer_part(1.0 - 0.5 * nu, 1.5, xi)?
        };
        dw += mode.c2 * (dm - xi * kummer_part(-0.5 * nu, 0.5, xi)?);
    }
    Ok(dw)
}

/// Residual `w'' + ξw' - b w` of the steady-state equation, with the
/// derivatives of [`stationary_profile`] taken by fourth-order five-point
/// central differences of step `h`.
pub fn stationary_residual(mode: &SelfSimilarMode, b: f64, xi: f64, h: f64) -> Result<f64> {
    if !(1e-6..=1e-2).contains(&h) {
        return Err(Error::InvalidParams(format!(
            "step h = {h} outside [1e-6, 1e-2]"
        )));
    }
    let w = |s: f64| stationary_profile(mode, s);
    let (wm2, wm1, w0, wp1, wp2) = (
        w(xi - 2.0 * h)?,
        w(xi - h)?,
        w(xi)?,
        w(xi + h)?,
        w(xi + 2.0 * h)?,
    );
    let d2 = (-wp2 + 16.0 * wp1 - 30.0 * w0 + 16.0 * wm1 - wm2) / (12.0 * h * h);
    let d1 = (-wp2 + 8.0 * wp1 - 8.0 * wm1 + wm2) / (12.0 * h);
    Ok(d2 + xi * d1 - b * w0)
}

/// Boundedness and integrability of a profile with effective exponent `b̃`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeClass {
    BoundedNonintegrable,
    Integrable,
    Unbounded,
}

pub fn classify_mode(b_tilde: f64) -> ModeClass {
    if b_tilde >= 0.0 {
        ModeClass::Unbounded
    } else if b_tilde >= -1.0 {
        ModeClass::BoundedNonintegrable
    } else {
        ModeClass::Integrable
    }
}

/// One term of a [`ModeSum`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeTerm {
    pub lambda: f64,
    pub mode: SelfSimilarMode,
}

impl ModeTerm {
    /// Effective exponent `b̃ = b - λ`.
    pub fn b_tilde(&self, frame: &ScalingFrame) -> f64 {
        frame.b - self.lambda
    }
}

/// Finite superposition `Σ_j (t - t⋆)^{(b-λ_j)/2} w_j(x/√(2(t - t⋆)))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeSum {
    frame: ScalingFrame,
    terms: Vec<ModeTerm>,
}

impl ModeSum {
    pub fn new(frame: ScalingFrame) -> Self {
        Self {
            frame,
            terms: Vec::new(),
        }
    }

    /// Appends a term; its index must satisfy `ν = -(b - λ + 1)`.
    pub fn with_term(mut self, lambda: f64, mode: SelfSimilarMode) -> Result<Self> {
        self.push(lambda, mode)?;
        Ok(self)
    }

    pub fn push(&mut self, lambda: f64, mode: SelfSimilarMode) -> Result<()> {
        mode.validate()?;
        let expected = -(self.frame.b - lambda + 1.0);
        if (mode.nu - expected).abs() > INDEX_TOL * (1.0 + expected.abs()) {
            return Err(Error::InvalidParams(format!(
                "mode index {} does not match -(b - lambda + 1) = {expected}",
                mode.nu
            )));
        }
        self.terms.push(ModeTerm { lambda, mode });
        Ok(())
    }

    /// Single term with `λ` chosen so that the term's index is `mode.nu`.
    pub fn single(frame: ScalingFrame, mode: SelfSimilarMode) -> Result<Self> {
        let lambda = frame.b + mode.nu + 1.0;
        Self::new(frame).with_term(lambda, mode)
    }

    pub fn frame(&self) -> &ScalingFrame {
        &self.frame
    }

    pub fn terms(&self) -> &[ModeTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn scaled(&self, x: f64, t: f64) -> Result<(f64, f64)> {
        let s = t - self.frame.t_star;
        if !(s > 0.0) {
            return Err(Error::Domain(format!(
                "t = {t} is not after the blow-up time t_star = {}",
                self.frame.t_star
            )));
        }
        let width = (2.0 * s).sqrt();
        Ok((s, x / width))
    }
}

/// `u(x, t)` of a finite mode sum (unit growth rate).
pub fn mode_to_physical(sum: &ModeSum, x: f64, t: f64) -> Result<f64> {
    let (s, xi) = sum.scaled(x, t)?;
    sum.terms.iter().try_fold(0.0, |acc, term| {
        let amp = s.powf(0.5 * term.b_tilde(&sum.frame));
        Ok(acc + amp * stationary_profile(&term.mode, xi)?)
    })
}

/// `u_x(x, t)` of a finite mode sum.
pub fn mode_to_physical_dx(sum: &ModeSum, x: f64, t: f64) -> Result<f64> {
    let (s, xi) = sum.scaled(x, t)?;
    let width = (2.0 * s).sqrt();
    sum.terms.iter().try_fold(0.0, |acc, term| {
        let amp = s.powf(0.5 * term.b_tilde(&sum.frame));
        Ok(acc + amp * profile_derivative(&term.mode, xi)? / width)
    })
}

/// Closed-form odd solution `x (2t+1)^{-3/2} e^{-x²/(2(2t+1))}`.
pub fn hermite_mode_exact(x: f64, t: f64) -> f64 {
    let s = 2.0 * t + 1.0;
    x * s.powf(-1.5) * (-x * x / (2.0 * s)).exp()
}

/// Closed-form even solution `c⋆/(t+1) ₁F₁(-1/2, 1/2, z) e^{-z}`,
/// `z = x²/(4(t+1))`.
pub fn kummer_mode_exact(c_star: f64, x: f64, t: f64) -> Result<f64> {
    let s = t + 1.0;
    if !(s > 0.0) {
        return Err(Error::Domain(format!("t = {t} is not after t_star = -1")));
    }
    let z = x * x / (4.0 * s);
    Ok(c_star / s * kummer_1f1_scaled(KummerParams::new(-0.5, 0.5, z)?)?)
}

/// The odd closed form as a one-term [`ModeSum`]: `t⋆ = -1/2`, `b̃ = -2`, `ν = 1`.
pub fn hermite_mode_sum() -> ModeSum {
    let frame = ScalingFrame::normalized(-3.0, -0.5).expect("valid frame");
    ModeSum::new(frame)
        .with_term(-1.0, SelfSimilarMode::hermite(2f64.powf(-1.5), 1.0))
        .expect("index matches")
}

/// The even Kummer closed form as a one-term [`ModeSum`]: `t⋆ = -1`, `b̃ = -2`, `ν = 1`.
pub fn kummer_mode_sum(c_star: f64) -> ModeSum {
    let frame = ScalingFrame::normalized(-2.0, -1.0).expect("valid frame");
    ModeSum::single(frame, SelfSimilarMode::kummer(c_star, 1.0)).expect("index matches")
}

/// Unit-mass heat kernel shifted to `t⋆ < 0` as a one-term [`ModeSum`].
pub fn gaussian_mode_sum(t_star: f64) -> Result<ModeSum> {
    let frame = ScalingFrame::normalized(-1.0, t_star)?;
    ModeSum::single(frame, SelfSimilarMode::kummer(1.0 / (4.0 * PI).sqrt(), 0.0))
}
