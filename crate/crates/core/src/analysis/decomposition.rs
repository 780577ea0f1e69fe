use serde::{Deserialize, Serialize};

use crate::cauchy::{InitialData, InitialPreset};
use crate::error::{Error, Result};
use crate::exact::ExactSolution;
use crate::grid::{Grid1D, GridFunction};
use crate::ibvp::{consonant_dirichlet, IBVPProblem};
use crate::series::SineSeriesSolution;
use crate::signal::{BoundarySpec, Side, TimeSignal};
use crate::specfun::{kummer_1f1_scaled, KummerParams};

/// Boundary data below `UNDERFLOW_FACTOR·ε·max|u₀|` is lost to rounding.
pub const UNDERFLOW_FACTOR: f64 = 1e3;

/// Uniform samples taken by [`underflow_audit`] over `[0, horizon]`.
pub const AUDIT_SAMPLES: usize = 1001;

/// Relative size of `₁F₁(-1/2, 1/2, D²/4)` treated as a zero.
const KUMMER_ZERO_TOL: f64 = 1e-13;

/// A compatible problem split as `u = u⁽¹⁾ + u⁽²⁾`: `u⁽²⁾` is a closed-form
/// solution whose traces are the boundary data, `u⁽¹⁾` takes the remaining
/// initial data with zero Dirichlet data.
#[derive(Debug, Clone)]
pub struct Decomposition {
    /// `c⋆` of the Gaussian/Kummer pairing; `None` for the generic split.
    pub c_star: Option<f64>,
    pub consonant: ExactSolution,
    /// The original problem: full initial data, consonant Dirichlet data.
    pub original: IBVPProblem,
    pub consonant_problem: IBVPProblem,
    pub homogeneous_problem: IBVPProblem,
    initial: InitialData,
}

impl Decomposition {
    /// `u₀⁽¹⁾ = u₀ - u⁽²⁾(·, 0)` as a function on `[-D, D]`.
    pub fn homogeneous_initial(&self) -> InitialData {
        let (u0, e) = (self.initial.clone(), self.consonant.clone());
        let d = self.original.grid.half_width();
        InitialData::function(
            move |x| u0.eval(x) - e.value(x, 0.0).expect("closed form defined at t = 0"),
            d,
        )
    }

    /// Sine series of the homogeneous part with `n_terms` modes.
    pub fn homogeneous_series(&self, n_terms: usize) -> Result<SineSeriesSolution> {
        SineSeriesSolution::new(
            &self.homogeneous_initial(),
            self.original.grid.half_width(),
            n_terms,
            TimeSignal::Zero,
            TimeSignal::Zero,
        )
    }

    /// `u⁽²⁾(x, t) + u⁽¹⁾(x, t)` given the homogeneous part's value.
    pub fn reassemble(&self, homogeneous: f64, x: f64, t: f64) -> Result<f64> {
        Ok(self.consonant.value(x, t)? + homogeneous)
    }
}

/// `c⋆` with `e^{-D²/2} = c⋆ ₁F₁(-1/2, 1/2, D²/4) e^{-D²/4}`, so that the
/// Kummer solution meets the Gaussian at `x = ±D`, `t = 0`.
pub fn compatibility_c_star(d: f64) -> Result<f64> {
    if !(d.is_finite() && d > 0.0) {
        return Err(Error::InvalidParams(format!(
            "half-width D = {d} must be positive"
        )));
    }
    let z = d * d / 4.0;
    // e^{-z} M(z), compared against its own scale e^{-z}
    let scaled = kummer_1f1_scaled(KummerParams::new(-0.5, 0.5, z)?)?;
    if scaled.abs() <= KUMMER_ZERO_TOL * (-z).exp() {
        return Err(Error::DivideByZero(format!(
            "1F1(-1/2, 1/2, D^2/4) vanishes at D = {d}; no Kummer solution matches the Gaussian there"
        )));
    }
    Ok((-d * d / 2.0).exp() / scaled)
}

/// The Gaussian `e^{-x²/2}` split against the Kummer solution with the
/// compatible `c⋆`, on `grid`, to be run until `t_end` with step `dt`.
pub fn build_decomposition(grid: Grid1D, t_end: f64, dt: f64) -> Result<Decomposition> {
    let c_star = compatibility_c_star(grid.half_width())?;
    let mut dec = decompose(
        InitialData::preset(InitialPreset::Gaussian)?,
        ExactSolution::KummerCompat { c_star },
        grid,
        t_end,
        dt,
    )?;
    dec.c_star = Some(c_star);
    Ok(dec)
}

/// Generic split of `initial` against any closed-form solution whose values
/// at `x = ±D`, `t = 0` agree with it.
pub fn decompose(
    initial: InitialData,
    consonant: ExactSolution,
    grid: Grid1D,
    t_end: f64,
    dt: f64,
) -> Result<Decomposition> {
    let d = grid.half_width();
    for x in [-d, d] {
        let (a, b) = (initial.eval(x), consonant.value(x, 0.0)?);
        if (a - b).abs() > 1e-10 * a.abs().max(b.abs()) {
            return Err(Error::InvalidParams(format!(
                "initial data {a} and closed form {b} disagree at x = {x}; the split needs compatible data"
            )));
        }
    }
    let full = GridFunction::from_fn(grid, |x| initial.eval(x))?;
    let part2 = GridFunction::try_from_fn(grid, |x| consonant.value(x, 0.0))?;
    let part1 = GridFunction::new(
        grid,
        full.values()
            .iter()
            .zip(part2.values())
            .map(|(a, b)| a - b)
            .collect(),
    )?;
    let (left, right) = consonant_dirichlet(&consonant, d);
    let original = IBVPProblem::new(full, left.clone(), right.clone(), t_end, dt)?;
    let consonant_problem = IBVPProblem::new(part2, left, right, t_end, dt)?;
    let homogeneous_problem = IBVPProblem::new(
        part1,
        BoundarySpec::dirichlet(Side::Left, TimeSignal::Zero),
        BoundarySpec::dirichlet(Side::Right, TimeSignal::Zero),
        t_end,
        dt,
    )?;
    Ok(Decomposition {
        c_star: None,
        consonant,
        original,
        consonant_problem,
        homogeneous_problem,
        initial,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnderflowReport {
    pub flagged: bool,
    pub max_boundary: f64,
    pub threshold: f64,
    pub horizon: f64,
    pub message: Option<String>,
}

/// Flags boundary data that never rises above `10³·ε·max|u₀|` on
/// `[0, horizon]`: such data is numerically zero, so a solver effectively
/// runs the homogeneous Dirichlet problem, which decays exponentially once
/// the slowest interval mode dominates.
pub fn underflow_audit(
    left: &BoundarySpec,
    right: &BoundarySpec,
    initial_max: f64,
    horizon: f64,
) -> Result<UnderflowReport> {
    if !(horizon >= 0.0) {
        return Err(Error::InvalidParams(format!(
            "audit horizon {horizon} must be non-negative"
        )));
    }
    let mut max_boundary = 0.0f64;
    for i in 0..AUDIT_SAMPLES {
        let t = horizon * i as f64 / (AUDIT_SAMPLES - 1) as f64;
        for b in [left, right] {
            max_boundary = max_boundary.max(b.data.eval(t)?.abs());
        }
    }
    let threshold = UNDERFLOW_FACTOR * f64::EPSILON * initial_max.abs();
    let flagged = max_boundary <= threshold;
    let message = flagged.then(|| {
        let msg = format!(
            "boundary data stays below {threshold:e} (max {max_boundary:e}) up to t = {horizon}; \
             the solve is effectively the homogeneous Dirichlet problem, whose decay is eventually exponential"
        );
        log::warn!("{msg}");
        msg
    });
    Ok(UnderflowReport {
        flagged,
        max_boundary,
        threshold,
        horizon,
        message,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_star_matches_gaussian_at_boundary() {
        for d in [0.5, 1.0, 3.0] {
            let c = compatibility_c_star(d).unwrap();
            let k = ExactSolution::KummerCompat { c_star: c }
                .value(d, 0.0)
                .unwrap();
            assert!((k - (-d * d / 2.0f64).exp()).abs() < 1e-15);
        }
    }

    #[test]
    fn split_is_exact_on_nodes() {
        let grid = Grid1D::new(1.0, 41).unwrap();
        let dec = build_decomposition(grid, 1.0, 0.01).unwrap();
        let u1 = dec.homogeneous_problem.initial.values();
        let u2 = dec.consonant_problem.initial.values();
        for (i, x) in grid.nodes().iter().enumerate() {
            let g = (-x * x / 2.0f64).exp();
            assert!((u1[i] + u2[i] - g).abs() <= f64::EPSILON * g);
        }
        assert!(u1[0].abs() < 1e-15 && u1[40].abs() < 1e-15);
        assert!(dec.homogeneous_problem.left.data.is_zero());
    }

    #[test]
    fn rejects_incompatible_pairs() {
        let grid = Grid1D::new(1.0, 11).unwrap();
        let r = decompose(
            InitialData::preset(InitialPreset::Gaussian).unwrap(),
            ExactSolution::Hermite1,
            grid,
            1.0,
            0.1,
        );
        assert!(matches!(r, Err(Error::InvalidParams(_))));
    }

    #[test]
    fn audit_flags_tiny_data() {
        let e = ExactSolution::Hermite1;
        let peak = (-0.5f64).exp();
        let (l, r) = consonant_dirichlet(&e, 200.0);
        assert!(underflow_audit(&l, &r, peak, 100.0).unwrap().flagged);
        let (l, r) = consonant_dirichlet(&e, 1.0);
        assert!(!underflow_audit(&l, &r, peak, 100.0).unwrap().flagged);
        let z = BoundarySpec::dirichlet(Side::Left, TimeSignal::Zero);
        let z2 = BoundarySpec::dirichlet(Side::Right, TimeSignal::Zero);
        assert!(underflow_audit(&z, &z2, peak, 1.0).unwrap().flagged);
    }
}
