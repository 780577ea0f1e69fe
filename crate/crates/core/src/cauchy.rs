//! Whole-line Cauchy problem by direct quadrature of the heat-kernel
//! convolution `u(x,t) = (4πt)^{-1/2} ∫ e^{-(x-y)²/(4t)} f(y) dy`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{sine_wavenumber, ExactSolution};
use crate::grid::{Grid1D, SolutionField};
use crate::quadrature::{integrate_value, QuadOptions};

/// Relative size of `|f|` beyond the truncation radius.
pub const TRUNCATION_TOL: f64 = 1e-14;

/// Absolute tolerance of the convolution quadrature.
pub const CAUCHY_ABS_TOL: f64 = 1e-10;

/// Kernel window `|x - y| ≤ KERNEL_WIDTHS·√t`, where the kernel has fallen
/// to `e^{-64}` of its peak.
const KERNEL_WIDTHS: f64 = 16.0;

/// Closed-form initial profiles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialPreset {
    Zero,
    /// `e^{-x²/2}`
    Gaussian,
    /// `x e^{-x²/2}`
    Hermite1,
    /// `c⋆ ₁F₁(-1/2, 1/2, x²/4) e^{-x²/4}`
    KummerCStar {
        c_star: f64,
    },
    /// `sin(nπ(x+D)/(2D))` on `[-D, D]`, zero outside.
    SineMode {
        d: f64,
        n: u32,
    },
}

impl InitialPreset {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Self::Zero => 0.0,
            Self::Gaussian => (-0.5 * x * x).exp(),
            Self::Hermite1 => x * (-0.5 * x * x).exp(),
            Self::KummerCStar { c_star } => ExactSolution::KummerCompat { c_star }
                .value(x, 0.0)
                .expect("t = 0 is after t_star = -1"),
            Self::SineMode { d, n } => {
                if x.abs() <= d {
                    (sine_wavenumber(d, n) * (x + d)).sin()
                } else {
                    0.0
                }
            }
        }
    }

    /// Radius beyond which `|f| ≤ TRUNCATION_TOL·max|f|`.
    pub fn radius(&self) -> f64 {
        match *self {
            Self::Zero => 1.0,
            // e^{-R²/2} ≤ 1e-14
            Self::Gaussian => 8.1,
            // R e^{-R²/2} ≤ e^{-1/2}·1e-14
            Self::Hermite1 => 8.5,
            // algebraic tail 2c⋆/x²
            Self::KummerCStar { .. } => 1.5e7,
            Self::SineMode { d, .. } => d,
        }
    }

    /// Largest `|f|`, used for the truncation check.
    fn peak(&self) -> f64 {
        match *self {
            Self::Zero => 0.0,
            Self::Gaussian | Self::SineMode { .. } => 1.0,
            Self::Hermite1 => (-0.5f64).exp(),
            Self::KummerCStar { c_star } => c_star.abs(),
        }
    }
}

/// Initial data of the Cauchy problem (and of the interval solvers).
#[derive(Clone)]
pub enum InitialData {
    Preset(InitialPreset),
    /// Linear interpolation inside the node range, zero outside.
    Tabulated {
        nodes: Arc<[f64]>,
        values: Arc<[f64]>,
    },
    /// Arbitrary function, taken to vanish for `|x| > radius`.
    Function {
        f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        radius: f64,
    },
}

impl fmt::Debug for InitialData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Preset(p) => write!(f, "Preset({p:?})"),
            Self::Tabulated { nodes, .. } => write!(f, "Tabulated({} nodes)", nodes.len()),
            Self::Function { radius, .. } => write!(f, "Function(radius = {radius})"),
        }
    }
}

impl InitialData {
    /// A preset, after checking its truncation radius.
    pub fn preset(p: InitialPreset) -> Result<Self> {
        if let InitialPreset::KummerCStar { c_star } = p {
            if !c_star.is_finite() {
                return Err(Error::InvalidParams(format!("c_star = {c_star}")));
            }
        }
        let r = p.radius();
        let bound = TRUNCATION_TOL * p.peak();
        for scale in [1.0, 1.5, 2.0, 4.0] {
            for x in [-r * scale, r * scale] {
                if p.eval(x).abs() > bound {
                    return Err(Error::InvalidParams(format!(
                        "preset {p:?} exceeds the truncation bound at x = {x}"
                    )));
                }
            }
        }
        Ok(Self::Preset(p))
    }

    pub fn tabulated(nodes: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if nodes.len() < 2 || nodes.len() != values.len() {
            return Err(Error::InvalidParams(
                "tabulated data needs at least two (node, value) pairs".into(),
            ));
        }
        if nodes.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParams(
                "tabulated nodes must be strictly increasing".into(),
            ));
        }
        if nodes.iter().chain(&values).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams("non-finite tabulated entry".into()));
        }
        Ok(Self::Tabulated {
            nodes: nodes.into(),
            values: values.into(),
        })
    }

    pub fn function(f: impl Fn(f64) -> f64 + Send + Sync + 'static, radius: f64) -> Self {
        Self::Function {
            f: Arc::new(f),
            radius,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Self::Preset(p) => p.eval(x),
            Self::Tabulated { nodes, values } => {
                let n = nodes.len();
                if x < nodes[0] || x > nodes[n - 1] {
                    return 0.0;
                }
                let i = (nodes.partition_point(|&s| s <= x)).clamp(1, n - 1) - 1;
                let frac = (x - nodes[i]) / (nodes[i + 1] - nodes[i]);
                values[i] + frac * (values[i + 1] - values[i])
            }
            Self::Function { f, radius } => {
                if x.abs() <= *radius {
                    f(x)
                } else {
                    0.0
                }
            }
        }
    }

    /// Support `[lo, hi]` outside which the data is (numerically) zero.
    pub fn support(&self) -> (f64, f64) {
        match self {
            Self::Preset(p) => (-p.radius(), p.radius()),
            Self::Tabulated { nodes, .. } => (nodes[0], nodes[nodes.len() - 1]),
            Self::Function { radius, .. } => (-radius, *radius),
        }
    }

    /// Points inside `[a, b]` where the data has kinks.
    pub fn breakpoints(&self, a: f64, b: f64) -> Vec<f64> {
        match self {
            Self::Tabulated { nodes, .. } => {
                nodes.iter().copied().filter(|&x| x > a && x < b).collect()
            }
            _ => Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Self::Preset(InitialPreset::Zero))
    }
}

/// Splits `[a, b]` at the given interior points.
pub(crate) fn split_interval(a: f64, b: f64, mut cuts: Vec<f64>) -> Vec<(f64, f64)> {
    cuts.retain(|&c| c > a && c < b);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut out = Vec::with_capacity(cuts.len() + 1);
    let mut lo = a;
    for c in cuts {
        out.push((lo, c));
        lo = c;
    }
    out.push((lo, b));
    out
}

/// `u(x, t)` of the Cauchy problem with absolute tolerance [`CAUCHY_ABS_TOL`].
pub fn heat_kernel_solve(f: &InitialData, x: f64, t: f64) -> Result<f64> {
    heat_kernel_solve_with(f, x, t, CAUCHY_ABS_TOL)
}

/// [`heat_kernel_solve`] with an explicit absolute tolerance.
///
/// The convolution is integrated over the part of the data's support that
/// lies within `16√t` of `x`, split at `x` and at kinks of tabulated data.
pub fn heat_kernel_solve_with(f: &InitialData, x: f64, t: f64, abs_tol: f64) -> Result<f64> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::Domain(format!("time t = {t} must be non-negative")));
    }
    if t == 0.0 {
        return Ok(f.eval(x));
    }
    if f.is_zero() {
        return Ok(0.0);
    }
    let (lo, hi) = f.support();
    let reach = KERNEL_WIDTHS * t.sqrt();
    let a = lo.max(x - reach);
    let b = hi.min(x + reach);
    if a >= b {
        return Ok(0.0);
    }
    let norm = 1.0 / (4.0 * PI * t).sqrt();
    let mut cuts = f.breakpoints(a, b);
    cuts.push(x);
    let pieces = split_interval(a, b, cuts);
    let opts = QuadOptions::abs(abs_tol / pieces.len() as f64);
    let mut total = 0.0;
    for (p, q) in pieces {
        total += integrate_value(
            |y: f64| {
                let d = x - y;
                (-d * d / (4.0 * t)).exp() * f.eval(y)
            },
            p,
            q,
            QuadOptions {
                abs_tol: opts.abs_tol / norm,
                ..opts
            },
        )?;
    }
    Ok(norm * total)
}

/// [`heat_kernel_solve`] on every grid node at every time (nodes in parallel).
pub fn sample_cauchy_field(f: &InitialData, grid: &Grid1D, times: &[f64]) -> Result<SolutionField> {
    let nodes = grid.nodes();
    let mut field = SolutionField::empty(*grid);
    for &t in times {
        if !(t > 0.0) {
            return Err(Error::Domain(format!(
                "sample time t = {t} must be positive"
            )));
        }
        let row = nodes
            .par_iter()
            .map(|&x| heat_kernel_solve(f, x, t))
            .collect::<Result<Vec<_>>>()?;
        field.push_row(t, row);
    }
    Ok(field)
}
