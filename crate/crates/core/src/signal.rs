//! Time-dependent boundary data.

use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::ExactSolution;

/// Which quantity of an exact solution a signal traces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trace {
    /// `u(x, t)`
    Value,
    /// `u_x(x, t)`
    Derivative,
    /// The Robin coefficient `u_x/u` built from the stationary profile.
    RobinCoefficient,
}

/// A scalar function of time.
#[derive(Clone)]
pub enum TimeSignal {
    Zero,
    Constant(f64),
    /// Linear interpolation between samples; clamps past the last sample.
    Tabulated {
        times: Arc<[f64]>,
        values: Arc<[f64]>,
        warned: Arc<AtomicBool>,
    },
    /// A trace of a closed-form solution at a fixed `x`.
    Exact {
        solution: Arc<ExactSolution>,
        x: f64,
        trace: Trace,
    },
    Function(Arc<dyn Fn(f64) -> Result<f64> + Send + Sync>),
}

impl fmt::Debug for TimeSignal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Zero => write!(f, "Zero"),
            Self::Constant(c) => write!(f, "Constant({c})"),
            Self::Tabulated { times, .. } => write!(f, "Tabulated({} samples)", times.len()),
            Self::Exact { solution, x, trace } => {
                write!(f, "Exact({solution:?}, x = {x}, {trace:?})")
            }
            Self::Function(_) => write!(f, "Function"),
        }
    }
}

impl TimeSignal {
    /// Validates a tabulated series: strictly increasing times starting at 0,
    /// finite values.
    pub fn tabulated(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.is_empty() || times.len() != values.len() {
            return Err(Error::InvalidParams(
                "tabulated signal needs equally many (and at least one) times and values".into(),
            ));
        }
        if times[0] != 0.0 {
            return Err(Error::InvalidParams(format!(
                "tabulated signal starts at t = {}, not 0",
                times[0]
            )));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParams(
                "tabulated times must be strictly increasing".into(),
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams("non-finite tabulated value".into()));
        }
        Ok(Self::Tabulated {
            times: times.into(),
            values: values.into(),
            warned: Arc::new(AtomicBool::new(false)),
        })
    }

    pub fn exact(solution: ExactSolution, x: f64, trace: Trace) -> Self {
        Self::Exact {
            solution: Arc::new(solution),
            x,
            trace,
        }
    }

    pub fn function(f: impl Fn(f64) -> Result<f64> + Send + Sync + 'static) -> Self {
        Self::Function(Arc::new(f))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Self::Zero) || matches!(self, Self::Constant(c) if *c == 0.0)
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        match self {
            Self::Zero => Ok(0.0),
            Self::Constant(c) => Ok(*c),
            Self::Tabulated {
                times,
                values,
                warned,
            } => {
                let last = times.len() - 1;
                if t >= times[last] {
                    if t > times[last] && !warned.swap(true, Ordering::Relaxed) {
                        log::warn!(
                            "boundary series queried at t = {t} past its last sample {}; holding the last value",
                            times[last]
                        );
                    }
                    return Ok(values[last]);
                }
                if t <= times[0] {
                    return Ok(values[0]);
                }
                let i = times.partition_point(|&s| s <= t) - 1;
                let frac = (t - times[i]) / (times[i + 1] - times[i]);
                Ok(values[i] + frac * (values[i + 1] - values[i]))
            }
            Self::Exact { solution, x, trace } => match trace {
                Trace::Value => solution.value(*x, t),
                Trace::Derivative => solution.dx(*x, t),
                Trace::RobinCoefficient => solution.robin_coefficient(*x, t),
            },
            Self::Function(f) => f(t),
        }
    }

    /// `dg/dt` by central differences (one-sided at `t < h`).
    pub fn derivative(&self, t: f64) -> Result<f64> {
        match self {
            Self::Zero | Self::Constant(_) => Ok(0.0),
            _ => {
                let h = 1e-5 * t.abs().max(1.0);
                if t >= h {
                    Ok((self.eval(t + h)? - self.eval(t - h)?) / (2.0 * h))
                } else {
                    Ok(
                        (-3.0 * self.eval(t)? + 4.0 * self.eval(t + h)?
                            - self.eval(t + 2.0 * h)?)
                            / (2.0 * h),
                    )
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryKind {
    Dirichlet,
    Neumann,
    Robin,
}

/// Boundary condition at one end of `[-D, D]`:
/// `u = g`, `u_x = g`, or `u_x = κ(t) u + g` (Robin).
#[derive(Debug, Clone)]
pub struct BoundarySpec {
    pub side: Side,
    pub kind: BoundaryKind,
    pub data: TimeSignal,
    /// `κ(t)`, only read for the Robin kind.
    pub coefficient: TimeSignal,
}

impl BoundarySpec {
    pub fn dirichlet(side: Side, data: TimeSignal) -> Self {
        Self {
            side,
            kind: BoundaryKind::Dirichlet,
            data,
            coefficient: TimeSignal::Zero,
        }
    }

    pub fn neumann(side: Side, data: TimeSignal) -> Self {
        Self {
            side,
            kind: BoundaryKind::Neumann,
            data,
            coefficient: TimeSignal::Zero,
        }
    }

    pub fn robin(side: Side, coefficient: TimeSignal, data: TimeSignal) -> Self {
        Self {
            side,
            kind: BoundaryKind::Robin,
            data,
            coefficient,
        }
    }

    /// `(κ(t), g(t))`; κ is zero for Neumann data and unused for Dirichlet.
    pub fn eval(&self, t: f64) -> Result<(f64, f64)> {
        let g = self.data.eval(t)?;
        let kappa = match self.kind {
            BoundaryKind::Robin => self.coefficient.eval(t)?,
            _ => 0.0,
        };
        Ok((kappa, g))
    }
}
