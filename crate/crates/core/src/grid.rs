//! Uniform grids on `[-D, D]`, sampled profiles, time-stacked fields and
//! scalar time series.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform grid `x_i = -D + iΔx`, `Δx = 2D/(n-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    d: f64,
    n: usize,
}

impl Grid1D {
    pub fn new(d: f64, n: usize) -> Result<Self> {
        if !(d.is_finite() && d > 0.0) {
            return Err(Error::InvalidParams(format!(
                "half-width D = {d} must be positive"
            )));
        }
        if n < 3 {
            return Err(Error::InvalidParams(format!(
                "grid needs at least 3 nodes, got {n}"
            )));
        }
        Ok(Self { d, n })
    }

    pub fn half_width(&self) -> f64 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dx(&self) -> f64 {
        2.0 * self.d / (self.n - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        // the last node is pinned to D exactly
        if i + 1 == self.n {
            self.d
        } else {
            -self.d + i as f64 * self.dx()
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.node(i)).collect()
    }

    /// Index of the node nearest to `x` (clamped to the grid).
    pub fn nearest(&self, x: f64) -> usize {
        let i = ((x + self.d) / self.dx()).round();
        i.clamp(0.0, (self.n - 1) as f64) as usize
    }
}

/// A profile sampled on grid nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridFunction {
    grid: Grid1D,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(grid: Grid1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidParams(format!(
                "{} values for {} grid nodes",
                values.len(),
                grid.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParams(format!("non-finite grid value {v}")));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(grid, grid.nodes().into_iter().map(f).collect())
    }

    pub fn try_from_fn(grid: Grid1D, f: impl Fn(f64) -> Result<f64>) -> Result<Self> {
        let values = grid
            .nodes()
            .into_iter()
            .map(f)
            .collect::<Result<Vec<_>>>()?;
        Self::new(grid, values)
    }

    pub fn zeros(grid: Grid1D) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.len()],
        }
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Piecewise-linear interpolant, zero outside `[-D, D]`.
    pub fn interpolate(&self, x: f64) -> f64 {
        interpolate_uniform(&self.grid, &self.values, x)
    }
}

pub(crate) fn interpolate_uniform(grid: &Grid1D, values: &[f64], x: f64) -> f64 {
    let d = grid.half_width();
    if !(x >= -d && x <= d) {
        return 0.0;
    }
    let s = (x + d) / grid.dx();
    let i = (s.floor() as usize).min(grid.len() - 2);
    let frac = s - i as f64;
    values[i] * (1.0 - frac) + values[i + 1] * frac
}

/// A scalar quantity sampled at increasing times.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    times: Vec<f64>,
    values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::InvalidParams(format!(
                "{} times but {} values",
                times.len(),
                values.len()
            )));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParams(
                "times must be strictly increasing".into(),
            ));
        }
        if times.iter().chain(&values).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams("non-finite time series entry".into()));
        }
        Ok(Self { times, values })
    }

    pub fn from_fn(times: Vec<f64>, f: impl Fn(f64) -> Result<f64>) -> Result<Self> {
        let values = times.iter().map(|&t| f(t)).collect::<Result<Vec<_>>>()?;
        Self::new(times, values)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.times.iter().copied().zip(self.values.iter().copied())
    }

    /// Samples with `t_min ≤ t ≤ t_max`.
    pub fn window(&self, t_min: f64, t_max: f64) -> Self {
        let (times, values) = self
            .iter()
            .filter(|(t, _)| *t >= t_min && *t <= t_max)
            .unzip();
        Self { times, values }
    }
}

/// `n` logarithmically spaced times in `[a, b]`.
pub fn log_spaced(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(a > 0.0 && b > a && n >= 2);
    let (la, lb) = (a.ln(), b.ln());
    (0..n)
        .map(|i| {
            if i == 0 {
                a
            } else if i + 1 == n {
                b
            } else {
                (la + (lb - la) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

/// Solution values on a grid at a list of times (one row per time).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionField {
    grid: Grid1D,
    times: Vec<f64>,
    values: Vec<Vec<f64>>,
    #[serde(default)]
    notes: Vec<String>,
}

impl SolutionField {
    pub fn new(grid: Grid1D, times: Vec<f64>, values: Vec<Vec<f64>>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::InvalidParams(format!(
                "{} times but {} rows",
                times.len(),
                values.len()
            )));
        }
        if values.iter().any(|r| r.len() != grid.len()) {
            return Err(Error::InvalidParams(
                "row length differs from grid size".into(),
            ));
        }
        if values.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams("non-finite field value".into()));
        }
        Ok(Self {
            grid,
            times,
            values,
            notes: Vec::new(),
        })
    }

    pub fn empty(grid: Grid1D) -> Self {
        Self {
            grid,
            times: Vec::new(),
            values: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub(crate) fn push_row(&mut self, t: f64, row: Vec<f64>) {
        self.times.push(t);
        self.values.push(row);
    }

    pub(crate) fn add_note(&mut self, note: String) {
        self.notes.push(note);
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i]
    }

    /// Diagnostics recorded by the solver (accuracy warnings and the like).
    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// Index of the stored time closest to `t`.
    pub fn nearest_time(&self, t: f64) -> Option<usize> {
        self.times
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - t).abs().total_cmp(&(b.1 - t).abs()))
            .map(|(i, _)| i)
    }

    /// `u(x, t_j)` for every stored time, linearly interpolated in `x`.
    pub fn probe(&self, x: f64) -> Result<TimeSeries> {
        let values = self
            .values
            .iter()
            .map(|r| interpolate_uniform(&self.grid, r, x))
            .collect();
        TimeSeries::new(self.times.clone(), values)
    }

    /// Largest `|u - exact|` over all stored nodes and times.
    pub fn max_error(&self, exact: impl Fn(f64, f64) -> Result<f64>) -> Result<f64> {
        let nodes = self.grid.nodes();
        let mut worst = 0.0f64;
        for (t, row) in self.times.iter().zip(&self.values) {
            for (x, u) in nodes.iter().zip(row) {
                worst = worst.max((u - exact(*x, *t)?).abs());
            }
        }
        Ok(worst)
    }
}
