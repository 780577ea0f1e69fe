//! The JSON run configuration.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use selfsim_heat::exact::ExactSolution;
use selfsim_heat::signal::{BoundaryKind, Trace};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

/// Uniformly spaced output times used when a config names none.
pub const DEFAULT_OUTPUT_COUNT: usize = 101;

pub const DEFAULT_SERIES_TERMS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Crank–Nicolson finite differences.
    #[default]
    Cn,
    Series,
    Utm,
    Cauchy,
    /// The closed-form solution behind consonant boundary data.
    Mode,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Self::Cn => "cn",
            Self::Series => "series",
            Self::Utm => "utm",
            Self::Cauchy => "cauchy",
            Self::Mode => "mode",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|_| {
            CliError::Config(format!(
                "unknown method '{s}' (cn, series, utm, cauchy, mode)"
            ))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    /// Subcommand this config was written for; informational.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,
    /// Stem of the output file names.
    #[serde(default = "default_name")]
    pub name: String,
    #[serde(default)]
    pub method: Method,
    pub problem: ProblemConfig,
    #[serde(default)]
    pub probes: Vec<f64>,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fit: Option<FitConfig>,
    #[serde(default = "default_terms")]
    pub series_terms: usize,
}

fn default_name() -> String {
    "run".into()
}

fn default_terms() -> usize {
    DEFAULT_SERIES_TERMS
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    /// Half-width of `[-D, D]`.
    pub d: f64,
    /// Grid nodes.
    pub n: usize,
    pub dt: f64,
    pub t_end: f64,
    pub initial: InitialConfig,
    pub boundary: BoundaryConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialConfig {
    Zero,
    /// `e^{-x²/2}`
    Gaussian,
    /// `x e^{-x²/2}`
    Hermite1,
    /// `c⋆ ₁F₁(-1/2, 1/2, x²/4) e^{-x²/4}`; `c⋆` defaults to the value
    /// matching the Gaussian at `x = ±D`.
    Kummer {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        c_star: Option<f64>,
    },
    /// `sin(nπ(x+D)/(2D))`
    SineMode {
        n: u32,
    },
    /// `initial - solution(·, 0)` on `[-D, D]`.
    Remainder {
        initial: Box<InitialConfig>,
        solution: ExactSolution,
    },
    Table {
        x: Vec<f64>,
        u: Vec<f64>,
    },
    /// CSV file with header `x,u`.
    Csv {
        path: PathBuf,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum BoundaryConfig {
    /// Traces of a closed-form solution.
    Consonant {
        kind: BoundaryKind,
        solution: ExactSolution,
    },
    /// Zero Dirichlet data at both ends.
    Homogeneous,
    Custom {
        left: EndConfig,
        right: EndConfig,
    },
}

impl BoundaryConfig {
    pub fn consonant_solution(&self) -> Option<&ExactSolution> {
        match self {
            Self::Consonant { solution, .. } => Some(solution),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndConfig {
    pub kind: BoundaryKind,
    pub data: SignalConfig,
    /// Robin coefficient `κ(t)` in `u_x = κu + g`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficient: Option<SignalConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SignalConfig {
    Zero,
    Constant {
        value: f64,
    },
    Table {
        t: Vec<f64>,
        u: Vec<f64>,
    },
    /// CSV file with header `t,u`.
    Csv {
        path: PathBuf,
    },
    Trace {
        solution: ExactSolution,
        x: f64,
        trace: Trace,
    },
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    /// Explicit field times; overrides `count`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub times: Option<Vec<f64>>,
    /// Uniform field times over `[0, t_end]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    /// Skip the field CSV (probes and report only).
    #[serde(default)]
    pub no_field: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitModel {
    #[default]
    Auto,
    Algebraic,
    Exponential,
}

impl std::str::FromStr for FitModel {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|_| {
            CliError::Config(format!(
                "unknown fit model '{s}' (auto, algebraic, exponential)"
            ))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitConfig {
    /// Probe position; defaults to the first probe.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(default)]
    pub t_star: f64,
    #[serde(default)]
    pub model: FitModel,
    #[serde(default = "default_window")]
    pub window: [f64; 2],
    #[serde(default = "default_samples")]
    pub samples: usize,
}

fn default_window() -> [f64; 2] {
    [10.0, 100.0]
}

fn default_samples() -> usize {
    selfsim_heat::analysis::RECOMMENDED_SAMPLES
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            x: None,
            t_star: 0.0,
            model: FitModel::Auto,
            window: default_window(),
            samples: default_samples(),
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> CliResult<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Schema checks that do not need the solver objects; those are
    /// validated again when the problem is built.
    pub fn validate(&self) -> CliResult<()> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if self.schema_version != SCHEMA_VERSION {
            return bad(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                self.schema_version
            ));
        }
        let p = &self.problem;
        if !(p.d.is_finite() && p.d > 0.0) {
            return bad(format!("problem.d = {} must be positive", p.d));
        }
        if p.n < 3 {
            return bad(format!("problem.n = {} must be at least 3", p.n));
        }
        if !(p.dt.is_finite() && p.dt > 0.0) {
            return bad(format!("problem.dt = {} must be positive", p.dt));
        }
        if !(p.t_end.is_finite() && p.t_end > 0.0) {
            return bad(format!("problem.t_end = {} must be positive", p.t_end));
        }
        if self.series_terms == 0 {
            return bad("series_terms must be positive".into());
        }
        for &x in &self.probes {
            if !(x.abs() <= p.d) {
                return bad(format!("probe x = {x} lies outside [-{0}, {0}]", p.d));
            }
        }
        if let Some(times) = &self.output.times {
            if times.iter().any(|&t| !(0.0..=p.t_end).contains(&t)) {
                return bad(format!("output times must lie in [0, {}]", p.t_end));
            }
        }
        if self.output.count == Some(0) || self.output.count == Some(1) {
            return bad("output.count must be at least 2".into());
        }
        if let Some(fit) = &self.fit {
            let [lo, hi] = fit.window;
            if !(lo > 0.0 && hi > lo && hi <= p.t_end) {
                return bad(format!(
                    "fit window [{lo}, {hi}] must lie in (0, t_end = {}]",
                    p.t_end
                ));
            }
            if fit.x.is_none() && self.probes.is_empty() {
                return bad("fit needs fit.x or at least one probe".into());
            }
        }
        for path in self.referenced_files() {
            if !path.is_file() {
                return bad(format!("referenced file {} does not exist", path.display()));
            }
        }
        Ok(())
    }

    fn referenced_files(&self) -> Vec<&Path> {
        let mut out = Vec::new();
        let mut initial = &self.problem.initial;
        loop {
            match initial {
                InitialConfig::Csv { path } => out.push(path.as_path()),
                InitialConfig::Remainder { initial: inner, .. } => {
                    initial = inner;
                    continue;
                }
                _ => {}
            }
            break;
        }
        if let BoundaryConfig::Custom { left, right } = &self.problem.boundary {
            for end in [left, right] {
                for s in std::iter::once(&end.data).chain(end.coefficient.as_ref()) {
                    if let SignalConfig::Csv { path } = s {
                        out.push(path.as_path());
                    }
                }
            }
        }
        out
    }

    /// Field output times, sorted.
    pub fn field_times(&self) -> Vec<f64> {
        let mut times = match &self.output.times {
            Some(t) => t.clone(),
            None => {
                let n = self.output.count.unwrap_or(DEFAULT_OUTPUT_COUNT);
                (0..n)
                    .map(|i| self.problem.t_end * i as f64 / (n - 1) as f64)
                    .collect()
            }
        };
        times.sort_by(f64::total_cmp);
        times.dedup();
        times
    }

    pub fn fit_x(&self) -> Option<f64> {
        self.fit
            .as_ref()
            .and_then(|f| f.x.or_else(|| self.probes.first().copied()))
    }
}
