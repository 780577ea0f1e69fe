//! Named configurations for the published figures and a few checks.

use selfsim_heat::analysis::compatibility_c_star;
use selfsim_heat::exact::ExactSolution;
use selfsim_heat::signal::BoundaryKind;

use crate::config::{
    BoundaryConfig, FitConfig, FitModel, InitialConfig, Method, OutputConfig, ProblemConfig,
    RunConfig, DEFAULT_SERIES_TERMS, SCHEMA_VERSION,
};
use crate::error::{CliError, CliResult};

pub const PRESETS: [&str; 6] = ["case4", "case4-large", "kaz3", "fig2", "fig22", "eigenmode"];

/// Command-line overrides applied on top of a preset or config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub d: Option<f64>,
    pub n: Option<usize>,
    pub dt: Option<f64>,
    pub t_end: Option<f64>,
    pub probes: Vec<f64>,
}

impl Overrides {
    pub fn apply(&self, cfg: &mut RunConfig) {
        let p = &mut cfg.problem;
        if let Some(d) = self.d {
            p.d = d;
        }
        if let Some(n) = self.n {
            p.n = n;
        }
        if let Some(dt) = self.dt {
            p.dt = dt;
        }
        if let Some(t_end) = self.t_end {
            p.t_end = t_end;
            if let Some(times) = &mut cfg.output.times {
                times.retain(|&t| t <= t_end);
            }
            if cfg.fit.as_ref().is_some_and(|f| f.window[1] > t_end) {
                log::warn!("t_end = {t_end} ends before the fit window; the fit is dropped");
                cfg.fit = None;
            }
        }
        if !self.probes.is_empty() {
            cfg.probes = self.probes.clone();
        }
    }
}

fn c_star(d: f64) -> CliResult<f64> {
    Ok(compatibility_c_star(d)?)
}

fn base(name: &str, d: f64, initial: InitialConfig, boundary: BoundaryConfig) -> RunConfig {
    RunConfig {
        schema_version: SCHEMA_VERSION,
        command: None,
        name: name.into(),
        method: Method::Cn,
        problem: ProblemConfig {
            d,
            n: 401,
            dt: 1e-3,
            t_end: 100.0,
            initial,
            boundary,
        },
        probes: Vec::new(),
        output: OutputConfig::default(),
        fit: None,
        series_terms: DEFAULT_SERIES_TERMS,
    }
}

fn hermite_consonant(name: &str, d: f64, probe: f64) -> RunConfig {
    let mut cfg = base(
        name,
        d,
        InitialConfig::Hermite1,
        BoundaryConfig::Consonant {
            kind: BoundaryKind::Dirichlet,
            solution: ExactSolution::Hermite1,
        },
    );
    cfg.probes = vec![probe];
    cfg.fit = Some(FitConfig {
        t_star: -0.5,
        ..FitConfig::default()
    });
    cfg
}

/// The preset `name` on `[-D, D]`; `d` replaces the preset's own half-width
/// before any data depending on it (such as `c⋆`) is computed.
pub fn preset(name: &str, d: Option<f64>) -> CliResult<RunConfig> {
    let cfg = match name {
        // x e^{-x²/2} with the traces ±D(2t+1)^{-3/2} e^{-D²/(2(2t+1))}
        "case4" => hermite_consonant(name, d.unwrap_or(1.0), 1.0),
        "case4-large" => hermite_consonant(name, d.unwrap_or(200.0), -1.0),
        "kaz3" => {
            let d = d.unwrap_or(1.0);
            let c = c_star(d)?;
            let mut cfg = base(
                name,
                d,
                InitialConfig::Kummer { c_star: Some(c) },
                BoundaryConfig::Consonant {
                    kind: BoundaryKind::Dirichlet,
                    solution: ExactSolution::KummerCompat { c_star: c },
                },
            );
            cfg.probes = vec![0.0];
            cfg.fit = Some(FitConfig {
                t_star: -1.0,
                ..FitConfig::default()
            });
            cfg
        }
        // homogeneous part u⁽¹⁾ of the Gaussian/Kummer split
        "fig2" => {
            let d = d.unwrap_or(1.0);
            let c = c_star(d)?;
            let mut cfg = base(
                name,
                d,
                InitialConfig::Remainder {
                    initial: Box::new(InitialConfig::Gaussian),
                    solution: ExactSolution::KummerCompat { c_star: c },
                },
                BoundaryConfig::Homogeneous,
            );
            cfg.probes = vec![0.0];
            cfg.output.times = Some(vec![0.0, 0.5, 1.0, 2.0, 5.0]);
            cfg.series_terms = 10;
            cfg.fit = Some(FitConfig {
                model: FitModel::Exponential,
                ..FitConfig::default()
            });
            cfg
        }
        // e^{-x²/2} with the Kummer traces: compatible, not consonant
        "fig22" => {
            let d = d.unwrap_or(1.0);
            let c = c_star(d)?;
            let mut cfg = base(
                name,
                d,
                InitialConfig::Gaussian,
                BoundaryConfig::Consonant {
                    kind: BoundaryKind::Dirichlet,
                    solution: ExactSolution::KummerCompat { c_star: c },
                },
            );
            cfg.problem.t_end = 5.0;
            cfg.probes = vec![0.0];
            cfg.output.times = Some(vec![0.0, 0.5, 1.0, 2.0, 5.0]);
            cfg.series_terms = 10;
            cfg
        }
        "eigenmode" => {
            let mut cfg = base(
                name,
                d.unwrap_or(1.0),
                InitialConfig::SineMode { n: 1 },
                BoundaryConfig::Homogeneous,
            );
            cfg.problem.n = 801;
            cfg.problem.dt = 1e-4;
            cfg.problem.t_end = 1.0;
            cfg.probes = vec![-0.5, 0.0, 0.5];
            cfg.output.times = Some(vec![0.0, 0.1, 0.25, 0.5, 1.0]);
            cfg
        }
        other => {
            return Err(CliError::Config(format!(
                "unknown preset '{other}' (known: {})",
                PRESETS.join(", ")
            )))
        }
    };
    Ok(cfg)
}
