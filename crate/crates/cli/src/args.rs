use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{FitModel, Method};

#[derive(Debug, Parser)]
#[command(
    name = "selfsim",
    version,
    about = "Self-similar solutions of the 1-D heat equation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stationary profile w(ξ) of one self-similar mode.
    EvalMode(EvalModeArgs),
    /// Raw special-function values.
    #[command(hide = true)]
    SpecfunEval(SpecfunArgs),
    /// Heat-kernel quadrature on the whole line, sampled on the grid.
    SolveCauchy(SolveArgs),
    /// Crank–Nicolson finite differences on [-D, D].
    SolveIbvp(SolveArgs),
    /// Sine-series solution of the Dirichlet problem.
    SolveSeries(SolveArgs),
    /// Complex-contour transform solution of the Dirichlet problem.
    SolveUtm(SolveArgs),
    /// Split a compatible problem into a closed form plus a homogeneous part.
    Decompose(SolveArgs),
    /// Algebraic or exponential decay fit of a probe series.
    FitDecay(FitDecayArgs),
    /// Discrepancy between two methods or two configs at the probes.
    Compare(CompareArgs),
}

fn parse_probe(s: &str) -> Result<f64, String> {
    let v = s
        .strip_prefix("x=")
        .ok_or_else(|| format!("probe '{s}' must look like x=<value>"))?;
    v.parse::<f64>().map_err(|e| format!("probe '{s}': {e}"))
}

/// Problem selection shared by the solver commands.
#[derive(Debug, Clone, Default, Args)]
pub struct ProblemArgs {
    /// JSON run configuration.
    #[arg(long, conflicts_with = "preset")]
    pub config: Option<PathBuf>,
    /// Named configuration (case4, case4-large, kaz3, fig2, fig22, eigenmode).
    #[arg(long)]
    pub preset: Option<String>,
    /// Half-width of the interval [-D, D].
    #[arg(long = "D", value_name = "D")]
    pub d: Option<f64>,
    /// Number of grid nodes.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long = "t-end")]
    pub t_end: Option<f64>,
    /// Probe position, repeatable: --probe x=1 --probe x=-0.5.
    #[arg(long = "probe", value_name = "x=<v>", value_parser = parse_probe)]
    pub probes: Vec<f64>,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Sine-series terms (series method and decompose).
    #[arg(long)]
    pub terms: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct EvalModeArgs {
    /// Index ν; the decay exponent is b = -(ν + 1).
    #[arg(long, allow_hyphen_values = true)]
    pub nu: f64,
    /// Weight of the Hermite (or second-branch) solution.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub c1: f64,
    /// Weight of the even Kummer solution.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub c2: f64,
    /// Use the odd Erfi solution in place of the Hermite one (ν = 0 or 2).
    #[arg(long)]
    pub second_branch: bool,
    /// Evaluation points, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "-4,-2,-1,0,1,2,4"
    )]
    pub xi: Vec<f64>,
    /// Also write `mode_profile.csv` into this directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpecialFunction {
    Hermite,
    HermiteScaled,
    HermitePoly,
    Kummer,
    KummerScaled,
    KummerSeries,
    KummerAsymptotic,
    Erfi,
    Dawson,
    LogGamma,
}

#[derive(Debug, Clone, Args)]
pub struct SpecfunArgs {
    #[arg(long, value_enum)]
    pub function: SpecialFunction,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<f64>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    /// Arguments, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    pub x: Vec<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct FitDecayArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Probe CSV (`t,u`) to fit instead of running a solver.
    #[arg(long, conflicts_with_all = ["config", "preset"])]
    pub input: Option<PathBuf>,
    /// Solver for the probe series (defaults to the config's method).
    #[arg(long)]
    pub method: Option<Method>,
    #[arg(long = "t-star", allow_hyphen_values = true)]
    pub t_star: Option<f64>,
    #[arg(long)]
    pub model: Option<FitModel>,
    /// Fit window as `lo:hi`.
    #[arg(long)]
    pub window: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Second configuration; its method is compared against the first's.
    #[arg(long)]
    pub against: Option<PathBuf>,
    /// Two methods run on the same config, as `a,b`.
    #[arg(long, value_delimiter = ',', conflicts_with = "against")]
    pub methods: Vec<Method>,
    /// Largest acceptable absolute discrepancy.
    #[arg(long, default_value_t = 1e-5)]
    pub tolerance: f64,
}
