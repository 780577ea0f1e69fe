//! Config → solver objects, and one evaluation path per method.

use std::path::Path;

use selfsim_heat::cauchy::{heat_kernel_solve, InitialData, InitialPreset};
use selfsim_heat::exact::ExactSolution;
use selfsim_heat::grid::{Grid1D, GridFunction, SolutionField, TimeSeries};
use selfsim_heat::ibvp::{
    consonant_dirichlet, consonant_neumann, consonant_robin, crank_nicolson_solve, IBVPProblem,
    OutputSchedule,
};
use selfsim_heat::series::{series_solution, SineSeriesSolution};
use selfsim_heat::signal::{BoundaryKind, BoundarySpec, Side, TimeSignal};
use selfsim_heat::utm::{utm_snapshot, UtmProblem};

use crate::config::{BoundaryConfig, EndConfig, InitialConfig, Method, RunConfig, SignalConfig};
use crate::error::{CliError, CliResult};

/// The solver-side view of a [`RunConfig`].
#[derive(Debug, Clone)]
pub struct Built {
    pub grid: Grid1D,
    pub initial: InitialData,
    pub problem: IBVPProblem,
    /// Closed form whose traces are the boundary data, if any.
    pub consonant: Option<ExactSolution>,
    pub series_terms: usize,
}

impl Built {
    pub fn new(cfg: &RunConfig) -> CliResult<Self> {
        let p = &cfg.problem;
        let grid = Grid1D::new(p.d, p.n)?;
        let initial = initial_data(&p.initial, p.d)?;
        let (left, right) = boundary(&p.boundary, p.d, p.t_end)?;
        let values = GridFunction::from_fn(grid, |x| initial.eval(x))?;
        let problem = IBVPProblem::new(values, left, right, p.t_end, p.dt)?;
        Ok(Self {
            grid,
            initial,
            problem,
            consonant: p.boundary.consonant_solution().cloned(),
            series_terms: cfg.series_terms,
        })
    }

    pub fn d(&self) -> f64 {
        self.grid.half_width()
    }

    /// `(g, h)` when both ends carry Dirichlet data.
    pub fn dirichlet_data(&self) -> Option<(TimeSignal, TimeSignal)> {
        let (l, r) = (&self.problem.left, &self.problem.right);
        (l.kind == BoundaryKind::Dirichlet && r.kind == BoundaryKind::Dirichlet)
            .then(|| (l.data.clone(), r.data.clone()))
    }

    fn require_dirichlet(&self, method: Method) -> CliResult<(TimeSignal, TimeSignal)> {
        self.dirichlet_data().ok_or_else(|| {
            CliError::Config(format!(
                "method '{}' needs Dirichlet data at both ends",
                method.name()
            ))
        })
    }

    pub fn evaluator(&self, method: Method) -> CliResult<Evaluator> {
        Ok(match method {
            Method::Cn => Evaluator::Cn(self.problem.clone()),
            Method::Series => {
                let (g, h) = self.require_dirichlet(method)?;
                Evaluator::Series(SineSeriesSolution::new(
                    &self.initial,
                    self.d(),
                    self.series_terms,
                    g,
                    h,
                )?)
            }
            Method::Utm => {
                let (g, h) = self.require_dirichlet(method)?;
                Evaluator::Utm(UtmProblem::new(self.d(), self.initial.clone(), g, h)?)
            }
            Method::Cauchy => {
                if self.consonant.is_none() {
                    log::warn!(
                        "the Cauchy solution ignores the boundary data of a non-consonant problem"
                    );
                }
                Evaluator::Cauchy(self.initial.clone())
            }
            Method::Mode => Evaluator::Mode(self.consonant.clone().ok_or_else(|| {
                CliError::Config("method 'mode' needs consonant boundary data".into())
            })?),
        })
    }
}

/// One solution method, ready to evaluate.
#[derive(Debug, Clone)]
pub enum Evaluator {
    Cn(IBVPProblem),
    Series(SineSeriesSolution),
    Utm(UtmProblem),
    Cauchy(InitialData),
    Mode(ExactSolution),
}

impl Evaluator {
    /// Values at the points `xs` at time `t`.
    pub fn values(&self, xs: &[f64], t: f64) -> CliResult<Vec<f64>> {
        let out = match self {
            Self::Cn(_) => unreachable!("finite differences are sampled through a field"),
            Self::Series(s) => xs.iter().map(|&x| series_solution(s, x, t)).collect(),
            Self::Utm(p) if t == 0.0 => Ok(xs.iter().map(|&x| p.u0.eval(x)).collect()),
            Self::Utm(p) => {
                utm_snapshot(p, xs, t).map(|v| v.into_iter().map(|v| v.value).collect())
            }
            Self::Cauchy(f) if t == 0.0 => Ok(xs.iter().map(|&x| f.eval(x)).collect()),
            Self::Cauchy(f) => xs.iter().map(|&x| heat_kernel_solve(f, x, t)).collect(),
            Self::Mode(e) => xs.iter().map(|&x| e.value(x, t)).collect(),
        };
        Ok(out?)
    }

    /// The solution on the grid at `times`.
    pub fn field(&self, grid: &Grid1D, times: &[f64]) -> CliResult<SolutionField> {
        if let Self::Cn(p) = self {
            let field =
                crank_nicolson_solve(&p.clone().with_output(OutputSchedule::At(times.to_vec())))?;
            return select_rows(&field, times);
        }
        let nodes = grid.nodes();
        let rows = times
            .iter()
            .map(|&t| self.values(&nodes, t))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(SolutionField::new(*grid, times.to_vec(), rows)?)
    }

    /// `u(x, t)` along `times` at each of `xs`. Finite differences reuse
    /// `field` when given, which must hold every time in `times`.
    pub fn probes(
        &self,
        grid: &Grid1D,
        xs: &[f64],
        times: &[f64],
        field: Option<&SolutionField>,
    ) -> CliResult<Vec<TimeSeries>> {
        if let Self::Cn(_) = self {
            let owned;
            let field = match field {
                Some(f) => select_rows(f, times)?,
                None => {
                    owned = self.field(grid, times)?;
                    owned
                }
            };
            return xs.iter().map(|&x| Ok(field.probe(x)?)).collect();
        }
        let mut columns = vec![Vec::with_capacity(times.len()); xs.len()];
        for &t in times {
            for (col, v) in columns.iter_mut().zip(self.values(xs, t)?) {
                col.push(v);
            }
        }
        columns
            .into_iter()
            .map(|c| Ok(TimeSeries::new(times.to_vec(), c)?))
            .collect()
    }
}

/// Rows of `field` at exactly the requested times.
pub fn select_rows(field: &SolutionField, times: &[f64]) -> CliResult<SolutionField> {
    let mut rows = Vec::with_capacity(times.len());
    for &t in times {
        let i = field
            .nearest_time(t)
            .filter(|&i| (field.times()[i] - t).abs() <= 1e-9 * t.abs().max(1.0))
            .ok_or_else(|| CliError::Io(format!("solver did not store t = {t}")))?;
        rows.push(field.row(i).to_vec());
    }
    Ok(SolutionField::new(*field.grid(), times.to_vec(), rows)?)
}

fn initial_data(cfg: &InitialConfig, d: f64) -> CliResult<InitialData> {
    Ok(match cfg {
        InitialConfig::Zero => InitialData::preset(InitialPreset::Zero)?,
        InitialConfig::Gaussian => InitialData::preset(InitialPreset::Gaussian)?,
        InitialConfig::Hermite1 => InitialData::preset(InitialPreset::Hermite1)?,
        InitialConfig::Kummer { c_star } => {
            let c_star = match c_star {
                Some(c) => *c,
                None => selfsim_heat::analysis::compatibility_c_star(d)?,
            };
            InitialData::preset(InitialPreset::KummerCStar { c_star })?
        }
        InitialConfig::SineMode { n } => InitialData::preset(InitialPreset::SineMode { d, n: *n })?,
        InitialConfig::Remainder { initial, solution } => {
            let inner = initial_data(initial, d)?;
            let solution = solution.clone();
            solution.value(0.0, 0.0)?;
            InitialData::function(
                move |x| inner.eval(x) - solution.value(x, 0.0).unwrap_or(f64::NAN),
                d,
            )
        }
        InitialConfig::Table { x, u } => InitialData::tabulated(x.clone(), u.clone())?,
        InitialConfig::Csv { path } => {
            let (x, u) = read_pairs(path, ["x", "u"])?;
            InitialData::tabulated(x, u)?
        }
    })
}

fn signal(cfg: &SignalConfig) -> CliResult<TimeSignal> {
    Ok(match cfg {
        SignalConfig::Zero => TimeSignal::Zero,
        SignalConfig::Constant { value } => TimeSignal::Constant(*value),
        SignalConfig::Table { t, u } => TimeSignal::tabulated(t.clone(), u.clone())?,
        SignalConfig::Csv { path } => {
            let (t, u) = read_pairs(path, ["t", "u"])?;
            TimeSignal::tabulated(t, u)?
        }
        SignalConfig::Trace { solution, x, trace } => {
            TimeSignal::exact(solution.clone(), *x, *trace)
        }
    })
}

fn end(cfg: &EndConfig, side: Side) -> CliResult<BoundarySpec> {
    let data = signal(&cfg.data)?;
    Ok(match cfg.kind {
        BoundaryKind::Dirichlet => BoundarySpec::dirichlet(side, data),
        BoundaryKind::Neumann => BoundarySpec::neumann(side, data),
        BoundaryKind::Robin => {
            let kappa = cfg
                .coefficient
                .as_ref()
                .ok_or_else(|| CliError::Config("a Robin end needs a coefficient".into()))?;
            BoundarySpec::robin(side, signal(kappa)?, data)
        }
    })
}

fn boundary(cfg: &BoundaryConfig, d: f64, t_end: f64) -> CliResult<(BoundarySpec, BoundarySpec)> {
    Ok(match cfg {
        BoundaryConfig::Consonant { kind, solution } => match kind {
            BoundaryKind::Dirichlet => consonant_dirichlet(solution, d),
            BoundaryKind::Neumann => consonant_neumann(solution, d),
            BoundaryKind::Robin => consonant_robin(solution, d, t_end)?,
        },
        BoundaryConfig::Homogeneous => (
            BoundarySpec::dirichlet(Side::Left, TimeSignal::Zero),
            BoundarySpec::dirichlet(Side::Right, TimeSignal::Zero),
        ),
        BoundaryConfig::Custom { left, right } => {
            (end(left, Side::Left)?, end(right, Side::Right)?)
        }
    })
}

/// Two-column numeric CSV with the given header.
pub fn read_pairs(path: &Path, header: [&str; 2]) -> CliResult<(Vec<f64>, Vec<f64>)> {
    let mut rdr = csv::Reader::from_path(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let found: Vec<String> = rdr
        .headers()?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();
    if found != header {
        return Err(CliError::Config(format!(
            "{} has header {found:?}, expected {header:?}",
            path.display()
        )));
    }
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for rec in rdr.deserialize::<(f64, f64)>() {
        let (x, y) = rec.map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        a.push(x);
        b.push(y);
    }
    Ok((a, b))
}
