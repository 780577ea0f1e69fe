//! Crank–Nicolson solver for `u_t = u_xx` on `[-D, D]` with Dirichlet,
//! Neumann or Robin data at either end, consonant boundary generators and
//! diagnostics (compatibility at `t = 0`, mass balance).

mod tridiag;

pub use tridiag::Tridiagonal;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::ExactSolution;
use crate::grid::{Grid1D, GridFunction, SolutionField};
use crate::quadrature::trapezoid_uniform;
use crate::signal::{BoundaryKind, BoundarySpec, Side, TimeSignal, Trace};

/// `Δt/Δx²` above which a solve records an accuracy warning.
pub const ACCURACY_RATIO_WARN: f64 = 100.0;

/// Number of samples used to check Robin coefficients before a solve.
const ROBIN_PRECHECK_SAMPLES: usize = 257;

/// Which time levels a solve keeps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputSchedule {
    /// Every `k`-th step, plus the final time.
    Every(usize),
    /// Exactly these times (steps are shortened to land on them).
    At(Vec<f64>),
}

impl Default for OutputSchedule {
    fn default() -> Self {
        Self::Every(1)
    }
}

#[derive(Debug, Clone)]
pub struct IBVPProblem {
    pub grid: Grid1D,
    pub initial: GridFunction,
    pub left: BoundarySpec,
    pub right: BoundarySpec,
    pub t_end: f64,
    pub dt: f64,
    pub output: OutputSchedule,
}

impl IBVPProblem {
    pub fn new(
        initial: GridFunction,
        left: BoundarySpec,
        right: BoundarySpec,
        t_end: f64,
        dt: f64,
    ) -> Result<Self> {
        let p = Self {
            grid: *initial.grid(),
            initial,
            left,
            right,
            t_end,
            dt,
            output: OutputSchedule::default(),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_output(mut self, output: OutputSchedule) -> Self {
        self.output = output;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.initial.grid() != &self.grid {
            return Err(Error::InvalidParams(
                "initial data lives on a different grid".into(),
            ));
        }
        if !(self.t_end.is_finite() && self.t_end > 0.0) {
            return Err(Error::InvalidParams(format!(
                "t_end = {} must be positive",
                self.t_end
            )));
        }
        if !(self.dt > 0.0 && self.dt <= self.t_end) {
            return Err(Error::InvalidParams(format!(
                "dt = {} must lie in (0, t_end = {}]",
                self.dt, self.t_end
            )));
        }
        if self.left.side != Side::Left || self.right.side != Side::Right {
            return Err(Error::InvalidParams(
                "boundary specs are attached to the wrong sides".into(),
            ));
        }
        match &self.output {
            OutputSchedule::Every(0) => {
                return Err(Error::InvalidParams(
                    "output stride must be positive".into(),
                ))
            }
            OutputSchedule::At(ts) => {
                if ts.iter().any(|&t| !(t >= 0.0 && t <= self.t_end)) {
                    return Err(Error::InvalidParams(format!(
                        "output times must lie in [0, {}]",
                        self.t_end
                    )));
                }
            }
            _ => {}
        }
        Ok(())
    }
}

/// Consonant problem: initial data and boundary data of the given kind both
/// taken from a closed-form solution.
pub fn consonant_problem(
    exact: &ExactSolution,
    grid: Grid1D,
    kind: BoundaryKind,
    t_end: f64,
    dt: f64,
) -> Result<IBVPProblem> {
    let d = grid.half_width();
    let initial = GridFunction::try_from_fn(grid, |x| exact.value(x, 0.0))?;
    let (left, right) = match kind {
        BoundaryKind::Dirichlet => consonant_dirichlet(exact, d),
        BoundaryKind::Neumann => consonant_neumann(exact, d),
        BoundaryKind::Robin => consonant_robin(exact, d, t_end)?,
    };
    IBVPProblem::new(initial, left, right, t_end, dt)
}

/// Dirichlet data `u(±D, t)` of a closed-form solution.
pub fn consonant_dirichlet(exact: &ExactSolution, d: f64) -> (BoundarySpec, BoundarySpec) {
    (
        BoundarySpec::dirichlet(
            Side::Left,
            TimeSignal::exact(exact.clone(), -d, Trace::Value),
        ),
        BoundarySpec::dirichlet(
            Side::Right,
            TimeSignal::exact(exact.clone(), d, Trace::Value),
        ),
    )
}

/// Neumann data `u_x(±D, t)` of a closed-form solution.
pub fn consonant_neumann(exact: &ExactSolution, d: f64) -> (BoundarySpec, BoundarySpec) {
    (
        BoundarySpec::neumann(
            Side::Left,
            TimeSignal::exact(exact.clone(), -d, Trace::Derivative),
        ),
        BoundarySpec::neumann(
            Side::Right,
            TimeSignal::exact(exact.clone(), d, Trace::Derivative),
        ),
    )
}

/// Robin data `u_x(±D,t) = [w'(η)/w(η)] u(±D,t)/√(2(t-t⋆))`,
/// `η = ±D/√(2(t-t⋆))`, for a self-similar solution. The coefficient is
/// sampled over `[0, horizon]` and must stay away from the zeros of `w`.
pub fn consonant_robin(
    exact: &ExactSolution,
    d: f64,
    horizon: f64,
) -> Result<(BoundarySpec, BoundarySpec)> {
    let left = TimeSignal::exact(exact.clone(), -d, Trace::RobinCoefficient);
    let right = TimeSignal::exact(exact.clone(), d, Trace::RobinCoefficient);
    for s in [&left, &right] {
        check_samples(s, horizon)?;
    }
    Ok((
        BoundarySpec::robin(Side::Left, left, TimeSignal::Zero),
        BoundarySpec::robin(Side::Right, right, TimeSignal::Zero),
    ))
}

fn check_samples(s: &TimeSignal, horizon: f64) -> Result<()> {
    let n = ROBIN_PRECHECK_SAMPLES;
    for i in 0..n {
        s.eval(horizon * i as f64 / (n - 1) as f64)?;
    }
    Ok(())
}

/// Residual of the boundary data against the initial data at `t = 0`:
/// `|g(0) - u₀(∓D)|` for Dirichlet ends, and for Neumann/Robin ends the gap
/// between the prescribed `u_x` and a one-sided second-order difference of
/// the initial profile.
pub fn compatibility_check(p: &IBVPProblem) -> Result<(f64, f64)> {
    let u = p.initial.values();
    let n = u.len();
    let dx = p.grid.dx();
    let left_slope = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * dx);
    let right_slope = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * dx);
    let residual = |b: &BoundarySpec, value: f64, slope: f64| -> Result<f64> {
        let (kappa, g) = b.eval(0.0)?;
        Ok(match b.kind {
            BoundaryKind::Dirichlet => (g - value).abs(),
            BoundaryKind::Neumann | BoundaryKind::Robin => (kappa * value + g - slope).abs(),
        })
    };
    Ok((
        residual(&p.left, u[0], left_slope)?,
        residual(&p.right, u[n - 1], right_slope)?,
    ))
}

/// Crank–Nicolson solution, keeping the time levels named by the problem's
/// output schedule (always including `t = 0`).
pub fn crank_nicolson_solve(p: &IBVPProblem) -> Result<SolutionField> {
    let mut field = SolutionField::empty(p.grid);
    let notes = crank_nicolson_observe(p, |t, row| {
        field.push_row(t, row.to_vec());
        Ok(())
    })?;
    for note in notes {
        field.add_note(note);
    }
    Ok(field)
}

/// Runs the scheme and hands every scheduled time level to `observer`
/// instead of storing it. Returns the solver's diagnostic notes.
pub fn crank_nicolson_observe(
    p: &IBVPProblem,
    mut observer: impl FnMut(f64, &[f64]) -> Result<()>,
) -> Result<Vec<String>> {
    p.validate()?;
    let grid = p.grid;
    let n = grid.len();
    let dx = grid.dx();
    let mut notes = Vec::new();
    let ratio = p.dt / (dx * dx);
    if ratio > ACCURACY_RATIO_WARN {
        let note = format!(
            "dt/dx^2 = {ratio:.1} exceeds {ACCURACY_RATIO_WARN}; the scheme is stable but transients will be inaccurate"
        );
        log::warn!("{note}");
        notes.push(note);
    }
    for b in [&p.left, &p.right] {
        if b.kind == BoundaryKind::Robin {
            check_samples(&b.coefficient, p.t_end)?;
        }
    }

    let mut u = p.initial.values().to_vec();
    observer(0.0, &u)?;

    let (targets, stride) = match &p.output {
        OutputSchedule::Every(k) => (vec![p.t_end], *k),
        OutputSchedule::At(ts) => {
            let mut ts: Vec<f64> = ts.iter().copied().filter(|&t| t > 0.0).collect();
            ts.sort_by(f64::total_cmp);
            ts.dedup();
            (ts, usize::MAX)
        }
    };

    let mut m = Tridiagonal::zeros(n);
    let mut rhs = vec![0.0; n];
    let mut scratch = vec![0.0; n];
    let mut t = 0.0;
    let mut steps = 0usize;
    let mut bc_now = (p.left.eval(0.0)?, p.right.eval(0.0)?);
    for target in targets {
        while t < target {
            let mut t_next = (t + p.dt).min(target);
            if target - t_next < 1e-9 * p.dt {
                t_next = target;
            }
            let h = t_next - t;
            let bc_next = (p.left.eval(t_next)?, p.right.eval(t_next)?);
            assemble(&mut m, &mut rhs, &u, h / (dx * dx), dx, p, bc_now, bc_next);
            m.solve_in_place(&mut rhs, &mut scratch)?;
            std::mem::swap(&mut u, &mut rhs);
            if let Some(v) = u.iter().find(|v| !v.is_finite()) {
                return Err(Error::Overflow(format!(
                    "non-finite value {v} at t = {t_next}"
                )));
            }
            t = t_next;
            bc_now = bc_next;
            steps += 1;
            let record = match stride {
                usize::MAX => t == target,
                k => steps % k == 0 || t == p.t_end,
            };
            if record {
                observer(t, &u)?;
            }
        }
    }
    Ok(notes)
}

type EndData = ((f64, f64), (f64, f64));

#[allow(clippy::too_many_arguments)]
fn assemble(
    m: &mut Tridiagonal,
    rhs: &mut [f64],
    u: &[f64],
    r: f64,
    dx: f64,
    p: &IBVPProblem,
    now: EndData,
    next: EndData,
) {
    let n = u.len();
    let half = 0.5 * r;
    for i in 1..n - 1 {
        m.lower[i] = -half;
        m.diag[i] = 1.0 + r;
        m.upper[i] = -half;
        rhs[i] = (1.0 - r) * u[i] + half * (u[i - 1] + u[i + 1]);
    }
    let ((kl, gl), (kr, gr)) = now;
    let ((kl1, gl1), (kr1, gr1)) = next;
    match p.left.kind {
        BoundaryKind::Dirichlet => {
            m.diag[0] = 1.0;
            m.upper[0] = 0.0;
            rhs[0] = gl1;
        }
        BoundaryKind::Neumann | BoundaryKind::Robin => {
            // ghost node u_{-1} = u_1 - 2Δx(κ u_0 + g)
            m.diag[0] = 1.0 + r + r * dx * kl1;
            m.upper[0] = -r;
            rhs[0] = (1.0 - r - r * dx * kl) * u[0] + r * u[1] - r * dx * (gl + gl1);
        }
    }
    match p.right.kind {
        BoundaryKind::Dirichlet => {
            m.diag[n - 1] = 1.0;
            m.lower[n - 1] = 0.0;
            rhs[n - 1] = gr1;
        }
        BoundaryKind::Neumann | BoundaryKind::Robin => {
            // ghost node u_{N+1} = u_{N-1} + 2Δx(κ u_N + g)
            m.diag[n - 1] = 1.0 + r - r * dx * kr1;
            m.lower[n - 1] = -r;
            rhs[n - 1] = (1.0 - r + r * dx * kr) * u[n - 1] + r * u[n - 2] + r * dx * (gr + gr1);
        }
    }
}

/// One row of [`mass_series`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassSample {
    pub t: f64,
    /// `M(t) = ∫ u dx` (trapezoid over the nodes).
    pub mass: f64,
    /// `dM/dt` from a three-point difference in time.
    pub dm_dt: f64,
    /// `u_x(D,t) - u_x(-D,t)` from one-sided second-order differences.
    pub flux_balance: f64,
    /// `|dM/dt - flux_balance|`.
    pub residual: f64,
}

/// Mass balance `dM/dt = u_x(D,t) - u_x(-D,t)` along a stored field. Needs
/// at least three stored times.
pub fn mass_series(field: &SolutionField) -> Result<Vec<MassSample>> {
    let times = field.times();
    let m = times.len();
    if m < 3 {
        return Err(Error::InvalidParams(format!(
            "mass balance needs at least 3 stored times, got {m}"
        )));
    }
    let dx = field.grid().dx();
    let mass: Vec<f64> = field
        .rows()
        .iter()
        .map(|r| trapezoid_uniform(r, dx))
        .collect();
    let mut out = Vec::with_capacity(m);
    for (j, row) in field.rows().iter().enumerate() {
        let k = j.clamp(1, m - 2);
        let dm_dt = quadratic_slope(
            [times[k - 1], times[k], times[k + 1]],
            [mass[k - 1], mass[k], mass[k + 1]],
            times[j],
        );
        let n = row.len();
        let right = (3.0 * row[n - 1] - 4.0 * row[n - 2] + row[n - 3]) / (2.0 * dx);
        let left = (-3.0 * row[0] + 4.0 * row[1] - row[2]) / (2.0 * dx);
        let flux_balance = right - left;
        out.push(MassSample {
            t: times[j],
            mass: mass[j],
            dm_dt,
            flux_balance,
            residual: (dm_dt - flux_balance).abs(),
        });
    }
    Ok(out)
}

/// Derivative at `at` of the quadratic through three points.
fn quadratic_slope(t: [f64; 3], y: [f64; 3], at: f64) -> f64 {
    let [t0, t1, t2] = t;
    let [y0, y1, y2] = y;
    y0 * ((at - t1) + (at - t2)) / ((t0 - t1) * (t0 - t2))
        + y1 * ((at - t0) + (at - t2)) / ((t1 - t0) * (t1 - t2))
        + y2 * ((at - t0) + (at - t1)) / ((t2 - t0) * (t2 - t1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::sine_wavenumber;

    fn grid(n: usize) -> Grid1D {
        Grid1D::new(1.0, n).unwrap()
    }

    #[test]
    fn zero_problem_stays_zero() {
        let g = grid(21);
        let p = IBVPProblem::new(
            GridFunction::zeros(g),
            BoundarySpec::dirichlet(Side::Left, TimeSignal::Zero),
            BoundarySpec::dirichlet(Side::Right, TimeSignal::Zero),
            1.0,
            0.1,
        )
        .unwrap();
        let f = crank_nicolson_solve(&p).unwrap();
        assert!(f.rows().iter().flatten().all(|&v| v == 0.0));
        assert_eq!(f.times().len(), 11);
    }

    #[test]
    fn eigenmode_decays_at_its_rate() {
        let g = grid(201);
        let e = ExactSolution::SineMode { d: 1.0, n: 1 };
        let p = consonant_problem(&e, g, BoundaryKind::Dirichlet, 1.0, 1e-3)
            .unwrap()
            .with_output(OutputSchedule::At(vec![0.5, 1.0]));
        let f = crank_nicolson_solve(&p).unwrap();
        assert_eq!(f.times(), &[0.0, 0.5, 1.0]);
        let k = sine_wavenumber(1.0, 1);
        let err = f
            .max_error(|x, t| Ok((-k * k * t).exp() * (k * (x + 1.0)).sin()))
            .unwrap();
        assert!(err < 2e-5, "{err}");
    }

    #[test]
    fn shortened_final_step() {
        let p = consonant_problem(
            &ExactSolution::Zero,
            grid(11),
            BoundaryKind::Dirichlet,
            0.25,
            0.1,
        )
        .unwrap();
        let f = crank_nicolson_solve(&p).unwrap();
        assert_eq!(*f.times().last().unwrap(), 0.25);
        assert_eq!(f.times().len(), 4);
    }

    #[test]
    fn neumann_and_robin_track_closed_form() {
        let e = ExactSolution::gaussian(-0.5);
        for kind in [BoundaryKind::Neumann, BoundaryKind::Robin] {
            let p = consonant_problem(&e, grid(201), kind, 2.0, 2e-3)
                .unwrap()
                .with_output(OutputSchedule::Every(50));
            let f = crank_nicolson_solve(&p).unwrap();
            let err = f.max_error(|x, t| e.value(x, t)).unwrap();
            assert!(err < 1e-4, "{kind:?}: {err}");
        }
    }

    #[test]
    fn compatibility_residuals() {
        let g = grid(41);
        let init = GridFunction::from_fn(g, |x| (-0.5 * x * x).exp()).unwrap();
        let p = IBVPProblem::new(
            init,
            BoundarySpec::dirichlet(Side::Left, TimeSignal::Zero),
            BoundarySpec::dirichlet(Side::Right, TimeSignal::Zero),
            1.0,
            0.1,
        )
        .unwrap();
        let (l, r) = compatibility_check(&p).unwrap();
        assert!((l - (-0.5f64).exp()).abs() < 1e-15 && (r - l).abs() < 1e-15);
    }

    #[test]
    fn accuracy_note() {
        let p = consonant_problem(
            &ExactSolution::Zero,
            grid(201),
            BoundaryKind::Dirichlet,
            1.0,
            0.5,
        )
        .unwrap();
        let f = crank_nicolson_solve(&p).unwrap();
        assert_eq!(f.notes().len(), 1);
    }

    #[test]
    fn quadratic_slope_exact() {
        let s = quadratic_slope([0.0, 1.0, 3.0], [0.0, 1.0, 9.0], 2.0);
        assert!((s - 4.0).abs() < 1e-14);
    }
}
