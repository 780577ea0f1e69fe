//! Unified-transform (Fokas) solution of the Dirichlet problem on `[-D, D]`:
//!
//! ```text
//! u(x,t) = (1/2π) ∫_ℝ e^{ikx-k²t} û₀(k) dk
//!        - (1/2π) ∫_{∂D⁺} e^{ik(x+D)-k²t}/(e^{2ikD}-e^{-2ikD}) [-2ik e^{-2ikD} g̃ + 2ik h̃ + e^{ikD}û₀(k) - e^{-ikD}û₀(-k)] dk
//!        - (1/2π) ∫_{∂D⁻} e^{ik(x-D)-k²t}/(e^{2ikD}-e^{-2ikD}) [-2ik g̃ + 2ik e^{2ikD} h̃ + e^{-ikD}û₀(k) - e^{ikD}û₀(-k)] dk
//! ```
//!
//! evaluated by Gauss–Legendre panels on contours deformed off the
//! boundaries of `{Re k² < 0}` onto rays where `e^{-k²t}` decays. Every
//! exponential is grouped with its partner so that no factor exceeds one in
//! modulus away from the small arc around the origin.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cauchy::{split_interval, InitialData};
use crate::error::{Error, Result};
use crate::grid::{Grid1D, SolutionField};
use crate::quadrature::{gauss_legendre_16, gl16_panels};
use crate::signal::TimeSignal;

/// Default ray angle: the rays `e^{iθ}`, `e^{i(π-θ)}` bound `∂D⁺`.
pub const RAY_ANGLE: f64 = PI / 6.0;

/// Largest accepted imaginary part of the assembled solution.
pub const RESIDUAL_LIMIT: f64 = 1e-6;

/// Terms carrying `e^{-k²t}` are dropped once `Re(k²)t` passes this.
const EXP_CUTOFF: f64 = 45.0;

/// Boundary terms carrying `e^{-αr sinθ}` are dropped once the exponent
/// passes this.
const DECAY_CUTOFF: f64 = 37.0;

/// Phase change allowed across one 16-point panel.
const PANEL_PHASE: f64 = 8.0;

/// Longest panel used to resolve the initial data.
const DATA_PANEL: f64 = 0.5;

/// Which half-plane contour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Half {
    Upper,
    Lower,
}

/// Integration path for one half plane: in along one ray, clockwise over the
/// origin on an arc of radius `r0`, out along the other ray.
///
/// For the upper half the rays have angles `π - angle` (in) and `angle`
/// (out); the lower half is the mirror image.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContourSpec {
    pub half: Half,
    pub angle: f64,
    pub r0: f64,
}

impl ContourSpec {
    /// The default path for half-width `d`: `θ = π/6`, `r0 = π/(8D)`.
    pub fn new(half: Half, d: f64) -> Self {
        Self {
            half,
            angle: RAY_ANGLE,
            r0: PI / (8.0 * d),
        }
    }

    pub fn with_r0(mut self, r0: f64) -> Self {
        self.r0 = r0;
        self
    }

    pub fn mirrored(self) -> Self {
        Self {
            half: match self.half {
                Half::Upper => Half::Lower,
                Half::Lower => Half::Upper,
            },
            ..self
        }
    }

    /// Angles of the incoming and outgoing rays.
    pub fn ray_angles(&self) -> (f64, f64) {
        match self.half {
            Half::Upper => (PI - self.angle, self.angle),
            Half::Lower => (-self.angle, -(PI - self.angle)),
        }
    }

    pub fn validate(&self) -> Result<()> {
        // e^{-k²t} must decay along the rays: 0 < θ < π/4
        if !(self.angle > 0.0 && self.angle < PI / 4.0) {
            return Err(Error::InvalidParams(format!(
                "ray angle {} outside (0, π/4)",
                self.angle
            )));
        }
        if !(self.r0.is_finite() && self.r0 > 0.0) {
            return Err(Error::InvalidParams(format!(
                "arc radius r0 = {} must be positive",
                self.r0
            )));
        }
        Ok(())
    }

    /// Nodes `k` and weights `dk` of the path truncated at radius `r_max`,
    /// with panels of at most `PANEL_PHASE/omega(r)` along the rays.
    pub fn nodes(&self, r_max: f64, omega: impl Fn(f64) -> f64) -> Vec<(Complex64, Complex64)> {
        let (phi_in, phi_out) = self.ray_angles();
        let radial = radial_nodes(self.r0, r_max, &omega);
        let mut out = Vec::with_capacity(2 * radial.len() + 64);
        let dir_in = Complex64::from_polar(1.0, phi_in);
        for &(r, w) in radial.iter().rev() {
            out.push((r * dir_in, -w * dir_in));
        }
        for (phi, w) in arc_nodes(self.r0, self.angle, omega(self.r0)) {
            let phi = match self.half {
                Half::Upper => phi,
                Half::Lower => -phi,
            };
            let k = Complex64::from_polar(self.r0, phi);
            // clockwise in both halves: dk = ik dφ with φ decreasing
            out.push((k, -w * Complex64::i() * k));
        }
        let dir_out = Complex64::from_polar(1.0, phi_out);
        for &(r, w) in &radial {
            out.push((r * dir_out, w * dir_out));
        }
        out
    }
}

fn radial_nodes(r0: f64, r_max: f64, omega: &impl Fn(f64) -> f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut lo = r0;
    while lo < r_max {
        let step = (0.5 * lo).min(PANEL_PHASE / omega(lo).max(1e-300));
        let hi = if lo + step >= r_max * (1.0 - 1e-12) {
            r_max
        } else {
            lo + step
        };
        out.extend(gl16_panels(lo, hi, 1));
        lo = hi;
    }
    out
}

/// Arc angles in `[θ, π-θ]` with their weights.
fn arc_nodes(r0: f64, theta: f64, omega: f64) -> Vec<(f64, f64)> {
    let len = r0 * (PI - 2.0 * theta);
    let panels = ((len * omega / PANEL_PHASE).ceil() as usize).max(2);
    gl16_panels(theta, PI - theta, panels)
}

/// Dirichlet problem solved by the unified transform.
#[derive(Debug, Clone)]
pub struct UtmProblem {
    pub d: f64,
    pub u0: InitialData,
    pub g0: TimeSignal,
    pub h0: TimeSignal,
    contour: ContourSpec,
}

impl UtmProblem {
    pub fn new(d: f64, u0: InitialData, g0: TimeSignal, h0: TimeSignal) -> Result<Self> {
        if !(d.is_finite() && d > 0.0) {
            return Err(Error::InvalidParams(format!(
                "half-width D = {d} must be positive"
            )));
        }
        Ok(Self {
            d,
            u0,
            g0,
            h0,
            contour: ContourSpec::new(Half::Upper, d),
        })
    }

    /// Replaces the contour shape; the lower contour is its mirror image.
    pub fn with_contour(mut self, contour: ContourSpec) -> Result<Self> {
        contour.validate()?;
        self.contour = match contour.half {
            Half::Upper => contour,
            Half::Lower => contour.mirrored(),
        };
        Ok(self)
    }

    pub fn contour(&self) -> ContourSpec {
        self.contour
    }
}

/// Real part of the assembled integral and the size of its imaginary part.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UtmValue {
    pub value: f64,
    pub imag_residual: f64,
}

/// `∫ e^{iκ(c + σy)} u₀(y) dy` over `[-D, D]`, by a rule fixed once per
/// problem.
enum FourierRule {
    Zero,
    /// Quadrature nodes and `weight·u₀(y)`.
    Nodes {
        y: Vec<f64>,
        wu: Vec<f64>,
    },
    /// Piecewise-linear data integrated exactly segment by segment.
    Linear {
        y: Vec<f64>,
        u: Vec<f64>,
    },
}

impl FourierRule {
    fn new(u0: &InitialData, d: f64, k_max: f64) -> Self {
        if u0.is_zero() {
            return Self::Zero;
        }
        let (lo, hi) = u0.support();
        let (lo, hi) = (lo.max(-d), hi.min(d));
        if !(hi > lo) {
            return Self::Zero;
        }
        if let InitialData::Tabulated { .. } = u0 {
            let mut y = vec![lo];
            y.extend(u0.breakpoints(lo, hi));
            y.push(hi);
            let u = y.iter().map(|&s| u0.eval(s)).collect();
            return Self::Linear { y, u };
        }
        let panel = DATA_PANEL.min(PANEL_PHASE / k_max.max(1e-300));
        let mut y = Vec::new();
        let mut wu = Vec::new();
        for (a, b) in split_interval(lo, hi, u0.breakpoints(lo, hi)) {
            let panels = ((b - a) / panel).ceil().max(1.0) as usize;
            for (s, w) in gl16_panels(a, b, panels) {
                y.push(s);
                wu.push(w * u0.eval(s));
            }
        }
        Self::Nodes { y, wu }
    }

    fn eval(&self, k: Complex64, c: f64, sigma: f64) -> Complex64 {
        let ik = Complex64::i() * k;
        match self {
            Self::Zero => Complex64::new(0.0, 0.0),
            Self::Nodes { y, wu } => y
                .iter()
                .zip(wu)
                .map(|(&s, &w)| w * (ik * (c + sigma * s)).exp())
                .sum(),
            Self::Linear { y, u } => {
                let mut sum = Complex64::new(0.0, 0.0);
                for i in 0..y.len() - 1 {
                    let h = y[i + 1] - y[i];
                    let p0 = ik * (c + sigma * y[i]);
                    let p1 = ik * (c + sigma * y[i + 1]);
                    // expand from the end with the larger modulus
                    let seg = if p1.re <= p0.re {
                        p0.exp() * (u[i] * phi1(p1 - p0) + (u[i + 1] - u[i]) * phi2(p1 - p0))
                    } else {
                        p1.exp() * (u[i + 1] * phi1(p0 - p1) + (u[i] - u[i + 1]) * phi2(p0 - p1))
                    };
                    sum += h * seg;
                }
                sum
            }
        }
    }
}

/// `∫₀¹ e^{zs} ds`.
fn phi1(z: Complex64) -> Complex64 {
    if z.norm() < 0.5 {
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for n in 1..20 {
            term *= z / (n as f64 + 1.0);
            sum += term;
        }
        sum
    } else {
        (z.exp() - 1.0) / z
    }
}

/// `∫₀¹ s e^{zs} ds`.
fn phi2(z: Complex64) -> Complex64 {
    if z.norm() < 0.5 {
        // Σ zⁿ/(n!(n+2))
        let mut fact = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(0.5, 0.0);
        for n in 1..20 {
            fact *= z / n as f64;
            sum += fact / (n as f64 + 2.0);
        }
        sum
    } else {
        (z.exp() * (z - 1.0) + 1.0) / (z * z)
    }
}

/// The finite Fourier transform `û₀(k) = ∫_{-D}^{D} e^{-ikx} u₀(x) dx`.
pub fn u0_hat(u0: &InitialData, k: Complex64, d: f64) -> Result<Complex64> {
    if k.im.abs() * d > 700.0 {
        return Err(Error::Overflow(format!(
            "û₀ at Im k = {} overflows for D = {d}",
            k.im
        )));
    }
    Ok(FourierRule::new(u0, d, k.norm()).eval(k, 0.0, -1.0))
}

/// `∫₀ᵗ e^{-k²s} g(t-s) ds` on graded panels, fine near `s = 0` where the
/// kernel varies on the scale `1/|k|²`.
struct BoundaryTable {
    /// Panels as (first node index, panel start `s`).
    panels: Vec<(usize, f64)>,
    s: Vec<f64>,
    wg: Vec<f64>,
    wh: Vec<f64>,
}

impl BoundaryTable {
    fn new(g: &TimeSignal, h: &TimeSignal, t: f64, k_max: f64) -> Result<Option<Self>> {
        if g.is_zero() && h.is_zero() {
            return Ok(None);
        }
        let s_min = t.min(5.0 / (k_max * k_max));
        let mut cuts = vec![0.0, s_min];
        let mut s = s_min;
        while s < t {
            s = (s + (0.1 * s).min(DATA_PANEL)).min(t);
            if t - s < 1e-12 * t {
                s = t;
            }
            cuts.push(s);
        }
        if let TimeSignal::Tabulated { times, .. } = g {
            cuts.extend(times.iter().map(|&tau| t - tau));
        }
        if let TimeSignal::Tabulated { times, .. } = h {
            cuts.extend(times.iter().map(|&tau| t - tau));
        }
        cuts.retain(|&c| (0.0..=t).contains(&c));
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let (x, w) = gauss_legendre_16();
        let mut table = Self {
            panels: Vec::new(),
            s: Vec::new(),
            wg: Vec::new(),
            wh: Vec::new(),
        };
        for pair in cuts.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            if b <= a {
                continue;
            }
            table.panels.push((table.s.len(), a));
            let (c, half) = (0.5 * (a + b), 0.5 * (b - a));
            for (xi, wi) in x.iter().zip(w) {
                let s = c + half * xi;
                table.s.push(s);
                table.wg.push(half * wi * g.eval(t - s)?);
                table.wh.push(half * wi * h.eval(t - s)?);
            }
        }
        Ok(Some(table))
    }

    /// `(e^{-k²t} g̃, e^{-k²t} h̃)` at complex `k²`.
    fn eval(&self, k2: Complex64) -> (Complex64, Complex64) {
        let mut g = Complex64::new(0.0, 0.0);
        let mut h = Complex64::new(0.0, 0.0);
        let mut next = 0;
        for (p, &(start, s0)) in self.panels.iter().enumerate() {
            if k2.re > 0.0 && k2.re * s0 > EXP_CUTOFF {
                break;
            }
            next = self.panels.get(p + 1).map_or(self.s.len(), |q| q.0);
            for j in start..next {
                let e = (-k2 * self.s[j]).exp();
                g += e * self.wg[j];
                h += e * self.wh[j];
            }
        }
        let _ = next;
        (g, h)
    }
}

/// Everything about `(problem, t)` that does not depend on `x`.
struct Prepared<'a> {
    p: &'a UtmProblem,
    t: f64,
    rule: FourierRule,
    /// `(k, weight·û₀(k))` on `[0, K]`.
    real_line: Vec<(f64, Complex64)>,
    r_u0: f64,
}

impl<'a> Prepared<'a> {
    fn new(p: &'a UtmProblem, t: f64) -> Self {
        let d = p.d;
        let c2 = (2.0 * p.contour.angle).cos();
        let r_u0 = (EXP_CUTOFF / (t * c2)).sqrt();
        let rule = FourierRule::new(&p.u0, d, r_u0);
        let mut real_line = Vec::new();
        if !matches!(rule, FourierRule::Zero) {
            let k_max = (EXP_CUTOFF / t).sqrt();
            let panels = ((k_max * 2.0 * d.max(0.5) / PANEL_PHASE).ceil() as usize).max(4);
            for (k, w) in gl16_panels(0.0, k_max, panels) {
                real_line.push((k, w * rule.eval(Complex64::new(k, 0.0), 0.0, -1.0)));
            }
        }
        Self {
            p,
            t,
            rule,
            real_line,
            r_u0,
        }
    }

    fn solve(&self, x: f64) -> Result<UtmValue> {
        let (p, t, d) = (self.p, self.t, self.p.d);
        if x == -d {
            return Ok(UtmValue {
                value: p.g0.eval(t)?,
                imag_residual: 0.0,
            });
        }
        if x == d {
            return Ok(UtmValue {
                value: p.h0.eval(t)?,
                imag_residual: 0.0,
            });
        }
        let spec = p.contour;
        let theta = spec.angle;
        let (sin, cos) = theta.sin_cos();
        let sin2 = (2.0 * theta).sin();
        let has_u0 = !matches!(self.rule, FourierRule::Zero);
        let has_bc = !(p.g0.is_zero() && p.h0.is_zero());

        // decay parameters of the four boundary terms
        let alphas = [x + d, x + 3.0 * d, 3.0 * d - x, d - x];
        let a_min = (x + d).min(d - x);
        let mut r_max = spec.r0 * 2.0;
        if has_u0 {
            r_max = r_max.max(self.r_u0);
        }
        if has_bc {
            r_max = r_max.max(DECAY_CUTOFF / (a_min * sin));
        }
        // the arc must not turn e^{-k²t} into a large growth factor
        let r0 = spec.r0.min(1.0 / t.sqrt());
        let r_u0 = self.r_u0;
        let omega = |r: f64| {
            let mut w = 0.0f64;
            if has_bc {
                for a in alphas {
                    if a * r * sin < DECAY_CUTOFF {
                        w = w.max(a * cos);
                    }
                }
            }
            if 4.0 * d * r * sin < DECAY_CUTOFF {
                w = w.max(4.0 * d * cos);
            }
            if has_u0 && r < r_u0 {
                w = w.max(5.0 * d * cos) + 2.0 * r * t * sin2;
            }
            w
        };
        let table = BoundaryTable::new(&p.g0, &p.h0, t, r_max)?;

        let radial = radial_nodes(r0, r_max, &omega);
        let arc = arc_nodes(r0, theta, omega(r0));
        let i = Complex64::i();
        let mut contour_sum = Complex64::new(0.0, 0.0);

        // k² on the rays is r²e^{±2iθ}; the transforms at conjugate k² are
        // conjugate, so each radius needs one table evaluation
        let mut add = |k: Complex64, dk: Complex64, gh: (Complex64, Complex64)| {
            contour_sum += dk * self.integrand(k, x, gh);
        };
        for &(r, w) in &radial {
            let k2 = Complex64::from_polar(r * r, 2.0 * theta);
            let gh = table
                .as_ref()
                .map_or((Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)), |tb| {
                    tb.eval(k2)
                });
            let ghc = (gh.0.conj(), gh.1.conj());
            let dir_out = Complex64::from_polar(1.0, theta);
            let dir_in = Complex64::from_polar(1.0, PI - theta);
            // upper: in along π-θ (k² conjugate), out along θ
            add(r * dir_in, -w * dir_in, ghc);
            add(r * dir_out, w * dir_out, gh);
            // lower: in along -θ (k² conjugate), out along -(π-θ)
            add(r * dir_out.conj(), -w * dir_out.conj(), ghc);
            add(r * dir_in.conj(), w * dir_in.conj(), gh);
        }
        for &(phi, w) in &arc {
            let k = Complex64::from_polar(r0, phi);
            let gh = table
                .as_ref()
                .map_or((Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)), |tb| {
                    tb.eval(k * k)
                });
            // both arcs run clockwise: dk = i k dφ with φ decreasing
            add(k, -w * i * k, gh);
            let kl = k.conj();
            add(kl, -w * i * kl, (gh.0.conj(), gh.1.conj()));
        }

        let mut real = 0.0;
        for &(k, wu) in &self.real_line {
            real += (Complex64::new(-k * k * t, k * x).exp() * wu).re;
        }
        let total = 2.0 * real + contour_sum.re;
        let residual = contour_sum.im.abs() / (2.0 * PI);
        if !(total.is_finite() && residual.is_finite()) {
            return Err(Error::Overflow(format!(
                "transform solution at (x, t) = ({x}, {t})"
            )));
        }
        if residual > RESIDUAL_LIMIT {
            return Err(Error::Contour {
                residual,
                limit: RESIDUAL_LIMIT,
            });
        }
        Ok(UtmValue {
            value: total / (2.0 * PI),
            imag_residual: residual,
        })
    }

    /// Upper- or lower-contour integrand (sign of `Im k` picks the half),
    /// already carrying the minus sign of the solution formula.
    fn integrand(&self, k: Complex64, x: f64, (g, h): (Complex64, Complex64)) -> Complex64 {
        let d = self.p.d;
        let i = Complex64::i();
        let ik = i * k;
        let k2 = k * k;
        let with_u0 = !matches!(self.rule, FourierRule::Zero) && k2.re * self.t < EXP_CUTOFF;
        if k.im > 0.0 {
            let den = 1.0 - (4.0 * ik * d).exp();
            let mut b =
                -2.0 * ik * (ik * (x + d)).exp() * g + 2.0 * ik * (ik * (x + 3.0 * d)).exp() * h;
            if with_u0 {
                let s1 = self.rule.eval(k, x + 4.0 * d, -1.0);
                let s2 = self.rule.eval(k, x + 2.0 * d, 1.0);
                b += (-k2 * self.t).exp() * (s1 - s2);
            }
            b / den
        } else {
            let den = 1.0 - (-4.0 * ik * d).exp();
            let mut b =
                -2.0 * ik * (ik * (x - 3.0 * d)).exp() * g + 2.0 * ik * (ik * (x - d)).exp() * h;
            if with_u0 {
                let s3 = self.rule.eval(k, x - 4.0 * d, -1.0);
                let s4 = self.rule.eval(k, x - 2.0 * d, 1.0);
                b += (-k2 * self.t).exp() * (s3 - s4);
            }
            -b / den
        }
    }
}

/// `u(x, t)` from the transform representation, `|x| ≤ D`, `t > 0`.
pub fn utm_solve(p: &UtmProblem, x: f64, t: f64) -> Result<UtmValue> {
    check_point(p, x, t)?;
    Prepared::new(p, t).solve(x)
}

/// `u(x_i, t)` for many `x` sharing the `t`-dependent setup.
pub fn utm_snapshot(p: &UtmProblem, xs: &[f64], t: f64) -> Result<Vec<UtmValue>> {
    for &x in xs {
        check_point(p, x, t)?;
    }
    let prepared = Prepared::new(p, t);
    xs.par_iter().map(|&x| prepared.solve(x)).collect()
}

/// The transform solution on grid nodes at the given times (`t = 0` rows
/// are the initial data).
pub fn sample_utm_field(p: &UtmProblem, grid: &Grid1D, times: &[f64]) -> Result<SolutionField> {
    if (grid.half_width() - p.d).abs() > 1e-12 * p.d {
        return Err(Error::InvalidParams(format!(
            "grid half-width {} differs from D = {}",
            grid.half_width(),
            p.d
        )));
    }
    let nodes = grid.nodes();
    let mut rows = Vec::with_capacity(times.len());
    for &t in times {
        let row = if t == 0.0 {
            nodes.iter().map(|&x| p.u0.eval(x)).collect()
        } else {
            utm_snapshot(p, &nodes, t)?
                .into_iter()
                .map(|v| v.value)
                .collect()
        };
        rows.push(row);
    }
    SolutionField::new(*grid, times.to_vec(), rows)
}

fn check_point(p: &UtmProblem, x: f64, t: f64) -> Result<()> {
    if !(x.abs() <= p.d) {
        return Err(Error::Domain(format!("x = {x} outside [-{0}, {0}]", p.d)));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!(
            "transform solution needs t > 0, got {t}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cauchy::InitialPreset;
    use crate::exact::ExactSolution;
    use crate::signal::Trace;

    #[test]
    fn transform_of_constant() {
        let d = 1.5;
        let one = InitialData::function(|_| 1.0, d);
        for k in [0.3, 2.0, 17.0] {
            let v = u0_hat(&one, Complex64::new(k, 0.0), d).unwrap();
            assert!((v.re - 2.0 * (k * d).sin() / k).abs() < 1e-13);
            assert!(v.im.abs() < 1e-13);
        }
        let odd = InitialData::preset(InitialPreset::Hermite1).unwrap();
        assert!(u0_hat(&odd, Complex64::new(0.0, 0.0), 1.0).unwrap().norm() < 1e-15);
        assert!(matches!(
            u0_hat(&one, Complex64::new(0.0, 800.0), 1.0),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn tabulated_transform_is_exact_for_linear_data() {
        let d = 1.0;
        let lin = InitialData::tabulated(vec![-1.0, 0.2, 1.0], vec![0.0, 1.2, 2.0]).unwrap();
        let smooth = InitialData::function(|x| x + 1.0, 1.0);
        for k in [
            Complex64::new(0.7, 0.0),
            Complex64::new(3.0, 1.0),
            Complex64::new(0.01, -0.02),
        ] {
            let a = u0_hat(&lin, k, d).unwrap();
            let b = u0_hat(&smooth, k, d).unwrap();
            assert!((a - b).norm() < 1e-13, "{a} vs {b}");
        }
    }

    #[test]
    fn contour_orientation() {
        let spec = ContourSpec::new(Half::Upper, 1.0);
        let nodes = spec.nodes(10.0, |_| 1.0);
        assert!(nodes.iter().all(|(k, _)| k.im > 0.0));
        // ∮ dk over the path equals the displacement between its ends
        let total: Complex64 = nodes.iter().map(|(_, w)| w).sum();
        let expected =
            Complex64::from_polar(10.0, PI / 6.0) - Complex64::from_polar(10.0, 5.0 * PI / 6.0);
        assert!((total - expected).norm() < 1e-12);
        let lower = spec.mirrored().nodes(10.0, |_| 1.0);
        let total: Complex64 = lower.iter().map(|(_, w)| w).sum();
        let expected =
            Complex64::from_polar(10.0, -5.0 * PI / 6.0) - Complex64::from_polar(10.0, -PI / 6.0);
        assert!((total - expected).norm() < 1e-12);
    }

    #[test]
    fn eigenmode() {
        let d = 1.0;
        let u0 = InitialData::preset(InitialPreset::SineMode { d, n: 1 }).unwrap();
        let p = UtmProblem::new(d, u0, TimeSignal::Zero, TimeSignal::Zero).unwrap();
        let k = PI / (2.0 * d);
        for (x, t) in [(0.0, 0.1), (0.5, 0.5), (-0.9, 2.0)] {
            let v = utm_solve(&p, x, t).unwrap();
            let exact = (-k * k * t).exp() * (k * (x + d)).sin();
            assert!(
                (v.value - exact).abs() < 1e-8,
                "({x}, {t}): {} vs {exact}",
                v.value
            );
            assert!(v.imag_residual < 1e-8);
        }
    }

    #[test]
    fn zero_data_gives_zero() {
        let p = UtmProblem::new(
            1.0,
            InitialData::Preset(InitialPreset::Zero),
            TimeSignal::Zero,
            TimeSignal::Zero,
        )
        .unwrap();
        assert_eq!(utm_solve(&p, 0.3, 1.0).unwrap().value, 0.0);
    }

    #[test]
    fn consonant_closed_form() {
        let e = ExactSolution::Hermite1;
        let u0 = InitialData::preset(InitialPreset::Hermite1).unwrap();
        let p = UtmProblem::new(
            1.0,
            u0,
            TimeSignal::exact(e.clone(), -1.0, Trace::Value),
            TimeSignal::exact(e.clone(), 1.0, Trace::Value),
        )
        .unwrap();
        for (x, t) in [(0.3, 0.1), (-0.7, 1.0), (0.95, 2.0), (-0.99, 0.05)] {
            let v = utm_solve(&p, x, t).unwrap();
            let exact = e.value(x, t).unwrap();
            assert!(
                (v.value - exact).abs() < 1e-8,
                "({x}, {t}): {} vs {exact}",
                v.value
            );
            assert!(v.imag_residual < 1e-8, "residual {}", v.imag_residual);
        }
    }
}
