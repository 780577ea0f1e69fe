//! Self-similar solutions of the one-dimensional diffusion equation
//! `u_t = u_xx` and solvers for its initial-boundary value problems on
//! `[-D, D]`.
//!
//! - [`specfun`]: Kummer ₁F₁, Hermite functions of real order, `erfi`.
//! - [`selfsim`]: scaling frames, stationary profiles and their mapping to
//!   physical solutions.
//! - [`cauchy`]: the whole-line problem by heat-kernel quadrature.
//! - [`ibvp`]: Crank–Nicolson with Dirichlet, Neumann and Robin ends.
//! - [`series`], [`utm`]: the sine-series and unified-transform
//!   representations of the Dirichlet problem.
//! - [`analysis`]: decay fits, the consonant/homogeneous split and the
//!   underflow audit.
//!
//! ```
//! use selfsim_heat::exact::ExactSolution;
//! use selfsim_heat::grid::Grid1D;
//! use selfsim_heat::ibvp::{consonant_problem, crank_nicolson_solve};
//! use selfsim_heat::signal::BoundaryKind;
//!
//! let grid = Grid1D::new(1.0, 101)?;
//! let exact = ExactSolution::Hermite1;
//! let p = consonant_problem(&exact, grid, BoundaryKind::Dirichlet, 1.0, 1e-3)?;
//! let field = crank_nicolson_solve(&p)?;
//! assert!(field.max_error(|x, t| exact.value(x, t))? < 1e-4);
//! # Ok::<(), selfsim_heat::Error>(())
//! ```

pub mod analysis;
pub mod cauchy;
pub mod error;
pub mod exact;
pub mod grid;
pub mod ibvp;
pub mod quadrature;
pub mod selfsim;
pub mod series;
pub mod signal;
pub mod specfun;
pub mod utm;

pub use error::{Error, Result};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod book_introduction {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/special-functions.md")]
mod book_special_functions {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/self-similarity.md")]
mod book_self_similarity {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cauchy.md")]
mod book_cauchy {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/finite-differences.md")]
mod book_finite_differences {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/series-and-transforms.md")]
mod book_series_and_transforms {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/decay-analysis.md")]
mod book_decay_analysis {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}
