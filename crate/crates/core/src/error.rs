use thiserror::Error;

/// Errors reported by the solvers and special functions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// The leading asymptotic term of 1F1 vanishes because Γ(α) has a pole.
    #[error("degenerate leading asymptotic term: alpha = {alpha} is a nonpositive integer")]
    DegenerateLeadingTerm { alpha: f64 },

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("gamma function pole at x = {0}")]
    Pole(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "unsupported second-branch solution for nu = {0} (only nu = 0 and nu = 2 are available)"
    )]
    UnsupportedBranch(f64),

    #[error("profile is not self-similar: {0}")]
    NotSelfSimilar(String),

    #[error("Robin coefficient is singular at t = {t}: profile value {value:e} at the boundary")]
    RobinSingular { t: f64, value: f64 },

    #[error("contour quadrature failed: imaginary residual {residual:e} exceeds {limit:e}")]
    Contour { residual: f64, limit: f64 },

    #[error("adaptive quadrature did not converge on [{a}, {b}] (error estimate {estimate:e})")]
    Quadrature { a: f64, b: f64, estimate: f64 },

    #[error("time series has a non-positive magnitude at t = {0}")]
    NonPositiveValues(f64),

    #[error("fit window holds {found} samples, at least {required} are needed")]
    WindowTooShort { found: usize, required: usize },

    #[error("fit window starts at {t_min}, which is not in the asymptotic regime (needs t_min >= {required})")]
    WindowNotAsymptotic { t_min: f64, required: f64 },

    #[error("division by zero: {0}")]
    DivideByZero(String),

    #[error("singular tridiagonal system at row {0}")]
    SingularSystem(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
