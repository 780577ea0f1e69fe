//! Decay-rate fits, the split of compatible problems into a consonant and a
//! homogeneous part, and the check for boundary data lost below rounding.

mod decomposition;
mod fit;

pub use decomposition::{
    build_decomposition, compatibility_c_star, decompose, underflow_audit, Decomposition,
    UnderflowReport, AUDIT_SAMPLES, UNDERFLOW_FACTOR,
};
pub use fit::{
    classify_decay, classify_decay_in, fit_algebraic, fit_algebraic_search, fit_exponential,
    fit_window_times, DecayFit, DecayKind, FitWindow, ASYMPTOTIC_FACTOR, MIN_FIT_SAMPLES,
    RECOMMENDED_SAMPLES, R_SQUARED_THRESHOLD,
};
