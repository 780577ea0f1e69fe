//! Special functions behind the self-similar profiles: Kummer's confluent
//! hypergeometric function, real-index Hermite functions, the imaginary error
//! function and log-gamma.
//!
//! Everything here is a pure function of its arguments. Arguments of the
//! hypergeometric functions are real and non-negative (they are always squares
//! of a similarity variable in this crate).

mod erfi;
mod gamma;
mod hermite;
mod kummer;

pub use erfi::{dawson, erfi, ERFI_MAX_ARG};
pub use gamma::{log_gamma, recip_gamma, LogGamma};
pub use hermite::{hermite_nu, hermite_nu_scaled, hermite_poly, HERMITE_MAX_ARG_SQ};
pub use kummer::{
    kummer_1f1, kummer_1f1_scaled, kummer_asymptotic, kummer_series, KummerParams,
    KUMMER_MAX_TERMS, KUMMER_Z_SWITCH,
};

/// Compensated (Kahan) accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub(crate) fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum
    }
}

/// True when `x` is 0, -1, -2, ...
pub(crate) fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}
