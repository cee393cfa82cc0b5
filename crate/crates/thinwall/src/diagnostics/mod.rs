//! Quantitative verification instruments: the compactly supported test
//! functions, weak-form pairings for both problems, term-by-term gaps
//! between them, and energy dissipation residuals.

mod dissipation;
mod pairing;
mod testfn;

pub use dissipation::dissipation_residual;
pub use pairing::{
    pairing_gap, weak_pairing_eps, weak_pairing_limit, GapRecord, PairingReport, TERM_NAMES,
};
pub use testfn::{builtin_test_functions, TestFunction};
