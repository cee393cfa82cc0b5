//! Numerical laboratory for heat conduction in two rods joined by a thin
//! wall of width `2*eps` and density `1/(2*eps)`, together with the limiting
//! system in which the wall degenerates to a point mass with ODE dynamics.
//!
//! The crate provides
//!
//! * the wall problem and the point-mass limit problem, both discretized
//!   with lumped piecewise-linear elements and integrated by a theta scheme,
//! * an exact closed-form steady-state solver used as an independent oracle
//!   for the discrete operators,
//! * weighted norms, energies, and the wall-average functional,
//! * weak-form pairing diagnostics that quantify how the wall solutions
//!   approach the point-mass solution as `eps -> 0`,
//! * a config-file driven harness with CSV output.

pub mod config;
pub mod csv_io;
pub mod diagnostics;
pub mod eps;
pub mod error;
pub mod limit;
pub mod mesh;
pub mod norms;
pub mod params;
pub mod presets;
pub mod resolvent;
pub mod state;
pub mod sweep;
pub mod system;
pub mod trajectory;
pub mod tridiag;

pub use error::{Error, Result};
pub use params::{validate_params, PhysicalParams, RawParams};
pub use system::ThetaScheme;
