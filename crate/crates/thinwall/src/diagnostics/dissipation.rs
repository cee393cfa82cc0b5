//! Discrete energy dissipation residuals.
//!
//! The continuous balance `dE/dt = -|y|_W^2` has a per-step discrete mirror:
//! `r_n = (E_{n+1} - E_n)/dt + W` with the seminorm sample taken at the
//! scheme's consistency point, the interval midpoint for Crank-Nicolson
//! (interpolated as the average of the two endpoint samples) and the right
//! endpoint for backward Euler.

use crate::error::{Error, Result};
use crate::system::ThetaScheme;
use crate::trajectory::Trajectory;

/// Residual time series `r_n`, one value per step of the trajectory.
pub fn dissipation_residual<S>(traj: &Trajectory<S>) -> Result<Vec<f64>> {
    if traj.len() < 2 {
        return Err(Error::TooFewSamples);
    }
    let times = traj.times();
    let energy = traj.energy();
    let seminorm = traj.seminorm_sq();
    let mut out = Vec::with_capacity(traj.len() - 1);
    for n in 0..traj.len() - 1 {
        let dt = times[n + 1] - times[n];
        let w = match traj.scheme() {
            ThetaScheme::CrankNicolson => 0.5 * (seminorm[n] + seminorm[n + 1]),
            ThetaScheme::BackwardEuler => seminorm[n + 1],
        };
        out.push((energy[n + 1] - energy[n]) / dt + w);
    }
    Ok(out)
}
