//! Weighted norms, gradient seminorms, energies, and the wall average.
//!
//! The squared state norm of the limit problem is
//! `c1 rho1 ||u||^2 + c2 rho2 ||v||^2 + c z^2`, the wall problem replaces the
//! point-mass term by `(c/2eps) ||z_eps||^2`. Gradient seminorms weight the
//! squared first derivatives by the conductivities; the limit seminorm has no
//! point-mass contribution because `z` is a scalar.
//!
//! L2 quantities use the trapezoidal rule, which reproduces the lumped mass
//! matrix of the solvers exactly; gradient quantities use cell differences,
//! exact for piecewise-linear states. Both are second order on smooth data.

use crate::error::{Error, Result};
use crate::mesh::{EpsMesh, LimitMesh};
use crate::state::{EpsState, LimitState};
use crate::params::PhysicalParams;

/// Composite trapezoid of `f(node index)` over `n` uniform cells of width `h`.
pub(crate) fn trapz<F: Fn(usize) -> f64>(n: usize, h: f64, f: F) -> f64 {
    let mut acc = 0.5 * (f(0) + f(n));
    for i in 1..n {
        acc += f(i);
    }
    acc * h
}

/// Sum of squared cell slopes times cell width: the exact squared L2 norm of
/// the derivative of the piecewise-linear interpolant.
pub(crate) fn grad_sq<F: Fn(usize) -> f64>(n: usize, h: f64, f: F) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        let d = f(i + 1) - f(i);
        acc += d * d;
    }
    acc / h
}

fn check_limit(y: &LimitState, m: &LimitMesh) -> Result<()> {
    if !y.conforms(m) {
        return Err(Error::DimensionMismatch {
            context: "limit state vs mesh",
            expected: m.dof_count(),
            got: y.dof().len(),
        });
    }
    Ok(())
}

fn check_eps(y: &EpsState, m: &EpsMesh) -> Result<()> {
    if !y.conforms(m) {
        return Err(Error::DimensionMismatch {
            context: "eps state vs mesh",
            expected: m.dof_count(),
            got: y.dof().len(),
        });
    }
    Ok(())
}

/// Squared weighted L2 norm of a limit state.
pub fn h_norm_sq_limit(y: &LimitState, p: &PhysicalParams, m: &LimitMesh) -> Result<f64> {
    check_limit(y, m)?;
    let rod1 = trapz(m.n1(), m.h1(), |i| y.u(i) * y.u(i));
    let rod2 = trapz(m.n2(), m.h2(), |j| y.v(j) * y.v(j));
    Ok(p.c1 * p.rho1 * rod1 + p.c2 * p.rho2 * rod2 + p.c * y.z() * y.z())
}

/// Squared weighted L2 norm of a wall state, wall term weighted by `c/2eps`.
pub fn h_norm_sq_eps(y: &EpsState, p: &PhysicalParams, m: &EpsMesh) -> Result<f64> {
    check_eps(y, m)?;
    let rod1 = trapz(m.n1(), m.h1(), |i| y.u(i) * y.u(i));
    let rod2 = trapz(m.n2(), m.h2(), |j| y.v(j) * y.v(j));
    let wall = trapz(m.nw(), m.hw(), |i| y.w(i) * y.w(i));
    Ok(p.c1 * p.rho1 * rod1 + p.c2 * p.rho2 * rod2 + p.c / (2.0 * m.eps()) * wall)
}

/// Squared gradient seminorm of a limit state.
pub fn w_seminorm_sq_limit(y: &LimitState, p: &PhysicalParams, m: &LimitMesh) -> Result<f64> {
    check_limit(y, m)?;
    let rod1 = grad_sq(m.n1(), m.h1(), |i| y.u(i));
    let rod2 = grad_sq(m.n2(), m.h2(), |j| y.v(j));
    Ok(p.k1 * rod1 + p.k2 * rod2)
}

/// Squared gradient seminorm of a wall state, including the wall term.
pub fn w_seminorm_sq_eps(y: &EpsState, p: &PhysicalParams, m: &EpsMesh) -> Result<f64> {
    check_eps(y, m)?;
    let rod1 = grad_sq(m.n1(), m.h1(), |i| y.u(i));
    let rod2 = grad_sq(m.n2(), m.h2(), |j| y.v(j));
    let wall = grad_sq(m.nw(), m.hw(), |i| y.w(i));
    Ok(p.k1 * rod1 + p.k2 * rod2 + p.k * wall)
}

/// Squared plain L2 norm of the wall field (no weight).
pub fn wall_l2_sq(y: &EpsState, m: &EpsMesh) -> Result<f64> {
    check_eps(y, m)?;
    Ok(trapz(m.nw(), m.hw(), |i| y.w(i) * y.w(i)))
}

/// Wall average `(1/2eps) * integral of z_eps over the wall`.
///
/// Satisfies the discrete Cauchy-Schwarz bound
/// `|g_eps| <= ||z_eps||_{L2(wall)} / sqrt(2 eps)`.
pub fn g_eps(y: &EpsState, m: &EpsMesh) -> Result<f64> {
    check_eps(y, m)?;
    Ok(trapz(m.nw(), m.hw(), |i| y.w(i)) / (2.0 * m.eps()))
}

/// Energy `E = ||y||_H^2 / 2` of a limit state.
pub fn energy_limit(y: &LimitState, p: &PhysicalParams, m: &LimitMesh) -> Result<f64> {
    Ok(0.5 * h_norm_sq_limit(y, p, m)?)
}

/// Energy `E_eps = ||y_eps||_{H_eps}^2 / 2` of a wall state.
pub fn energy_eps(y: &EpsState, p: &PhysicalParams, m: &EpsMesh) -> Result<f64> {
    Ok(0.5 * h_norm_sq_eps(y, p, m)?)
}
