//! Time integration of the wall problem: three heat equations with wall
//! density `c/(2 eps)`, temperature continuity and flux matching at the
//! shared nodes `x = -eps` and `x = eps`.

use crate::error::{Error, Result};
use crate::mesh::EpsMesh;
use crate::norms::{energy_eps, w_seminorm_sq_eps};
use crate::params::PhysicalParams;
use crate::state::EpsState;
use crate::system::{assemble_eps_system, BandedSystem, ThetaScheme, ThetaStepper};
use crate::trajectory::Trajectory;

pub type EpsTrajectory = Trajectory<EpsState>;

/// Restricts limit initial data to the wall geometry.
///
/// The rod profiles are sampled on their shortened grids and the wall is
/// filled with the linear interpolant between `u0(-eps)` and `v0(eps)`. For
/// Lipschitz data with `u0(0) = v0(0) = z0` this keeps both the scaled state
/// norm and the gradient seminorm bounded uniformly in `eps` (the wall slope
/// `(v0(eps) - u0(-eps)) / 2 eps` stays bounded), while the wall average
/// tends to `z0`.
pub fn lift_initial_data<F, G>(u0: F, v0: G, z0: f64, m: &EpsMesh) -> Result<EpsState>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let scale = 1.0 + z0.abs();
    let tol = 1e-9 * scale;
    let bl = u0(m.x1(0));
    let br = v0(m.x2(m.n2()));
    if bl.abs() > tol || br.abs() > tol {
        return Err(Error::IncompatibleData(format!(
            "boundary values must vanish: u0(-L1) = {bl}, v0(L2) = {br}"
        )));
    }
    let uc = u0(0.0);
    let vc = v0(0.0);
    if (uc - z0).abs() > tol || (vc - z0).abs() > tol {
        return Err(Error::IncompatibleData(format!(
            "continuity requires u0(0) = v0(0) = z0, got {uc}, {vc}, {z0}"
        )));
    }
    let left = u0(m.x1(m.n1()));
    let right = v0(m.x2(0));
    let nw = m.nw() as f64;
    let mut dof = Vec::with_capacity(m.dof_count());
    for i in 1..m.n1() {
        dof.push(u0(m.x1(i)));
    }
    for i in 0..=m.nw() {
        let lambda = i as f64 / nw;
        dof.push((1.0 - lambda) * left + lambda * right);
    }
    for j in 1..m.n2() {
        dof.push(v0(m.x2(j)));
    }
    Ok(EpsState::from_dof(dof, m))
}

/// One theta step of the wall problem; see [`crate::limit::step_theta`].
pub fn step_theta_eps(
    y: &EpsState,
    dt: f64,
    scheme: ThetaScheme,
    sys: &BandedSystem,
) -> Result<EpsState> {
    if y.dof().len() != sys.n() {
        return Err(Error::DimensionMismatch {
            context: "eps state vs system",
            expected: sys.n(),
            got: y.dof().len(),
        });
    }
    let stepper = ThetaStepper::new(sys, dt, scheme)?;
    let mut dof = y.dof().to_vec();
    let mut scratch = Vec::new();
    stepper.advance(&mut dof, &mut scratch);
    Ok(y.with_dof(dof))
}

/// Evolves the wall problem; energies use the `eps`-weighted state norm.
pub fn evolve_eps(
    y0: &EpsState,
    dt: f64,
    t_end: f64,
    scheme: ThetaScheme,
    p: &PhysicalParams,
    m: &EpsMesh,
) -> Result<EpsTrajectory> {
    assert!(dt > 0.0, "dt must be positive");
    assert!(t_end >= dt, "horizon shorter than one step");
    if !y0.conforms(m) {
        return Err(Error::DimensionMismatch {
            context: "eps state vs mesh",
            expected: m.dof_count(),
            got: y0.dof().len(),
        });
    }
    let sys = assemble_eps_system(p, m);
    let stepper = ThetaStepper::new(&sys, dt, scheme)?;
    let n_steps = ((t_end / dt) - 1e-9).ceil().max(1.0) as usize;

    let mut traj = Trajectory::new(scheme);
    let mut state = y0.clone();
    traj.push(
        0.0,
        state.clone(),
        energy_eps(&state, p, m)?,
        w_seminorm_sq_eps(&state, p, m)?,
    );
    let mut dof = state.dof().to_vec();
    let mut scratch = Vec::new();
    for step in 1..=n_steps {
        stepper.advance(&mut dof, &mut scratch);
        state = EpsState::from_dof(dof.clone(), m);
        traj.push(
            step as f64 * dt,
            state.clone(),
            energy_eps(&state, p, m)?,
            w_seminorm_sq_eps(&state, p, m)?,
        );
    }
    Ok(traj)
}
