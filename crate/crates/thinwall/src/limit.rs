//! Time integration of the limit hybrid system: heat conduction on the two
//! rods coupled through the point-mass balance `c dz/dt = k2 v'(0) - k1 u'(0)`
//! at the shared interface node.

use crate::error::{Error, Result};
use crate::mesh::LimitMesh;
use crate::norms::{energy_limit, w_seminorm_sq_limit};
use crate::params::PhysicalParams;
use crate::resolvent::ResolventData;
use crate::state::LimitState;
use crate::system::{assemble_limit_system, BandedSystem, ThetaScheme, ThetaStepper};
use crate::trajectory::Trajectory;
use crate::tridiag::TridiagFactor;

pub type LimitTrajectory = Trajectory<LimitState>;

/// One theta step. Factors the left-hand operator on every call; use
/// [`evolve_limit`] for time loops, which factors once.
pub fn step_theta(
    y: &LimitState,
    dt: f64,
    scheme: ThetaScheme,
    sys: &BandedSystem,
) -> Result<LimitState> {
    if y.dof().len() != sys.n() {
        return Err(Error::DimensionMismatch {
            context: "limit state vs system",
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

/// Evolves `y0` to time `t_end` with uniform steps of nominal size `dt`,
/// sampling energy and seminorm at every step. The step count is
/// `ceil(t_end / dt)`, so the trajectory always covers `[0, t_end]`.
pub fn evolve_limit(
    y0: &LimitState,
    dt: f64,
    t_end: f64,
    scheme: ThetaScheme,
    p: &PhysicalParams,
    m: &LimitMesh,
) -> Result<LimitTrajectory> {
    assert!(dt > 0.0, "dt must be positive");
    assert!(t_end >= dt, "horizon shorter than one step");
    if !y0.conforms(m) {
        return Err(Error::DimensionMismatch {
            context: "limit state vs mesh",
            expected: m.dof_count(),
            got: y0.dof().len(),
        });
    }
    let sys = assemble_limit_system(p, m);
    let stepper = ThetaStepper::new(&sys, dt, scheme)?;
    let n_steps = ((t_end / dt) - 1e-9).ceil().max(1.0) as usize;

    let mut traj = Trajectory::new(scheme);
    let mut state = y0.clone();
    traj.push(
        0.0,
        state.clone(),
        energy_limit(&state, p, m)?,
        w_seminorm_sq_limit(&state, p, m)?,
    );
    let mut dof = state.dof().to_vec();
    let mut scratch = Vec::new();
    for step in 1..=n_steps {
        stepper.advance(&mut dof, &mut scratch);
        state = LimitState::from_dof(dof.clone(), m);
        traj.push(
            step as f64 * dt,
            state.clone(),
            energy_limit(&state, p, m)?,
            w_seminorm_sq_limit(&state, p, m)?,
        );
    }
    Ok(traj)
}

/// Solves the discrete steady equation `A_h y = rhs` with the assembled
/// operators, i.e. `K y = -L` where `L` is the lumped load of the sources.
/// The stiffness is positive definite, so the solution is unique.
pub fn solve_steady_discrete(
    sys: &BandedSystem,
    d: &ResolventData,
    p: &PhysicalParams,
    m: &LimitMesh,
) -> Result<LimitState> {
    if d.f.len() != m.n1() + 1 || d.g.len() != m.n2() + 1 {
        return Err(Error::DimensionMismatch {
            context: "steady rhs vs mesh",
            expected: m.n1() + m.n2() + 2,
            got: d.f.len() + d.g.len(),
        });
    }
    if sys.n() != m.dof_count() {
        return Err(Error::DimensionMismatch {
            context: "system vs mesh",
            expected: m.dof_count(),
            got: sys.n(),
        });
    }
    let (h1, h2) = (m.h1(), m.h2());
    let iface = m.n1() - 1;
    let mut load = vec![0.0; sys.n()];
    for i in 1..m.n1() {
        load[i - 1] = p.c1 * p.rho1 * h1 * d.f[i];
    }
    load[iface] = p.c * d.h
        + 0.5 * (p.c1 * p.rho1 * h1 * d.f[m.n1()] + p.c2 * p.rho2 * h2 * d.g[0]);
    for j in 1..m.n2() {
        load[iface + j] = p.c2 * p.rho2 * h2 * d.g[j];
    }
    for v in load.iter_mut() {
        *v = -*v;
    }
    let factor = TridiagFactor::new(&sys.k_off, &sys.k_diag, &sys.k_off)?;
    factor.solve_in_place(&mut load);
    Ok(LimitState::from_dof(load, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::h_norm_sq_limit;
    use crate::resolvent::steady_closed_form;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn unit(n: usize) -> (PhysicalParams, LimitMesh) {
        let p = PhysicalParams::unit();
        let m = LimitMesh::new(&p, n, n).unwrap();
        (p, m)
    }

    fn sine_state(m: &LimitMesh) -> LimitState {
        LimitState::from_profiles(m, |x| (PI * x).sin(), |x| (PI * x).sin(), 0.0).unwrap()
    }

    #[test]
    fn zero_is_a_fixed_point() {
        let (p, m) = unit(8);
        let sys = assemble_limit_system(&p, &m);
        let y = LimitState::zero(&m);
        for scheme in [ThetaScheme::BackwardEuler, ThetaScheme::CrankNicolson] {
            let next = step_theta(&y, 0.05, scheme, &sys).unwrap();
            assert!(next.dof().iter().all(|v| *v == 0.0));
        }
    }

    #[test]
    fn antisymmetric_sine_keeps_point_mass_inert() {
        // With symmetric parameters the flux difference k2 v'(0) - k1 u'(0)
        // vanishes identically for data odd under x -> -x, so z stays 0 and
        // each rod decays like exp(-pi^2 t) sin(pi x).
        let (p, m) = unit(64);
        let y0 = sine_state(&m);
        let dt = 1e-3;
        let t_end = 0.05;
        let traj = evolve_limit(&y0, dt, t_end, ThetaScheme::CrankNicolson, &p, &m).unwrap();
        for s in traj.states() {
            assert!(s.z().abs() < 1e-12, "z drifted to {}", s.z());
        }
        let last = traj.state(traj.len() - 1);
        let decay = (-PI * PI * t_end).exp();
        let mut err: f64 = 0.0;
        for i in 0..=m.n1() {
            err = err.max((last.u(i) - decay * (PI * m.x1(i)).sin()).abs());
        }
        assert!(err < 5e-4, "sup error {err}");
    }

    #[test]
    fn sine_decay_converges_at_second_order() {
        let p = PhysicalParams::unit();
        let t_end = 0.1;
        let mut errs = Vec::new();
        for n in [40usize, 80, 160] {
            let m = LimitMesh::new(&p, n, n).unwrap();
            let y0 = sine_state(&m);
            let dt = 1.0 / n as f64; // dt = h
            let traj = evolve_limit(&y0, dt, t_end, ThetaScheme::CrankNicolson, &p, &m).unwrap();
            let last = traj.state(traj.len() - 1);
            let decay = (-PI * PI * t_end).exp();
            let mut err: f64 = 0.0;
            for i in 0..=m.n1() {
                err = err.max((last.u(i) - decay * (PI * m.x1(i)).sin()).abs());
            }
            for j in 0..=m.n2() {
                err = err.max((last.v(j) - decay * (PI * m.x2(j)).sin()).abs());
            }
            errs.push(err);
        }
        for pair in errs.windows(2) {
            let order = (pair[0] / pair[1]).log2();
            assert!(
                (order - 2.0).abs() < 0.3,
                "observed order {order}, errors {errs:?}"
            );
        }
    }

    #[test]
    fn backward_euler_energy_monotone_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let raw = crate::params::RawParams {
                c1: rng.random_range(0.2..5.0),
                rho1: rng.random_range(0.2..5.0),
                k1: rng.random_range(0.2..5.0),
                c2: rng.random_range(0.2..5.0),
                rho2: rng.random_range(0.2..5.0),
                k2: rng.random_range(0.2..5.0),
                c: rng.random_range(0.2..5.0),
                k: rng.random_range(0.2..5.0),
                l1: rng.random_range(0.5..2.0),
                l2: rng.random_range(0.5..2.0),
            };
            let p = crate::params::validate_params(&raw).unwrap();
            let m = LimitMesh::new(&p, 16, 24).unwrap();
            let mut y0 = LimitState::zero(&m);
            for v in y0.dof_mut() {
                *v = rng.random_range(-1.0..1.0);
            }
            let dt = rng.random_range(1e-3..0.05);
            let traj =
                evolve_limit(&y0, dt, 10.0 * dt, ThetaScheme::BackwardEuler, &p, &m).unwrap();
            for pair in traj.energy().windows(2) {
                assert!(
                    pair[1] <= pair[0] * (1.0 + 1e-12),
                    "energy grew: {} -> {}",
                    pair[0],
                    pair[1]
                );
            }
        }
    }

    #[test]
    fn steady_solve_of_zero_sources_is_zero() {
        // trivial null space: the stiffness is positive definite
        let (p, m) = unit(16);
        let sys = assemble_limit_system(&p, &m);
        let d = ResolventData::point_source(&m, 0.0).unwrap();
        let y = solve_steady_discrete(&sys, &d, &p, &m).unwrap();
        assert!(y.dof().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn steady_discrete_matches_oracle_for_point_source() {
        // both sides are exact for piecewise-linear steady states
        let (p, m) = unit(128);
        let sys = assemble_limit_system(&p, &m);
        let d = ResolventData::point_source(&m, 1.0).unwrap();
        let discrete = solve_steady_discrete(&sys, &d, &p, &m).unwrap();
        let oracle = steady_closed_form(&d, &p, &m).unwrap();
        let mut err: f64 = 0.0;
        for (a, b) in discrete.dof().iter().zip(oracle.dof()) {
            err = err.max((a - b).abs());
        }
        assert!(err < 1e-12, "max error {err}");
        assert!((discrete.z() + 0.5).abs() < 1e-12);
    }

    #[test]
    fn steady_discrete_converges_monotonically_to_oracle() {
        // generic smooth sources, so the comparison carries real error
        let p = PhysicalParams::unit();
        let mut errs = Vec::new();
        for n in [32usize, 64, 128, 256] {
            let m = LimitMesh::new(&p, n, n).unwrap();
            let sys = assemble_limit_system(&p, &m);
            let d =
                ResolventData::sample(&m, |x| (2.0 * x).cos(), |x| x * (1.0 - x), 0.4).unwrap();
            let discrete = solve_steady_discrete(&sys, &d, &p, &m).unwrap();
            let oracle = steady_closed_form(&d, &p, &m).unwrap();
            let mut err: f64 = 0.0;
            for (a, b) in discrete.dof().iter().zip(oracle.dof()) {
                err = err.max((a - b).abs());
            }
            errs.push(err);
        }
        for pair in errs.windows(2) {
            assert!(pair[1] < pair[0], "not monotone: {errs:?}");
        }
    }

    #[test]
    fn mirror_symmetry_maps_solutions_to_solutions() {
        // Swapping the rod parameters and reflecting x -> -x must commute
        // with the evolution: field-level equality after reflection.
        let raw = crate::params::RawParams {
            c1: 2.0,
            rho1: 0.5,
            k1: 3.0,
            c2: 1.2,
            rho2: 2.5,
            k2: 0.8,
            c: 1.7,
            k: 1.0,
            l1: 1.25,
            l2: 0.75,
        };
        let p = crate::params::validate_params(&raw).unwrap();
        let m = LimitMesh::new(&p, 20, 12).unwrap();
        let u0 = |x: f64| 0.3 * (x + p.l1) / p.l1;
        let v0 = |x: f64| 0.3 * (p.l2 - x) * (1.0 + x) / p.l2;
        let y0 = LimitState::from_profiles(&m, u0, v0, 0.3).unwrap();

        let ps = p.swapped();
        let ms = LimitMesh::new(&ps, m.n2(), m.n1()).unwrap();
        let mirrored =
            LimitState::from_profiles(&ms, |x| v0(-x), |x| u0(-x), 0.3).unwrap();

        let dt = 2e-3;
        let t_end = 0.05;
        let a = evolve_limit(&y0, dt, t_end, ThetaScheme::BackwardEuler, &p, &m).unwrap();
        let b = evolve_limit(&mirrored, dt, t_end, ThetaScheme::BackwardEuler, &ps, &ms).unwrap();
        let ya = a.state(a.len() - 1);
        let yb = b.state(b.len() - 1);
        for i in 0..=m.n1() {
            assert!(
                (ya.u(i) - yb.v(m.n1() - i)).abs() < 1e-12,
                "mirror mismatch at rod-1 node {i}"
            );
        }
        for j in 0..=m.n2() {
            assert!((ya.v(j) - yb.u(m.n2() - j)).abs() < 1e-12);
        }
        assert!((h_norm_sq_limit(ya, &p, &m).unwrap()
            - h_norm_sq_limit(yb, &ps, &ms).unwrap())
        .abs()
            < 1e-12);
    }

    #[test]
    fn crank_nicolson_dissipation_identity_is_exact_for_midpoint_state() {
        // (E+ - E)/dt = -W(midpoint) holds to round-off by construction
        let (p, m) = unit(32);
        let sys = assemble_limit_system(&p, &m);
        let y = sine_state(&m);
        let dt = 5e-3;
        let next = step_theta(&y, dt, ThetaScheme::CrankNicolson, &sys).unwrap();
        let e0 = energy_limit(&y, &p, &m).unwrap();
        let e1 = energy_limit(&next, &p, &m).unwrap();
        let mid: Vec<f64> = y
            .dof()
            .iter()
            .zip(next.dof())
            .map(|(a, b)| 0.5 * (a + b))
            .collect();
        let w_mid = sys.stiffness_quad(&mid);
        assert!(
            ((e1 - e0) / dt + w_mid).abs() < 1e-10,
            "identity residual {}",
            (e1 - e0) / dt + w_mid
        );
    }
}
