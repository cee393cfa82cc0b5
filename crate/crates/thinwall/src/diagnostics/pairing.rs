//! Weak-form pairings of computed trajectories against test functions.
//!
//! For the limit problem the weak form reads
//!
//! ```text
//! int c1 rho1 u0 phi(0,.) + int c2 rho2 v0 phi(0,.) + c z0 phi(0,0)
//!   = - int_t { int c1 rho1 u phi_dot + int c2 rho2 v phi_dot + c z phi_dot(t,0) }
//!     + int_t { int k1 u' phi' + int k2 v' phi' }
//! ```
//!
//! and the wall problem replaces the three point-mass terms by wall integrals
//! weighted with `c/(2 eps)` and adds the wall gradient term
//! `int k z_eps' phi'`. Every term is evaluated by trapezoid quadrature in
//! space and time on the trajectory's own grid, with gradients paired at the
//! cell midpoints; the diagnostics are a pure function of the computed
//! trajectory. Time integrals truncate at the support bound, which is exact
//! because the test functions vanish beyond it.

use crate::error::{Error, Result};
use crate::mesh::{EpsMesh, LimitMesh};
use crate::norms::trapz;
use crate::params::PhysicalParams;
use crate::state::{EpsState, LimitState};
use crate::trajectory::Trajectory;

use super::testfn::TestFunction;

/// Term labels in report order. The wall problem carries all nine; in limit
/// reports the wall gradient term is identically zero (the limit weak form
/// has no counterpart, and the matching gap measures the decay of the wall
/// gradient term itself).
pub const TERM_NAMES: [&str; 9] = [
    "init_u",
    "init_v",
    "init_point",
    "dot_u",
    "dot_v",
    "dot_point",
    "grad_u",
    "grad_v",
    "grad_wall",
];

/// Evaluated weak-form terms for one trajectory and one test function.
#[derive(Debug, Clone, PartialEq)]
pub struct PairingReport {
    pub test_fn: String,
    pub init_u: f64,
    pub init_v: f64,
    /// `c z0 phi(0, 0)` for the limit, `(c/2eps) int z0_eps phi(0, .)` for
    /// the wall problem.
    pub init_point: f64,
    pub dot_u: f64,
    pub dot_v: f64,
    pub dot_point: f64,
    pub grad_u: f64,
    pub grad_v: f64,
    /// `int int k z_eps' phi'`; zero in limit reports.
    pub grad_wall: f64,
    /// `|initial terms - (-phi_dot terms + gradient terms)|` as stored.
    pub residual: f64,
}

impl PairingReport {
    /// Terms in [`TERM_NAMES`] order.
    pub fn terms(&self) -> [f64; 9] {
        [
            self.init_u,
            self.init_v,
            self.init_point,
            self.dot_u,
            self.dot_v,
            self.dot_point,
            self.grad_u,
            self.grad_v,
            self.grad_wall,
        ]
    }

    /// Recomputes the weak-form residual from the stored terms.
    pub fn recompute_residual(&self) -> f64 {
        let init = self.init_u + self.init_v + self.init_point;
        let dot = self.dot_u + self.dot_v + self.dot_point;
        let grad = self.grad_u + self.grad_v + self.grad_wall;
        (init + dot - grad).abs()
    }

    fn finalize(mut self) -> Self {
        self.residual = self.recompute_residual();
        self
    }
}

/// Trapezoid weight of sample `n` on a (possibly nonuniform) time grid.
fn time_weight(times: &[f64], n: usize) -> f64 {
    let last = times.len() - 1;
    if last == 0 {
        return 0.0;
    }
    if n == 0 {
        0.5 * (times[1] - times[0])
    } else if n == last {
        0.5 * (times[last] - times[last - 1])
    } else {
        0.5 * (times[n + 1] - times[n - 1])
    }
}

fn check_horizon(times: &[f64], tf: &TestFunction) -> Result<()> {
    if times.len() < 2 {
        return Err(Error::TooFewSamples);
    }
    let have = *times.last().expect("nonempty");
    if have + 1e-9 < tf.t_supp() {
        return Err(Error::HorizonTooShort {
            have,
            need: tf.t_supp(),
        });
    }
    Ok(())
}

/// Evaluates every term of the limit weak form on a trajectory.
pub fn weak_pairing_limit(
    traj: &Trajectory<LimitState>,
    tf: &TestFunction,
    p: &PhysicalParams,
    m: &LimitMesh,
) -> Result<PairingReport> {
    check_horizon(traj.times(), tf)?;
    let y0 = traj.state(0);
    if !y0.conforms(m) {
        return Err(Error::DimensionMismatch {
            context: "limit trajectory vs mesh",
            expected: m.dof_count(),
            got: y0.dof().len(),
        });
    }
    let t0 = traj.times()[0];
    let (a1, a2) = (p.c1 * p.rho1, p.c2 * p.rho2);
    let mut rep = PairingReport {
        test_fn: tf.id().to_string(),
        init_u: a1 * trapz(m.n1(), m.h1(), |i| y0.u(i) * tf.phi(t0, m.x1(i))),
        init_v: a2 * trapz(m.n2(), m.h2(), |j| y0.v(j) * tf.phi(t0, m.x2(j))),
        init_point: p.c * y0.z() * tf.phi(t0, 0.0),
        dot_u: 0.0,
        dot_v: 0.0,
        dot_point: 0.0,
        grad_u: 0.0,
        grad_v: 0.0,
        grad_wall: 0.0,
        residual: 0.0,
    };
    for (n, &t) in traj.times().iter().enumerate() {
        let wt = time_weight(traj.times(), n);
        if t > tf.t_supp() {
            break;
        }
        let s = traj.state(n);
        rep.dot_u += wt * a1 * trapz(m.n1(), m.h1(), |i| s.u(i) * tf.phi_dot(t, m.x1(i)));
        rep.dot_v += wt * a2 * trapz(m.n2(), m.h2(), |j| s.v(j) * tf.phi_dot(t, m.x2(j)));
        rep.dot_point += wt * p.c * s.z() * tf.phi_dot(t, 0.0);
        rep.grad_u += wt * p.k1 * grad_pair(m.n1(), |i| s.u(i), |x| tf.phi_x(t, x), |i| m.x1(i));
        rep.grad_v += wt * p.k2 * grad_pair(m.n2(), |j| s.v(j), |x| tf.phi_x(t, x), |j| m.x2(j));
    }
    Ok(rep.finalize())
}

/// Evaluates every term of the wall weak form on a trajectory.
pub fn weak_pairing_eps(
    traj: &Trajectory<EpsState>,
    tf: &TestFunction,
    p: &PhysicalParams,
    m: &EpsMesh,
) -> Result<PairingReport> {
    check_horizon(traj.times(), tf)?;
    let y0 = traj.state(0);
    if !y0.conforms(m) {
        return Err(Error::DimensionMismatch {
            context: "eps trajectory vs mesh",
            expected: m.dof_count(),
            got: y0.dof().len(),
        });
    }
    let t0 = traj.times()[0];
    let (a1, a2) = (p.c1 * p.rho1, p.c2 * p.rho2);
    let wall_weight = p.c / (2.0 * m.eps());
    let mut rep = PairingReport {
        test_fn: tf.id().to_string(),
        init_u: a1 * trapz(m.n1(), m.h1(), |i| y0.u(i) * tf.phi(t0, m.x1(i))),
        init_v: a2 * trapz(m.n2(), m.h2(), |j| y0.v(j) * tf.phi(t0, m.x2(j))),
        init_point: wall_weight * trapz(m.nw(), m.hw(), |i| y0.w(i) * tf.phi(t0, m.xw(i))),
        dot_u: 0.0,
        dot_v: 0.0,
        dot_point: 0.0,
        grad_u: 0.0,
        grad_v: 0.0,
        grad_wall: 0.0,
        residual: 0.0,
    };
    for (n, &t) in traj.times().iter().enumerate() {
        let wt = time_weight(traj.times(), n);
        if t > tf.t_supp() {
            break;
        }
        let s = traj.state(n);
        rep.dot_u += wt * a1 * trapz(m.n1(), m.h1(), |i| s.u(i) * tf.phi_dot(t, m.x1(i)));
        rep.dot_v += wt * a2 * trapz(m.n2(), m.h2(), |j| s.v(j) * tf.phi_dot(t, m.x2(j)));
        rep.dot_point +=
            wt * wall_weight * trapz(m.nw(), m.hw(), |i| s.w(i) * tf.phi_dot(t, m.xw(i)));
        rep.grad_u += wt * p.k1 * grad_pair(m.n1(), |i| s.u(i), |x| tf.phi_x(t, x), |i| m.x1(i));
        rep.grad_v += wt * p.k2 * grad_pair(m.n2(), |j| s.v(j), |x| tf.phi_x(t, x), |j| m.x2(j));
        rep.grad_wall +=
            wt * p.k * grad_pair(m.nw(), |i| s.w(i), |x| tf.phi_x(t, x), |i| m.xw(i));
    }
    Ok(rep.finalize())
}

/// `sum_cells (dvalue/h) * phi_x(midpoint) * h`: the gradient pairing of the
/// piecewise-linear state against the test function. The cell width cancels.
fn grad_pair<F, G, X>(n: usize, value: F, phi_x: G, node: X) -> f64
where
    F: Fn(usize) -> f64,
    G: Fn(f64) -> f64,
    X: Fn(usize) -> f64,
{
    let mut acc = 0.0;
    for i in 0..n {
        let slope = value(i + 1) - value(i);
        let mid = 0.5 * (node(i) + node(i + 1));
        acc += slope * phi_x(mid);
    }
    acc
}

/// Term-by-term absolute differences between a wall report and its limit
/// counterpart, with the wall terms mapped to the point-mass terms. The wall
/// gradient term maps to zero: the gap records its decay.
#[derive(Debug, Clone, PartialEq)]
pub struct GapRecord {
    pub test_fn: String,
    /// Absolute gaps in [`TERM_NAMES`] order.
    pub gaps: [f64; 9],
}

pub fn pairing_gap(limit: &PairingReport, eps: &PairingReport) -> Result<GapRecord> {
    if limit.test_fn != eps.test_fn {
        return Err(Error::MismatchedTestFunction(
            limit.test_fn.clone(),
            eps.test_fn.clone(),
        ));
    }
    let lt = limit.terms();
    let et = eps.terms();
    let mut gaps = [0.0; 9];
    for (g, (l, e)) in gaps.iter_mut().zip(lt.iter().zip(et.iter())) {
        *g = (e - l).abs();
    }
    Ok(GapRecord {
        test_fn: limit.test_fn.clone(),
        gaps,
    })
}
