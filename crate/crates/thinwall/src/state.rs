//! Discrete temperature states.
//!
//! Both state types store one value per *free* node: Dirichlet endpoints are
//! implicit zeros and interface nodes are stored once and shared by the
//! adjacent subdomains. Continuity across interfaces therefore holds by
//! construction and cannot drift, whatever is done to the state.

use crate::error::{Error, Result};
use crate::mesh::{EpsMesh, LimitMesh};

/// Tolerance for accepting caller-supplied initial profiles as compatible
/// with the Dirichlet and continuity constraints.
const DATA_TOL: f64 = 1e-9;

/// State of the limit problem: temperatures on both rods plus the point-mass
/// value `z`, with `u(0) = v(0) = z` shared.
///
/// Free-dof layout: `[u_1 .. u_{n1-1}, z, v_1 .. v_{n2-1}]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitState {
    dof: Vec<f64>,
    n1: usize,
    n2: usize,
}

impl LimitState {
    pub fn zero(m: &LimitMesh) -> Self {
        LimitState {
            dof: vec![0.0; m.dof_count()],
            n1: m.n1(),
            n2: m.n2(),
        }
    }

    /// Samples `u0`, `v0` on the mesh and couples them with `z0`.
    ///
    /// Rejects data violating `u0(-L1) = v0(L2) = 0` or the continuity
    /// constraint `u0(0) = v0(0) = z0`; nothing is silently projected.
    pub fn from_profiles<F, G>(m: &LimitMesh, u0: F, v0: G, z0: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64,
        G: Fn(f64) -> f64,
    {
        let scale = 1.0 + z0.abs();
        let ul = u0(m.x1(0));
        let vr = v0(m.x2(m.n2()));
        if ul.abs() > DATA_TOL * scale || vr.abs() > DATA_TOL * scale {
            return Err(Error::IncompatibleData(format!(
                "boundary values must vanish: u0(-L1) = {ul}, v0(L2) = {vr}"
            )));
        }
        let uc = u0(0.0);
        let vc = v0(0.0);
        if (uc - z0).abs() > DATA_TOL * scale || (vc - z0).abs() > DATA_TOL * scale {
            return Err(Error::IncompatibleData(format!(
                "continuity requires u0(0) = v0(0) = z0, got {uc}, {vc}, {z0}"
            )));
        }
        let mut dof = Vec::with_capacity(m.dof_count());
        for i in 1..m.n1() {
            dof.push(u0(m.x1(i)));
        }
        dof.push(z0);
        for j in 1..m.n2() {
            dof.push(v0(m.x2(j)));
        }
        Ok(LimitState {
            dof,
            n1: m.n1(),
            n2: m.n2(),
        })
    }

    pub(crate) fn from_dof(dof: Vec<f64>, m: &LimitMesh) -> Self {
        debug_assert_eq!(dof.len(), m.dof_count());
        LimitState {
            dof,
            n1: m.n1(),
            n2: m.n2(),
        }
    }

    /// Same shape, new dof values.
    pub(crate) fn with_dof(&self, dof: Vec<f64>) -> Self {
        debug_assert_eq!(dof.len(), self.dof.len());
        LimitState {
            dof,
            n1: self.n1,
            n2: self.n2,
        }
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn dof(&self) -> &[f64] {
        &self.dof
    }

    /// Mutable access to the free dofs. Any assignment yields an admissible
    /// state: the Dirichlet and continuity constraints are structural, not
    /// value constraints, so they cannot be violated through this slice.
    pub fn dof_mut(&mut self) -> &mut [f64] {
        &mut self.dof
    }

    /// Rod-1 value at node `i` (0 at the Dirichlet end, `z` at the interface).
    pub fn u(&self, i: usize) -> f64 {
        debug_assert!(i <= self.n1);
        if i == 0 {
            0.0
        } else {
            self.dof[i - 1]
        }
    }

    /// Rod-2 value at node `j` (`z` at the interface, 0 at the Dirichlet end).
    pub fn v(&self, j: usize) -> f64 {
        debug_assert!(j <= self.n2);
        if j == self.n2 {
            0.0
        } else if j == 0 {
            self.dof[self.n1 - 1]
        } else {
            self.dof[self.n1 - 1 + j]
        }
    }

    /// Point-mass temperature.
    pub fn z(&self) -> f64 {
        self.dof[self.n1 - 1]
    }

    pub fn u_values(&self) -> Vec<f64> {
        (0..=self.n1).map(|i| self.u(i)).collect()
    }

    pub fn v_values(&self) -> Vec<f64> {
        (0..=self.n2).map(|j| self.v(j)).collect()
    }

    pub fn conforms(&self, m: &LimitMesh) -> bool {
        self.n1 == m.n1() && self.n2 == m.n2()
    }
}

/// State of the wall problem: temperatures on rod 1, the wall, and rod 2,
/// with `u(-eps) = z(-eps)` and `z(eps) = v(eps)` shared.
///
/// Free-dof layout: `[u_1 .. u_{n1-1}, w_0 .. w_{nw}, v_1 .. v_{n2-1}]`
/// where `w_0` and `w_{nw}` are the shared interface values.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsState {
    dof: Vec<f64>,
    n1: usize,
    nw: usize,
    n2: usize,
}

impl EpsState {
    pub fn zero(m: &EpsMesh) -> Self {
        EpsState {
            dof: vec![0.0; m.dof_count()],
            n1: m.n1(),
            nw: m.nw(),
            n2: m.n2(),
        }
    }

    /// Builds a state from per-subdomain profiles; the wall profile must
    /// match the rod profiles at the shared nodes.
    pub fn from_profiles<F, G, W>(m: &EpsMesh, u0: F, w0: W, v0: G) -> Result<Self>
    where
        F: Fn(f64) -> f64,
        G: Fn(f64) -> f64,
        W: Fn(f64) -> f64,
    {
        let left = u0(m.x1(m.n1()));
        let right = v0(m.x2(0));
        let scale = 1.0 + left.abs().max(right.abs());
        if u0(m.x1(0)).abs() > DATA_TOL * scale || v0(m.x2(m.n2())).abs() > DATA_TOL * scale {
            return Err(Error::IncompatibleData(
                "boundary values must vanish at -L1 and L2".into(),
            ));
        }
        if (w0(m.xw(0)) - left).abs() > DATA_TOL * scale
            || (w0(m.xw(m.nw())) - right).abs() > DATA_TOL * scale
        {
            return Err(Error::IncompatibleData(
                "wall profile must match rod values at the shared nodes".into(),
            ));
        }
        let mut dof = Vec::with_capacity(m.dof_count());
        for i in 1..m.n1() {
            dof.push(u0(m.x1(i)));
        }
        dof.push(left);
        for i in 1..m.nw() {
            dof.push(w0(m.xw(i)));
        }
        dof.push(right);
        for j in 1..m.n2() {
            dof.push(v0(m.x2(j)));
        }
        Ok(EpsState {
            dof,
            n1: m.n1(),
            nw: m.nw(),
            n2: m.n2(),
        })
    }

    pub(crate) fn from_dof(dof: Vec<f64>, m: &EpsMesh) -> Self {
        debug_assert_eq!(dof.len(), m.dof_count());
        EpsState {
            dof,
            n1: m.n1(),
            nw: m.nw(),
            n2: m.n2(),
        }
    }

    /// Same shape, new dof values.
    pub(crate) fn with_dof(&self, dof: Vec<f64>) -> Self {
        debug_assert_eq!(dof.len(), self.dof.len());
        EpsState {
            dof,
            n1: self.n1,
            nw: self.nw,
            n2: self.n2,
        }
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn nw(&self) -> usize {
        self.nw
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn dof(&self) -> &[f64] {
        &self.dof
    }

    /// Mutable access to the free dofs; every assignment is admissible.
    pub fn dof_mut(&mut self) -> &mut [f64] {
        &mut self.dof
    }

    /// Rod-1 value at node `i`; node `n1` is the shared value at `-eps`.
    pub fn u(&self, i: usize) -> f64 {
        debug_assert!(i <= self.n1);
        if i == 0 {
            0.0
        } else {
            self.dof[i - 1]
        }
    }

    /// Wall value at node `i = 0..=nw`.
    pub fn w(&self, i: usize) -> f64 {
        debug_assert!(i <= self.nw);
        self.dof[self.n1 - 1 + i]
    }

    /// Rod-2 value at node `j`; node 0 is the shared value at `eps`.
    pub fn v(&self, j: usize) -> f64 {
        debug_assert!(j <= self.n2);
        if j == self.n2 {
            0.0
        } else {
            self.dof[self.n1 + self.nw - 1 + j]
        }
    }

    pub fn conforms(&self, m: &EpsMesh) -> bool {
        self.n1 == m.n1() && self.nw == m.nw() && self.n2 == m.n2()
    }
}
