//! Uniform one-dimensional grids for the limit and wall geometries.
//!
//! Node coordinates are affine blends of the subdomain endpoints, so shared
//! interface nodes land exactly on their nominal positions and the first and
//! last nodes are exactly the domain endpoints.

use crate::error::{Error, Result};
use crate::params::PhysicalParams;

/// Grid for the limit problem: rod 1 on `[-l1, 0]`, rod 2 on `[0, l2]`.
/// The node at `x = 0` is shared by both rods and carries the point-mass
/// degree of freedom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitMesh {
    n1: usize,
    n2: usize,
    l1: f64,
    l2: f64,
}

impl LimitMesh {
    /// `n1`, `n2` are cell counts per rod, at least 2 each.
    pub fn new(p: &PhysicalParams, n1: usize, n2: usize) -> Result<Self> {
        if n1 < 2 {
            return Err(Error::InvalidValue {
                key: "N1".into(),
                msg: format!("cell count must be >= 2, got {n1}"),
            });
        }
        if n2 < 2 {
            return Err(Error::InvalidValue {
                key: "N2".into(),
                msg: format!("cell count must be >= 2, got {n2}"),
            });
        }
        Ok(LimitMesh {
            n1,
            n2,
            l1: p.l1,
            l2: p.l2,
        })
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn h1(&self) -> f64 {
        self.l1 / self.n1 as f64
    }

    pub fn h2(&self) -> f64 {
        self.l2 / self.n2 as f64
    }

    /// Rod-1 node `i` for `i = 0..=n1`; node 0 is `-l1`, node `n1` is `0`.
    pub fn x1(&self, i: usize) -> f64 {
        debug_assert!(i <= self.n1);
        -self.l1 * ((self.n1 - i) as f64 / self.n1 as f64)
    }

    /// Rod-2 node `j` for `j = 0..=n2`; node 0 is `0`, node `n2` is `l2`.
    pub fn x2(&self, j: usize) -> f64 {
        debug_assert!(j <= self.n2);
        self.l2 * (j as f64 / self.n2 as f64)
    }

    /// Number of free degrees of freedom (Dirichlet endpoints eliminated).
    pub fn dof_count(&self) -> usize {
        self.n1 + self.n2 - 1
    }
}

/// Grid for the wall problem: rod 1 on `[-l1, -eps]`, wall on `[-eps, eps]`,
/// rod 2 on `[eps, l2]`. The nodes at `x = -eps` and `x = eps` are shared
/// between the wall and the adjacent rod, one degree of freedom each.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsMesh {
    eps: f64,
    n1: usize,
    nw: usize,
    n2: usize,
    l1: f64,
    l2: f64,
}

impl EpsMesh {
    pub fn new(p: &PhysicalParams, eps: f64, n1: usize, nw: usize, n2: usize) -> Result<Self> {
        if !(eps > 0.0 && eps < p.l1.min(p.l2)) {
            return Err(Error::InvalidValue {
                key: "eps".into(),
                msg: format!("need 0 < eps < min(L1, L2) = {}, got {eps}", p.l1.min(p.l2)),
            });
        }
        for (key, n) in [("N1", n1), ("Nw", nw), ("N2", n2)] {
            if n < 2 {
                return Err(Error::InvalidValue {
                    key: key.into(),
                    msg: format!("cell count must be >= 2, got {n}"),
                });
            }
        }
        Ok(EpsMesh {
            eps,
            n1,
            nw,
            n2,
            l1: p.l1,
            l2: p.l2,
        })
    }

    pub fn eps(&self) -> f64 {
        self.eps
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

    pub fn h1(&self) -> f64 {
        (self.l1 - self.eps) / self.n1 as f64
    }

    pub fn hw(&self) -> f64 {
        2.0 * self.eps / self.nw as f64
    }

    pub fn h2(&self) -> f64 {
        (self.l2 - self.eps) / self.n2 as f64
    }

    /// Rod-1 node `i` for `i = 0..=n1`; node 0 is `-l1`, node `n1` is `-eps`.
    pub fn x1(&self, i: usize) -> f64 {
        debug_assert!(i <= self.n1);
        (-self.l1 * (self.n1 - i) as f64 - self.eps * i as f64) / self.n1 as f64
    }

    /// Wall node `i` for `i = 0..=nw`; node 0 is `-eps`, node `nw` is `eps`.
    pub fn xw(&self, i: usize) -> f64 {
        debug_assert!(i <= self.nw);
        self.eps * (2.0 * i as f64 - self.nw as f64) / self.nw as f64
    }

    /// Rod-2 node `j` for `j = 0..=n2`; node 0 is `eps`, node `n2` is `l2`.
    pub fn x2(&self, j: usize) -> f64 {
        debug_assert!(j <= self.n2);
        (self.eps * (self.n2 - j) as f64 + self.l2 * j as f64) / self.n2 as f64
    }

    pub fn dof_count(&self) -> usize {
        self.n1 + self.nw + self.n2 - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limit_mesh_endpoints_exact() {
        let p = PhysicalParams::unit();
        let m = LimitMesh::new(&p, 7, 5).unwrap();
        assert_eq!(m.x1(0), -1.0);
        assert_eq!(m.x1(7), 0.0);
        assert_eq!(m.x2(0), 0.0);
        assert_eq!(m.x2(5), 1.0);
    }

    #[test]
    fn limit_mesh_uniform_spacing() {
        let p = PhysicalParams::unit();
        let m = LimitMesh::new(&p, 13, 9).unwrap();
        for i in 0..13 {
            assert!((m.x1(i + 1) - m.x1(i) - m.h1()).abs() < 1e-15);
        }
        for j in 0..9 {
            assert!((m.x2(j + 1) - m.x2(j) - m.h2()).abs() < 1e-15);
        }
    }

    #[test]
    fn limit_mesh_rejects_tiny_counts() {
        let p = PhysicalParams::unit();
        assert!(LimitMesh::new(&p, 1, 8).is_err());
        assert!(LimitMesh::new(&p, 8, 0).is_err());
    }

    #[test]
    fn eps_mesh_shared_nodes_exact() {
        let p = PhysicalParams::unit();
        let m = EpsMesh::new(&p, 0.25, 6, 4, 6).unwrap();
        assert_eq!(m.x1(6), -0.25);
        assert_eq!(m.xw(0), -0.25);
        assert_eq!(m.xw(4), 0.25);
        assert_eq!(m.x2(0), 0.25);
        assert_eq!(m.x1(0), -1.0);
        assert_eq!(m.x2(6), 1.0);
        // wall midpoint lands exactly on zero for even cell counts
        assert_eq!(m.xw(2), 0.0);
    }

    #[test]
    fn eps_mesh_rejects_bad_eps() {
        let p = PhysicalParams::unit();
        assert!(EpsMesh::new(&p, 0.0, 4, 4, 4).is_err());
        assert!(EpsMesh::new(&p, 1.0, 4, 4, 4).is_err());
        assert!(EpsMesh::new(&p, -0.1, 4, 4, 4).is_err());
        assert!(EpsMesh::new(&p, 0.25, 4, 1, 4).is_err());
    }
}
