//! Lumped piecewise-linear assembly of both problems and the theta-scheme
//! stepping core they share.
//!
//! Free degrees of freedom are ordered left to right with the Dirichlet
//! endpoints eliminated, so both mass and stiffness are tridiagonal and the
//! stiffness is symmetric by construction. Interface coupling (flux matching)
//! is natural in this assembly: the shared node's row simply collects the
//! contributions of both adjacent subdomains, no constraint rows are needed.
//! The point mass `c` of the limit problem adds to the lumped mass of the
//! interface node.
//!
//! With these conventions the trapezoidal state norm equals `y^T M y` and the
//! gradient seminorm equals `y^T K y` exactly, which is what makes the
//! discrete energy identities of the theta scheme hold to round-off.

use crate::error::Result;
use crate::mesh::{EpsMesh, LimitMesh};
use crate::params::PhysicalParams;
use crate::tridiag::TridiagFactor;

/// Assembled mass and stiffness operators.
///
/// `mass` is the diagonal lumped mass; `k_diag`/`k_off` hold the symmetric
/// tridiagonal stiffness (off-diagonal entry `k_off[i]` couples dofs `i` and
/// `i + 1`).
#[derive(Debug, Clone)]
pub struct BandedSystem {
    pub mass: Vec<f64>,
    pub k_diag: Vec<f64>,
    pub k_off: Vec<f64>,
}

impl BandedSystem {
    pub fn n(&self) -> usize {
        self.mass.len()
    }

    /// `K y`.
    pub fn apply_stiffness(&self, y: &[f64]) -> Vec<f64> {
        let n = self.n();
        assert_eq!(y.len(), n);
        (0..n)
            .map(|i| {
                let mut acc = self.k_diag[i] * y[i];
                if i > 0 {
                    acc += self.k_off[i - 1] * y[i - 1];
                }
                if i + 1 < n {
                    acc += self.k_off[i] * y[i + 1];
                }
                acc
            })
            .collect()
    }

    /// `y^T K y`.
    pub fn stiffness_quad(&self, y: &[f64]) -> f64 {
        self.apply_stiffness(y)
            .iter()
            .zip(y)
            .map(|(ky, yi)| ky * yi)
            .sum()
    }

    /// `y^T M y`.
    pub fn mass_quad(&self, y: &[f64]) -> f64 {
        self.mass.iter().zip(y).map(|(m, yi)| m * yi * yi).sum()
    }
}

/// Assembles the limit problem on the free dofs
/// `[u_1 .. u_{n1-1}, z, v_1 .. v_{n2-1}]`.
pub fn assemble_limit_system(p: &PhysicalParams, m: &LimitMesh) -> BandedSystem {
    let n = m.dof_count();
    let (h1, h2) = (m.h1(), m.h2());
    let (a1, a2) = (p.c1 * p.rho1, p.c2 * p.rho2);
    let (s1, s2) = (p.k1 / h1, p.k2 / h2);
    let iface = m.n1() - 1;

    let mut mass = vec![0.0; n];
    let mut k_diag = vec![0.0; n];
    let mut k_off = vec![0.0; n - 1];

    for i in 0..iface {
        mass[i] = a1 * h1;
        k_diag[i] = 2.0 * s1;
    }
    mass[iface] = p.c + 0.5 * (a1 * h1 + a2 * h2);
    k_diag[iface] = s1 + s2;
    for i in iface + 1..n {
        mass[i] = a2 * h2;
        k_diag[i] = 2.0 * s2;
    }
    for (i, off) in k_off.iter_mut().enumerate() {
        *off = if i < iface { -s1 } else { -s2 };
    }

    BandedSystem {
        mass,
        k_diag,
        k_off,
    }
}

/// Assembles the wall problem on the free dofs
/// `[u_1 .. u_{n1-1}, w_0 .. w_{nw}, v_1 .. v_{n2-1}]`. Wall rows carry the
/// scaled density `c/(2 eps)`.
pub fn assemble_eps_system(p: &PhysicalParams, m: &EpsMesh) -> BandedSystem {
    let n = m.dof_count();
    let (h1, hw, h2) = (m.h1(), m.hw(), m.h2());
    let (a1, aw, a2) = (p.c1 * p.rho1, p.c / (2.0 * m.eps()), p.c2 * p.rho2);
    let (s1, sw, s2) = (p.k1 / h1, p.k / hw, p.k2 / h2);
    let left = m.n1() - 1; // dof index of the shared node at -eps
    let right = left + m.nw(); // dof index of the shared node at +eps

    let mut mass = vec![0.0; n];
    let mut k_diag = vec![0.0; n];
    let mut k_off = vec![0.0; n - 1];

    for i in 0..left {
        mass[i] = a1 * h1;
        k_diag[i] = 2.0 * s1;
    }
    mass[left] = 0.5 * (a1 * h1 + aw * hw);
    k_diag[left] = s1 + sw;
    for i in left + 1..right {
        mass[i] = aw * hw;
        k_diag[i] = 2.0 * sw;
    }
    mass[right] = 0.5 * (aw * hw + a2 * h2);
    k_diag[right] = sw + s2;
    for i in right + 1..n {
        mass[i] = a2 * h2;
        k_diag[i] = 2.0 * s2;
    }
    for (i, off) in k_off.iter_mut().enumerate() {
        *off = if i < left {
            -s1
        } else if i < right {
            -sw
        } else {
            -s2
        };
    }

    BandedSystem {
        mass,
        k_diag,
        k_off,
    }
}

/// Time discretization of `M dy/dt = -K y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaScheme {
    /// Implicit Euler, `theta = 1`: unconditionally monotone energy decay.
    BackwardEuler,
    /// Crank-Nicolson, `theta = 1/2`: second order in time.
    CrankNicolson,
}

impl ThetaScheme {
    pub fn theta(self) -> f64 {
        match self {
            ThetaScheme::BackwardEuler => 1.0,
            ThetaScheme::CrankNicolson => 0.5,
        }
    }
}

/// Prefactored theta step: solves `(M + theta dt K) y+ = (M - (1-theta) dt K) y`.
/// Factor once, step many times; refactor only when `dt` or `theta` changes.
#[derive(Debug, Clone)]
pub struct ThetaStepper {
    lhs: TridiagFactor,
    rhs_diag: Vec<f64>,
    rhs_off: Vec<f64>,
}

impl ThetaStepper {
    pub fn new(sys: &BandedSystem, dt: f64, scheme: ThetaScheme) -> Result<Self> {
        assert!(dt > 0.0, "time step must be positive");
        let theta = scheme.theta();
        let n = sys.n();
        let lhs_diag: Vec<f64> = (0..n)
            .map(|i| sys.mass[i] + theta * dt * sys.k_diag[i])
            .collect();
        let lhs_off: Vec<f64> = sys.k_off.iter().map(|k| theta * dt * k).collect();
        let lhs = TridiagFactor::new(&lhs_off, &lhs_diag, &lhs_off)?;
        let mu = (1.0 - theta) * dt;
        let rhs_diag = (0..n).map(|i| sys.mass[i] - mu * sys.k_diag[i]).collect();
        let rhs_off = sys.k_off.iter().map(|k| -mu * k).collect();
        Ok(ThetaStepper {
            lhs,
            rhs_diag,
            rhs_off,
        })
    }

    /// Advances one step in place.
    pub fn advance(&self, dof: &mut Vec<f64>, scratch: &mut Vec<f64>) {
        let n = self.lhs.n();
        assert_eq!(dof.len(), n);
        scratch.clear();
        scratch.extend((0..n).map(|i| {
            let mut acc = self.rhs_diag[i] * dof[i];
            if i > 0 {
                acc += self.rhs_off[i - 1] * dof[i - 1];
            }
            if i + 1 < n {
                acc += self.rhs_off[i] * dof[i + 1];
            }
            acc
        }));
        self.lhs.solve_in_place(scratch);
        std::mem::swap(dof, scratch);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_assembled_three_unknown_limit_system() {
        // Unit parameters, two cells per rod (h = 1/2): interior rod masses
        // c rho h = 1/2, interface mass c + (h1 + h2)/2 = 3/2, interior
        // stiffness diagonal 2k/h = 4, interface diagonal k1/h1 + k2/h2 = 4,
        // couplings -k/h = -2.
        let p = PhysicalParams::unit();
        let m = LimitMesh::new(&p, 2, 2).unwrap();
        let sys = assemble_limit_system(&p, &m);
        assert_eq!(sys.mass, vec![0.5, 1.5, 0.5]);
        assert_eq!(sys.k_diag, vec![4.0, 4.0, 4.0]);
        assert_eq!(sys.k_off, vec![-2.0, -2.0]);
    }

    #[test]
    fn stiffness_annihilates_constants_away_from_boundary() {
        let raw = crate::params::RawParams {
            c1: 2.0,
            rho1: 0.7,
            k1: 3.0,
            k2: 0.25,
            c: 5.0,
            ..Default::default()
        };
        let p = crate::params::validate_params(&raw).unwrap();
        let m = LimitMesh::new(&p, 6, 9).unwrap();
        let sys = assemble_limit_system(&p, &m);
        let ones = vec![1.0; sys.n()];
        let ky = sys.apply_stiffness(&ones);
        for (i, val) in ky.iter().enumerate() {
            if i == 0 || i == sys.n() - 1 {
                assert!(*val > 0.0); // rows adjacent to the Dirichlet boundary
            } else {
                assert!(val.abs() < 1e-12, "row {i}: {val}");
            }
        }
    }

    #[test]
    fn eps_assembly_interface_mass_at_half_eps() {
        // eps = 1/2 makes c/(2 eps) = 1, so the shared-node mass reduces to
        // the plain average (h1 + hw)/2 of an unscaled three-material rod.
        let p = PhysicalParams::unit();
        let m = EpsMesh::new(&p, 0.5, 4, 4, 4).unwrap();
        let sys = assemble_eps_system(&p, &m);
        let left = m.n1() - 1;
        assert!((sys.mass[left] - 0.5 * (m.h1() + m.hw())).abs() < 1e-15);
        let right = left + m.nw();
        assert!((sys.mass[right] - 0.5 * (m.hw() + m.h2())).abs() < 1e-15);
    }

    #[test]
    fn eps_stiffness_kernel_and_positivity() {
        let p = PhysicalParams::unit();
        let m = EpsMesh::new(&p, 0.1, 5, 8, 7).unwrap();
        let sys = assemble_eps_system(&p, &m);
        assert!(sys.mass.iter().all(|v| *v > 0.0));
        let ones = vec![1.0; sys.n()];
        let ky = sys.apply_stiffness(&ones);
        for (i, val) in ky.iter().enumerate() {
            if i == 0 || i == sys.n() - 1 {
                continue;
            }
            assert!(val.abs() < 1e-10, "row {i}: {val}");
        }
    }

    #[test]
    fn interface_mass_contains_point_mass() {
        let raw = crate::params::RawParams {
            c: 7.5,
            ..Default::default()
        };
        let p = crate::params::validate_params(&raw).unwrap();
        let m = LimitMesh::new(&p, 16, 16).unwrap();
        let sys = assemble_limit_system(&p, &m);
        assert!(sys.mass[m.n1() - 1] >= p.c);
    }

    #[test]
    fn quadratic_forms_match_the_trapezoid_norms() {
        // y^T M y must equal the trapezoid state norm and y^T K y the cell
        // seminorm on arbitrary states; the discrete energy identities of
        // the theta schemes rest on these two equalities
        use crate::norms::{
            h_norm_sq_eps, h_norm_sq_limit, w_seminorm_sq_eps, w_seminorm_sq_limit,
        };
        use crate::state::{EpsState, LimitState};
        let raw = crate::params::RawParams {
            c1: 2.0,
            rho1: 0.7,
            k1: 3.0,
            c2: 1.1,
            rho2: 2.3,
            k2: 0.4,
            c: 5.0,
            k: 1.7,
            l1: 1.3,
            l2: 0.8,
        };
        let p = crate::params::validate_params(&raw).unwrap();

        let m = LimitMesh::new(&p, 9, 7).unwrap();
        let sys = assemble_limit_system(&p, &m);
        let mut y = LimitState::zero(&m);
        for (i, v) in y.dof_mut().iter_mut().enumerate() {
            *v = ((i * i) as f64 * 0.37).sin();
        }
        let h = h_norm_sq_limit(&y, &p, &m).unwrap();
        let w = w_seminorm_sq_limit(&y, &p, &m).unwrap();
        assert!((h - sys.mass_quad(y.dof())).abs() < 1e-12 * (1.0 + h));
        assert!((w - sys.stiffness_quad(y.dof())).abs() < 1e-12 * (1.0 + w));

        let me = EpsMesh::new(&p, 0.3, 6, 4, 5).unwrap();
        let se = assemble_eps_system(&p, &me);
        let mut ye = EpsState::zero(&me);
        for (i, v) in ye.dof_mut().iter_mut().enumerate() {
            *v = ((i as f64) * 0.61).cos();
        }
        let h = h_norm_sq_eps(&ye, &p, &me).unwrap();
        let w = w_seminorm_sq_eps(&ye, &p, &me).unwrap();
        assert!((h - se.mass_quad(ye.dof())).abs() < 1e-12 * (1.0 + h));
        assert!((w - se.stiffness_quad(ye.dof())).abs() < 1e-12 * (1.0 + w));
    }

    #[test]
    fn stepper_fixed_point_at_zero() {
        let p = PhysicalParams::unit();
        let m = LimitMesh::new(&p, 8, 8).unwrap();
        let sys = assemble_limit_system(&p, &m);
        for scheme in [ThetaScheme::BackwardEuler, ThetaScheme::CrankNicolson] {
            let stepper = ThetaStepper::new(&sys, 0.01, scheme).unwrap();
            let mut dof = vec![0.0; sys.n()];
            let mut scratch = Vec::new();
            stepper.advance(&mut dof, &mut scratch);
            assert!(dof.iter().all(|v| *v == 0.0));
        }
    }
}
