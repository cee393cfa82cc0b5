//! Direct solver for tridiagonal systems (Thomas algorithm) with a reusable
//! factorization, so that repeated time steps pay only the two substitution
//! sweeps.

use crate::error::{Error, Result};

/// LU factorization of a tridiagonal matrix with sub-diagonal `sub`,
/// diagonal `diag` and super-diagonal `sup`.
#[derive(Debug, Clone)]
pub struct TridiagFactor {
    /// Multipliers `l_i = sub_i / dhat_{i-1}`.
    low: Vec<f64>,
    /// Pivots `dhat_i`.
    piv: Vec<f64>,
    /// Super-diagonal, unchanged by the elimination.
    sup: Vec<f64>,
}

impl TridiagFactor {
    /// Factors the matrix. `sub` and `sup` have length `n - 1`, `diag` has
    /// length `n`. Fails with `SingularSystem` on a vanishing pivot; this
    /// cannot happen for the diagonally dominant systems assembled here.
    pub fn new(sub: &[f64], diag: &[f64], sup: &[f64]) -> Result<Self> {
        let n = diag.len();
        assert!(n >= 1, "empty system");
        assert_eq!(sub.len(), n - 1);
        assert_eq!(sup.len(), n - 1);
        let mut low = vec![0.0; n - 1];
        let mut piv = vec![0.0; n];
        piv[0] = diag[0];
        if piv[0] == 0.0 {
            return Err(Error::SingularSystem { row: 0 });
        }
        for i in 1..n {
            low[i - 1] = sub[i - 1] / piv[i - 1];
            piv[i] = diag[i] - low[i - 1] * sup[i - 1];
            if piv[i] == 0.0 {
                return Err(Error::SingularSystem { row: i });
            }
        }
        Ok(TridiagFactor {
            low,
            piv,
            sup: sup.to_vec(),
        })
    }

    pub fn n(&self) -> usize {
        self.piv.len()
    }

    /// Solves in place: on return `rhs` holds the solution.
    pub fn solve_in_place(&self, rhs: &mut [f64]) {
        let n = self.piv.len();
        assert_eq!(rhs.len(), n);
        for i in 1..n {
            rhs[i] -= self.low[i - 1] * rhs[i - 1];
        }
        rhs[n - 1] /= self.piv[n - 1];
        for i in (0..n - 1).rev() {
            rhs[i] = (rhs[i] - self.sup[i] * rhs[i + 1]) / self.piv[i];
        }
    }
}

/// One-shot convenience wrapper around [`TridiagFactor`].
pub fn solve(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let factor = TridiagFactor::new(sub, diag, sup)?;
    let mut x = rhs.to_vec();
    factor.solve_in_place(&mut x);
    Ok(x)
}
