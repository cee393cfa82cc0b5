//! Compactly supported C1 test functions `phi(t, x)` on `[0, T] x [-L1, L2]`.

use crate::error::{Error, Result};
use crate::params::PhysicalParams;

type Eval = Box<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// A test function with its time and space derivatives. Vanishes at both
/// spatial boundary points for every time and for all `t >= t_supp`.
pub struct TestFunction {
    id: String,
    t_supp: f64,
    phi: Eval,
    phi_dot: Eval,
    phi_x: Eval,
}

impl std::fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TestFunction")
            .field("id", &self.id)
            .field("t_supp", &self.t_supp)
            .finish()
    }
}

impl TestFunction {
    /// Wraps evaluators after spot-checking the boundary and cutoff
    /// conditions on a small sample grid.
    pub fn new(
        id: impl Into<String>,
        t_supp: f64,
        l1: f64,
        l2: f64,
        phi: Eval,
        phi_dot: Eval,
        phi_x: Eval,
    ) -> Result<Self> {
        let id = id.into();
        if t_supp <= 0.0 || !t_supp.is_finite() {
            return Err(Error::InvalidValue {
                key: "t_supp".into(),
                msg: "support bound must be positive".into(),
            });
        }
        for k in 0..=4 {
            let t = t_supp * k as f64 / 4.0;
            for x in [-l1, l2] {
                if phi(t, x).abs() > 1e-12 {
                    return Err(Error::InvalidValue {
                        key: "phi".into(),
                        msg: format!("test function `{id}` does not vanish at x = {x}"),
                    });
                }
            }
        }
        for x in [-l1, -0.3 * l1, 0.0, 0.6 * l2, l2] {
            if phi(t_supp, x).abs() > 1e-12 || phi_dot(t_supp, x).abs() > 1e-12 {
                return Err(Error::InvalidValue {
                    key: "phi".into(),
                    msg: format!("test function `{id}` is not a C1 cutoff at t = {t_supp}"),
                });
            }
        }
        Ok(TestFunction {
            id,
            t_supp,
            phi,
            phi_dot,
            phi_x,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn t_supp(&self) -> f64 {
        self.t_supp
    }

    pub fn phi(&self, t: f64, x: f64) -> f64 {
        (self.phi)(t, x)
    }

    pub fn phi_dot(&self, t: f64, x: f64) -> f64 {
        (self.phi_dot)(t, x)
    }

    pub fn phi_x(&self, t: f64, x: f64) -> f64 {
        (self.phi_x)(t, x)
    }
}

/// The built-in family: all products `psi_m(t) chi_n(x)` of
///
/// ```text
/// psi_1(t) = (1 - t/T)+^2          psi_2(t) = t (1 - t/T)+^2
/// chi_1(x) = (x + L1)(L2 - x)      chi_2(x) = sin(pi (x + L1) / (L1 + L2))
/// ```
///
/// All four are C1 with compact time support `[0, T]` and vanish at the
/// spatial boundary. `psi_2` vanishes at `t = 0`, which isolates the
/// evolution terms from the initial-data terms; both `chi` factors are
/// nonzero at `x = 0`, so the point-mass terms are exercised.
pub fn builtin_test_functions(p: &PhysicalParams, t_end: f64) -> Vec<TestFunction> {
    assert!(t_end > 0.0, "support bound must be positive");
    let (l1, l2) = (p.l1, p.l2);

    fn cut(t: f64, t_end: f64) -> f64 {
        if t < t_end {
            1.0 - t / t_end
        } else {
            0.0
        }
    }
    let psi = move |m: usize, t: f64| {
        let c = cut(t, t_end);
        if m == 1 {
            c * c
        } else {
            t * c * c
        }
    };
    let psi_dot = move |m: usize, t: f64| {
        let c = cut(t, t_end);
        if m == 1 {
            -2.0 / t_end * c
        } else {
            c * (c - 2.0 * t / t_end)
        }
    };
    let chi = move |n: usize, x: f64| {
        if n == 1 {
            (x + l1) * (l2 - x)
        } else {
            (std::f64::consts::PI * (x + l1) / (l1 + l2)).sin()
        }
    };
    let chi_x = move |n: usize, x: f64| {
        if n == 1 {
            l2 - l1 - 2.0 * x
        } else {
            let w = std::f64::consts::PI / (l1 + l2);
            w * (w * (x + l1)).cos()
        }
    };

    let mut out = Vec::new();
    for m in 1..=2usize {
        for n in 1..=2usize {
            out.push(
                TestFunction::new(
                    format!("psi{m}_chi{n}"),
                    t_end,
                    l1,
                    l2,
                    Box::new(move |t, x| psi(m, t) * chi(n, x)),
                    Box::new(move |t, x| psi_dot(m, t) * chi(n, x)),
                    Box::new(move |t, x| psi(m, t) * chi_x(n, x)),
                )
                .expect("built-in test functions satisfy the constraints"),
            );
        }
    }
    out
}
