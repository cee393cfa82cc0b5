//! Material constants for the two rods and the connecting wall.

use crate::error::{Error, Result};

/// Unvalidated parameter record, as read from a config file or built by hand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawParams {
    pub c1: f64,
    pub rho1: f64,
    pub k1: f64,
    pub c2: f64,
    pub rho2: f64,
    pub k2: f64,
    /// Wall specific heat.
    pub c: f64,
    /// Wall conductivity.
    pub k: f64,
    pub l1: f64,
    pub l2: f64,
}

impl Default for RawParams {
    fn default() -> Self {
        RawParams {
            c1: 1.0,
            rho1: 1.0,
            k1: 1.0,
            c2: 1.0,
            rho2: 1.0,
            k2: 1.0,
            c: 1.0,
            k: 1.0,
            l1: 1.0,
            l2: 1.0,
        }
    }
}

/// Validated material constants. Rod 1 occupies `(-l1, 0)`, rod 2 `(0, l2)`
/// in the limit geometry. Construct through [`validate_params`].
///
/// Diffusivities are always recomputed from `k_i / (c_i * rho_i)` and never
/// stored, so they cannot drift out of sync with the base constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub c1: f64,
    pub rho1: f64,
    pub k1: f64,
    pub c2: f64,
    pub rho2: f64,
    pub k2: f64,
    pub c: f64,
    pub k: f64,
    pub l1: f64,
    pub l2: f64,
}

/// Checks positivity of every entry and returns the validated record.
pub fn validate_params(raw: &RawParams) -> Result<PhysicalParams> {
    let checks: [(&'static str, f64); 10] = [
        ("c1", raw.c1),
        ("rho1", raw.rho1),
        ("k1", raw.k1),
        ("c2", raw.c2),
        ("rho2", raw.rho2),
        ("k2", raw.k2),
        ("c", raw.c),
        ("k", raw.k),
        ("L1", raw.l1),
        ("L2", raw.l2),
    ];
    for (name, value) in checks {
        if value <= 0.0 || !value.is_finite() {
            return Err(Error::NonPositiveParameter(name));
        }
    }
    Ok(PhysicalParams {
        c1: raw.c1,
        rho1: raw.rho1,
        k1: raw.k1,
        c2: raw.c2,
        rho2: raw.rho2,
        k2: raw.k2,
        c: raw.c,
        k: raw.k,
        l1: raw.l1,
        l2: raw.l2,
    })
}

impl PhysicalParams {
    /// All constants equal to one.
    pub fn unit() -> Self {
        validate_params(&RawParams::default()).expect("unit parameters are valid")
    }

    /// Rod-1 diffusivity `k1 / (c1 rho1)`.
    pub fn alpha1_sq(&self) -> f64 {
        self.k1 / (self.c1 * self.rho1)
    }

    /// Rod-2 diffusivity `k2 / (c2 rho2)`.
    pub fn alpha2_sq(&self) -> f64 {
        self.k2 / (self.c2 * self.rho2)
    }

    /// Parameters with rod 1 and rod 2 swapped; used by the mirror-symmetry
    /// checks.
    pub fn swapped(&self) -> Self {
        PhysicalParams {
            c1: self.c2,
            rho1: self.rho2,
            k1: self.k2,
            c2: self.c1,
            rho2: self.rho1,
            k2: self.k1,
            c: self.c,
            k: self.k,
            l1: self.l2,
            l2: self.l1,
        }
    }
}
