//! Named initial-data presets shared by the CLI and the experiments.

use std::str::FromStr;

use crate::error::Error;

/// Built-in initial-data families. All satisfy the Dirichlet and continuity
/// constraints for every amplitude and rod-length pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialPreset {
    /// Identically zero.
    Zero,
    /// `u0 = A sin(pi x / L1)`, `v0 = A sin(pi x / L2)`, `z0 = 0`. Odd under
    /// reflection for equal rod lengths; with symmetric materials the net
    /// interface flux cancels and the point mass stays inert.
    SineAntisym,
    /// Smooth single hump peaked at the interface: `u0 = A sin(pi (x + L1) /
    /// (2 L1))`, `v0 = A cos(pi x / (2 L2))`, `z0 = A`. Zero slope at the
    /// interface on both sides.
    Bump,
    /// Piecewise-linear tent: `u0 = A (x + L1) / L1`, `v0 = A (L2 - x) / L2`,
    /// `z0 = A`.
    LinearTent,
}

impl InitialPreset {
    pub fn name(self) -> &'static str {
        match self {
            InitialPreset::Zero => "zero",
            InitialPreset::SineAntisym => "sine-antisym",
            InitialPreset::Bump => "bump",
            InitialPreset::LinearTent => "linear-tent",
        }
    }
}

impl FromStr for InitialPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "zero" => Ok(InitialPreset::Zero),
            "sine-antisym" => Ok(InitialPreset::SineAntisym),
            "bump" => Ok(InitialPreset::Bump),
            "linear-tent" => Ok(InitialPreset::LinearTent),
            other => Err(Error::InvalidValue {
                key: "preset".into(),
                msg: format!(
                    "unknown preset `{other}` (expected zero, sine-antisym, bump, linear-tent)"
                ),
            }),
        }
    }
}

/// A preset instantiated with an amplitude and the rod lengths.
#[derive(Debug, Clone, Copy)]
pub struct InitialData {
    preset: InitialPreset,
    amplitude: f64,
    l1: f64,
    l2: f64,
}

impl InitialData {
    pub fn new(preset: InitialPreset, amplitude: f64, l1: f64, l2: f64) -> Self {
        InitialData {
            preset,
            amplitude,
            l1,
            l2,
        }
    }

    pub fn u0(&self, x: f64) -> f64 {
        use std::f64::consts::PI;
        let a = self.amplitude;
        match self.preset {
            InitialPreset::Zero => 0.0,
            InitialPreset::SineAntisym => a * (PI * x / self.l1).sin(),
            InitialPreset::Bump => a * (PI * (x + self.l1) / (2.0 * self.l1)).sin(),
            InitialPreset::LinearTent => a * (x + self.l1) / self.l1,
        }
    }

    pub fn v0(&self, x: f64) -> f64 {
        use std::f64::consts::PI;
        let a = self.amplitude;
        match self.preset {
            InitialPreset::Zero => 0.0,
            InitialPreset::SineAntisym => a * (PI * x / self.l2).sin(),
            InitialPreset::Bump => a * (PI * x / (2.0 * self.l2)).cos(),
            InitialPreset::LinearTent => a * (self.l2 - x) / self.l2,
        }
    }

    pub fn z0(&self) -> f64 {
        match self.preset {
            InitialPreset::Zero | InitialPreset::SineAntisym => 0.0,
            InitialPreset::Bump | InitialPreset::LinearTent => self.amplitude,
        }
    }
}
