//! Time-indexed solution records with energy and seminorm samples.

use crate::system::ThetaScheme;

/// A computed trajectory: states at strictly increasing times starting at 0,
/// with the energy `E = ||y||_H^2 / 2` and the squared gradient seminorm
/// sampled at every stored time. The scheme tag records which theta the
/// trajectory was produced with, so diagnostics can pick the matching
/// consistency point.
#[derive(Debug, Clone)]
pub struct Trajectory<S> {
    times: Vec<f64>,
    states: Vec<S>,
    energy: Vec<f64>,
    seminorm_sq: Vec<f64>,
    scheme: ThetaScheme,
}

impl<S> Trajectory<S> {
    pub fn new(scheme: ThetaScheme) -> Self {
        Trajectory {
            times: Vec::new(),
            states: Vec::new(),
            energy: Vec::new(),
            seminorm_sq: Vec::new(),
            scheme,
        }
    }

    /// Appends one sample; lengths stay consistent by construction.
    pub fn push(&mut self, t: f64, state: S, energy: f64, seminorm_sq: f64) {
        if let Some(last) = self.times.last() {
            assert!(t > *last, "times must be strictly increasing");
        }
        self.times.push(t);
        self.states.push(state);
        self.energy.push(energy);
        self.seminorm_sq.push(seminorm_sq);
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[S] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &S {
        &self.states[i]
    }

    pub fn energy(&self) -> &[f64] {
        &self.energy
    }

    pub fn seminorm_sq(&self) -> &[f64] {
        &self.seminorm_sq
    }

    pub fn scheme(&self) -> ThetaScheme {
        self.scheme
    }

    /// Keeps every `stride`-th sample plus the final one. Used only for
    /// thinning file output; diagnostics consume full trajectories.
    pub fn thinned(&self, stride: usize) -> Self
    where
        S: Clone,
    {
        assert!(stride >= 1);
        let mut out = Trajectory::new(self.scheme);
        let last = self.len().saturating_sub(1);
        for i in 0..self.len() {
            if i % stride == 0 || i == last {
                out.push(
                    self.times[i],
                    self.states[i].clone(),
                    self.energy[i],
                    self.seminorm_sq[i],
                );
            }
        }
        out
    }
}
