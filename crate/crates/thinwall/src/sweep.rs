//! The headline experiment: solve the limit problem once, then re-solve the
//! wall problem for every half-width in the sweep list and quantify how the
//! weak-form pairings, the wall average, and the lifted initial data approach
//! their limit counterparts.

use crate::config::{validate, RunConfig};
use crate::diagnostics::{
    builtin_test_functions, pairing_gap, weak_pairing_eps, weak_pairing_limit, GapRecord,
};
use crate::eps::{evolve_eps, lift_initial_data};
use crate::error::{Error, Result};
use crate::limit::evolve_limit;
use crate::norms::{
    g_eps, h_norm_sq_eps, h_norm_sq_limit, w_seminorm_sq_eps, w_seminorm_sq_limit,
};
use crate::state::LimitState;

/// Per-eps diagnostics collected by [`run_sweep`].
#[derive(Debug, Clone)]
pub struct EpsDiagnostics {
    pub eps: f64,
    /// One gap record per built-in test function.
    pub gaps: Vec<GapRecord>,
    /// `sup_t |g_eps(t) - z(t)|` over the sampled horizon.
    pub g_sup_diff: f64,
    /// State norm of the lifted initial data.
    pub h0_norm: f64,
    /// Gradient seminorm of the lifted initial data.
    pub w0_seminorm: f64,
    /// `|wall average of the lifted data - z0|`.
    pub wall_avg_err: f64,
}

/// Aggregated sweep results, eps strictly decreasing.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub limit_h0_norm: f64,
    pub limit_w0_seminorm: f64,
    pub rows: Vec<EpsDiagnostics>,
}

impl ConvergenceReport {
    /// Gap sequences across the sweep for one test function and term index.
    pub fn gap_sequence(&self, test_fn: &str, term: usize) -> Vec<f64> {
        self.rows
            .iter()
            .map(|row| {
                row.gaps
                    .iter()
                    .find(|g| g.test_fn == test_fn)
                    .map(|g| g.gaps[term])
                    .unwrap_or(f64::NAN)
            })
            .collect()
    }
}

fn at_eps<T>(eps: f64, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::AtEps {
        eps,
        source: Box::new(e),
    })
}

/// Runs the full sweep described by the config. Deterministic: one limit
/// solve, then one wall solve per eps, all single threaded in list order.
pub fn run_sweep(cfg: &RunConfig) -> Result<ConvergenceReport> {
    validate(cfg)?;
    let p = cfg.params()?;
    let data = cfg.initial_data();
    let ml = cfg.limit_mesh()?;
    let y0 = LimitState::from_profiles(&ml, |x| data.u0(x), |x| data.v0(x), data.z0())?;
    let limit_traj = evolve_limit(&y0, cfg.dt, cfg.t_end, cfg.theta, &p, &ml)?;
    let test_fns = builtin_test_functions(&p, cfg.t_end);
    let limit_reports: Vec<_> = test_fns
        .iter()
        .map(|tf| weak_pairing_limit(&limit_traj, tf, &p, &ml))
        .collect::<Result<_>>()?;

    let limit_h0_norm = h_norm_sq_limit(&y0, &p, &ml)?.sqrt();
    let limit_w0_seminorm = w_seminorm_sq_limit(&y0, &p, &ml)?.sqrt();

    let mut rows = Vec::with_capacity(cfg.eps_list.len());
    for &eps in &cfg.eps_list {
        let m = at_eps(eps, cfg.eps_mesh(eps))?;
        let ye0 = at_eps(
            eps,
            lift_initial_data(|x| data.u0(x), |x| data.v0(x), data.z0(), &m),
        )?;
        let h0_norm = at_eps(eps, h_norm_sq_eps(&ye0, &p, &m))?.sqrt();
        let w0_seminorm = at_eps(eps, w_seminorm_sq_eps(&ye0, &p, &m))?.sqrt();
        let wall_avg_err = (at_eps(eps, g_eps(&ye0, &m))? - data.z0()).abs();

        let traj = at_eps(eps, evolve_eps(&ye0, cfg.dt, cfg.t_end, cfg.theta, &p, &m))?;
        debug_assert_eq!(traj.len(), limit_traj.len());

        let mut gaps = Vec::with_capacity(test_fns.len());
        for (tf, limit_rep) in test_fns.iter().zip(&limit_reports) {
            let eps_rep = at_eps(eps, weak_pairing_eps(&traj, tf, &p, &m))?;
            gaps.push(at_eps(eps, pairing_gap(limit_rep, &eps_rep))?);
        }

        let mut g_sup_diff: f64 = 0.0;
        for (s, zs) in traj.states().iter().zip(limit_traj.states()) {
            let g = at_eps(eps, g_eps(s, &m))?;
            g_sup_diff = g_sup_diff.max((g - zs.z()).abs());
        }

        rows.push(EpsDiagnostics {
            eps,
            gaps,
            g_sup_diff,
            h0_norm,
            w0_seminorm,
            wall_avg_err,
        });
    }

    Ok(ConvergenceReport {
        limit_h0_norm,
        limit_w0_seminorm,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::InitialPreset;

    fn small_cfg() -> RunConfig {
        RunConfig {
            n1: 24,
            n2: 24,
            nw: 6,
            eps_list: vec![0.2, 0.1],
            dt: 5e-3,
            t_end: 0.1,
            preset: InitialPreset::Bump,
            ..RunConfig::default()
        }
    }

    #[test]
    fn single_entry_gives_single_row() {
        let cfg = RunConfig {
            eps_list: vec![0.1],
            ..small_cfg()
        };
        let report = run_sweep(&cfg).unwrap();
        assert_eq!(report.rows.len(), 1);
        assert_eq!(report.rows[0].gaps.len(), 4);
    }

    #[test]
    fn empty_eps_list_rejected() {
        let cfg = RunConfig {
            eps_list: vec![],
            ..small_cfg()
        };
        assert!(matches!(
            run_sweep(&cfg),
            Err(Error::InvalidValue { key, .. }) if key == "eps_list"
        ));
    }

    #[test]
    fn diagnostics_are_finite_and_eps_ordered() {
        let report = run_sweep(&small_cfg()).unwrap();
        assert_eq!(report.rows.len(), 2);
        assert!(report.rows[0].eps > report.rows[1].eps);
        for row in &report.rows {
            assert!(row.g_sup_diff.is_finite());
            assert!(row.h0_norm.is_finite());
            assert!(row.w0_seminorm.is_finite());
            for gap in &row.gaps {
                assert!(gap.gaps.iter().all(|g| g.is_finite()));
            }
        }
    }

    #[test]
    fn determinism_same_config_same_numbers() {
        let a = run_sweep(&small_cfg()).unwrap();
        let b = run_sweep(&small_cfg()).unwrap();
        for (ra, rb) in a.rows.iter().zip(&b.rows) {
            assert_eq!(ra.g_sup_diff, rb.g_sup_diff);
            assert_eq!(ra.h0_norm, rb.h0_norm);
            for (ga, gb) in ra.gaps.iter().zip(&rb.gaps) {
                assert_eq!(ga.gaps, gb.gaps);
            }
        }
    }
}
