//! CSV emission and parsing.
//!
//! Numbers are serialized with 17 significant digits (`{:.16e}`), which
//! round-trips every finite f64 exactly; rows end with `\n` and the decimal
//! separator is always `.`. Identical inputs produce byte-identical files.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::mesh::EpsMesh;
use crate::norms::g_eps;
use crate::state::{EpsState, LimitState};
use crate::sweep::ConvergenceReport;
use crate::diagnostics::TERM_NAMES;
use crate::trajectory::Trajectory;

/// 17 significant digits: exact round-trip for every finite f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|source| Error::Io {
                path: parent.to_path_buf(),
                source,
            })?;
        }
    }
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// `t, E, W_sq, z` rows for a limit trajectory.
pub fn write_trajectory_csv(traj: &Trajectory<LimitState>, path: &Path) -> Result<()> {
    let mut out = String::from("t,E,W_sq,z\n");
    for i in 0..traj.len() {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f64(traj.times()[i]),
            fmt_f64(traj.energy()[i]),
            fmt_f64(traj.seminorm_sq()[i]),
            fmt_f64(traj.state(i).z()),
        ));
    }
    write_file(path, &out)
}

/// `t, E, W_sq, g_eps` rows for a wall trajectory.
pub fn write_eps_trajectory_csv(
    traj: &Trajectory<EpsState>,
    m: &EpsMesh,
    path: &Path,
) -> Result<()> {
    let mut out = String::from("t,E,W_sq,g_eps\n");
    for i in 0..traj.len() {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f64(traj.times()[i]),
            fmt_f64(traj.energy()[i]),
            fmt_f64(traj.seminorm_sq()[i]),
            fmt_f64(g_eps(traj.state(i), m)?),
        ));
    }
    write_file(path, &out)
}

/// Long-format sweep report:
/// `eps, testfn_id, term_name, gap, g_sup_diff, h0_norm, w0_seminorm`.
pub fn write_report_csv(report: &ConvergenceReport, path: &Path) -> Result<()> {
    let mut out = String::from("eps,testfn_id,term_name,gap,g_sup_diff,h0_norm,w0_seminorm\n");
    for row in &report.rows {
        for gap in &row.gaps {
            for (name, value) in TERM_NAMES.iter().zip(gap.gaps.iter()) {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    fmt_f64(row.eps),
                    gap.test_fn,
                    name,
                    fmt_f64(*value),
                    fmt_f64(row.g_sup_diff),
                    fmt_f64(row.h0_norm),
                    fmt_f64(row.w0_seminorm),
                ));
            }
        }
    }
    write_file(path, &out)
}

/// A parsed trajectory row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRow {
    pub t: f64,
    pub energy: f64,
    pub seminorm_sq: f64,
    pub scalar: f64,
}

/// Parses the output of either trajectory writer.
pub fn parse_trajectory_csv(text: &str) -> Result<Vec<TrajectoryRow>> {
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if idx == 0 {
            continue; // header
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(Error::Parse {
                line: idx + 1,
                msg: format!("expected 4 fields, got {}", fields.len()),
            });
        }
        let mut vals = [0.0; 4];
        for (slot, field) in vals.iter_mut().zip(&fields) {
            *slot = field.parse::<f64>().map_err(|_| Error::Parse {
                line: idx + 1,
                msg: format!("bad number `{field}`"),
            })?;
        }
        rows.push(TrajectoryRow {
            t: vals[0],
            energy: vals[1],
            seminorm_sq: vals[2],
            scalar: vals[3],
        });
    }
    Ok(rows)
}

/// A parsed report row.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub eps: f64,
    pub testfn_id: String,
    pub term_name: String,
    pub gap: f64,
    pub g_sup_diff: f64,
    pub h0_norm: f64,
    pub w0_seminorm: f64,
}

/// Parses the output of [`write_report_csv`].
pub fn parse_report_csv(text: &str) -> Result<Vec<ReportRow>> {
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if idx == 0 {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(Error::Parse {
                line: idx + 1,
                msg: format!("expected 7 fields, got {}", fields.len()),
            });
        }
        let num = |f: &str| -> Result<f64> {
            f.parse::<f64>().map_err(|_| Error::Parse {
                line: idx + 1,
                msg: format!("bad number `{f}`"),
            })
        };
        rows.push(ReportRow {
            eps: num(fields[0])?,
            testfn_id: fields[1].to_string(),
            term_name: fields[2].to_string(),
            gap: num(fields[3])?,
            g_sup_diff: num(fields[4])?,
            h0_norm: num(fields[5])?,
            w0_seminorm: num(fields[6])?,
        });
    }
    Ok(rows)
}

/// `t, resid` rows for a dissipation-residual series; `t` is the left
/// endpoint of each step.
pub fn write_residual_csv(times: &[f64], residuals: &[f64], path: &Path) -> Result<()> {
    let mut out = String::from("t,resid\n");
    for (t, r) in times.iter().zip(residuals) {
        out.push_str(&format!("{},{}\n", fmt_f64(*t), fmt_f64(*r)));
    }
    write_file(path, &out)
}

/// `case, n, max_err, max_err_away` rows for the steady-state study.
pub fn write_steady_csv(rows: &[(String, usize, f64, f64)], path: &Path) -> Result<()> {
    let mut out = String::from("case,n,max_err,max_err_away\n");
    for (case, n, err, away) in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            case,
            n,
            fmt_f64(*err),
            fmt_f64(*away)
        ));
    }
    write_file(path, &out)
}
