//! Command-line harness: configuration in, CSV out.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use thinwall::config::{parse_config, RunConfig};
use thinwall::csv_io::{
    fmt_f64, write_eps_trajectory_csv, write_report_csv, write_residual_csv, write_steady_csv,
    write_trajectory_csv,
};
use thinwall::diagnostics::dissipation_residual;
use thinwall::eps::{evolve_eps, lift_initial_data};
use thinwall::limit::{evolve_limit, solve_steady_discrete};
use thinwall::mesh::LimitMesh;
use thinwall::resolvent::{steady_closed_form, ResolventData};
use thinwall::state::LimitState;
use thinwall::sweep::run_sweep;
use thinwall::system::assemble_limit_system;
use thinwall::{Error, Result};

#[derive(Parser)]
#[command(
    name = "thinwall",
    about = "Two heat-conducting rods joined by a thin wall: wall problem, point-mass limit, and convergence experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct CommonArgs {
    /// Configuration file (`key = value` lines); defaults apply if omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory; overrides `out_dir` from the config.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Compare the discrete steady solver against the closed-form oracle
    /// over a mesh refinement set.
    Steady(CommonArgs),
    /// Evolve the limit problem and write its trajectory.
    EvolveLimit(CommonArgs),
    /// Evolve the wall problem for every eps in the sweep list.
    EvolveEps(CommonArgs),
    /// Run the full eps sweep with weak-form pairing gaps.
    Sweep(CommonArgs),
    /// Write the energy dissipation residual series.
    Dissipation(CommonArgs),
}

fn load(args: &CommonArgs) -> Result<(RunConfig, PathBuf)> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            parse_config(&text)?
        }
        None => RunConfig::default(),
    };
    if let Some(out) = &args.out {
        cfg.out_dir = out.display().to_string();
    }
    let out_dir = PathBuf::from(&cfg.out_dir);
    std::fs::create_dir_all(&out_dir).map_err(|source| Error::Io {
        path: out_dir.clone(),
        source,
    })?;
    Ok((cfg, out_dir))
}

fn initial_state(cfg: &RunConfig) -> Result<(LimitState, LimitMesh)> {
    let data = cfg.initial_data();
    let m = cfg.limit_mesh()?;
    let y0 = LimitState::from_profiles(&m, |x| data.u0(x), |x| data.v0(x), data.z0())?;
    Ok((y0, m))
}

fn cmd_steady(args: &CommonArgs) -> Result<()> {
    let (cfg, out_dir) = load(args)?;
    let p = cfg.params()?;
    let mut rows = Vec::new();
    for n in [32usize, 64, 128, 256] {
        let m = LimitMesh::new(&p, n, n)?;
        let sys = assemble_limit_system(&p, &m);
        let cases: [(&str, ResolventData); 3] = [
            ("point", ResolventData::point_source(&m, 1.0)?),
            ("rod1", ResolventData::sample(&m, |_| 1.0, |_| 0.0, 0.0)?),
            (
                "smooth",
                ResolventData::sample(&m, |x| (2.0 * x).cos(), |x| x * (1.0 - x), 0.4)?,
            ),
        ];
        for (name, d) in cases {
            let discrete = solve_steady_discrete(&sys, &d, &p, &m)?;
            let oracle = steady_closed_form(&d, &p, &m)?;
            let away = 0.125 * p.l1.min(p.l2);
            let mut err: f64 = 0.0;
            let mut err_away: f64 = 0.0;
            for i in 0..=m.n1() {
                let e = (discrete.u(i) - oracle.u(i)).abs();
                err = err.max(e);
                if m.x1(i).abs() >= away {
                    err_away = err_away.max(e);
                }
            }
            for j in 0..=m.n2() {
                let e = (discrete.v(j) - oracle.v(j)).abs();
                err = err.max(e);
                if m.x2(j).abs() >= away {
                    err_away = err_away.max(e);
                }
            }
            rows.push((name.to_string(), n, err, err_away));
        }
    }
    let path = out_dir.join("steady.csv");
    write_steady_csv(&rows, &path)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_evolve_limit(args: &CommonArgs) -> Result<()> {
    let (cfg, out_dir) = load(args)?;
    let p = cfg.params()?;
    let (y0, m) = initial_state(&cfg)?;
    let traj = evolve_limit(&y0, cfg.dt, cfg.t_end, cfg.theta, &p, &m)?;
    let path = out_dir.join("trajectory.csv");
    write_trajectory_csv(&traj.thinned(cfg.stride), &path)?;
    let last = traj.state(traj.len() - 1);
    println!(
        "wrote {} (final E = {}, z = {})",
        path.display(),
        fmt_f64(traj.energy()[traj.len() - 1]),
        fmt_f64(last.z())
    );
    Ok(())
}

fn cmd_evolve_eps(args: &CommonArgs) -> Result<()> {
    let (cfg, out_dir) = load(args)?;
    let p = cfg.params()?;
    let data = cfg.initial_data();
    for (idx, &eps) in cfg.eps_list.iter().enumerate() {
        let m = cfg.eps_mesh(eps)?;
        let y0 = lift_initial_data(|x| data.u0(x), |x| data.v0(x), data.z0(), &m)?;
        let traj = evolve_eps(&y0, cfg.dt, cfg.t_end, cfg.theta, &p, &m)?;
        let path = out_dir.join(format!("trajectory_eps_{idx}.csv"));
        write_eps_trajectory_csv(&traj.thinned(cfg.stride), &m, &path)?;
        println!("wrote {} (eps = {})", path.display(), fmt_f64(eps));
    }
    Ok(())
}

fn cmd_sweep(args: &CommonArgs) -> Result<()> {
    let (cfg, out_dir) = load(args)?;
    let report = run_sweep(&cfg)?;
    let path = out_dir.join("report.csv");
    write_report_csv(&report, &path)?;
    for row in &report.rows {
        let max_gap = row
            .gaps
            .iter()
            .flat_map(|g| g.gaps.iter())
            .fold(0.0_f64, |a, b| a.max(*b));
        println!(
            "eps = {:>8}: max gap = {}, sup|g_eps - z| = {}",
            row.eps,
            fmt_f64(max_gap),
            fmt_f64(row.g_sup_diff)
        );
    }
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_dissipation(args: &CommonArgs) -> Result<()> {
    let (cfg, out_dir) = load(args)?;
    let p = cfg.params()?;
    let (y0, m) = initial_state(&cfg)?;
    let traj = evolve_limit(&y0, cfg.dt, cfg.t_end, cfg.theta, &p, &m)?;
    let residuals = dissipation_residual(&traj)?;
    let path = out_dir.join("dissipation.csv");
    write_residual_csv(&traj.times()[..residuals.len()], &residuals, &path)?;
    let max = residuals.iter().fold(0.0_f64, |a, r| a.max(r.abs()));
    println!("wrote {} (max |resid| = {})", path.display(), fmt_f64(max));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Steady(args) => cmd_steady(args),
        Command::EvolveLimit(args) => cmd_evolve_limit(args),
        Command::EvolveEps(args) => cmd_evolve_eps(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Dissipation(args) => cmd_dissipation(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            if err.is_validation() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
