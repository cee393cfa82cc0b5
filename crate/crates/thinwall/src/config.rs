//! Flat `key = value` run configuration.
//!
//! One assignment per line, `#` starts a comment, unknown keys are rejected,
//! missing keys take the documented defaults. Keys use the same names as the
//! quantities they set: the ten material constants (`c1`, `rho1`, `k1`,
//! `c2`, `rho2`, `k2`, `c`, `k`, `L1`, `L2`), mesh controls (`N1`, `N2`,
//! `Nw`), the sweep list `eps_list` (comma separated, strictly decreasing),
//! time controls (`dt`, `T`, `theta`), initial data (`preset`, `amplitude`),
//! and output controls (`out_dir`, `stride`).

use crate::error::{Error, Result};
use crate::mesh::{EpsMesh, LimitMesh};
use crate::params::{validate_params, PhysicalParams, RawParams};
use crate::presets::{InitialData, InitialPreset};
use crate::system::ThetaScheme;

/// Everything a run needs, with defaults for anything not set.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub raw: RawParams,
    pub n1: usize,
    pub n2: usize,
    pub nw: usize,
    /// Strictly decreasing positive wall half-widths, each below min(L1, L2).
    pub eps_list: Vec<f64>,
    pub dt: f64,
    pub t_end: f64,
    pub theta: ThetaScheme,
    pub preset: InitialPreset,
    pub amplitude: f64,
    pub out_dir: String,
    pub stride: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            raw: RawParams::default(),
            n1: 128,
            n2: 128,
            nw: 8,
            eps_list: vec![0.2, 0.1, 0.05, 0.025],
            dt: 1e-3,
            t_end: 0.5,
            theta: ThetaScheme::BackwardEuler,
            preset: InitialPreset::Bump,
            amplitude: 1.0,
            out_dir: "out".into(),
            stride: 1,
        }
    }
}

impl RunConfig {
    pub fn params(&self) -> Result<PhysicalParams> {
        validate_params(&self.raw)
    }

    pub fn limit_mesh(&self) -> Result<LimitMesh> {
        LimitMesh::new(&self.params()?, self.n1, self.n2)
    }

    pub fn eps_mesh(&self, eps: f64) -> Result<EpsMesh> {
        EpsMesh::new(&self.params()?, eps, self.n1, self.nw, self.n2)
    }

    pub fn initial_data(&self) -> InitialData {
        InitialData::new(self.preset, self.amplitude, self.raw.l1, self.raw.l2)
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64> {
    value.parse::<f64>().map_err(|_| Error::InvalidValue {
        key: key.into(),
        msg: format!("not a number: `{value}`"),
    })
}

fn parse_positive(key: &str, value: &str) -> Result<f64> {
    let v = parse_f64(key, value)?;
    if v <= 0.0 || !v.is_finite() {
        return Err(Error::InvalidValue {
            key: key.into(),
            msg: format!("must be strictly positive, got {value}"),
        });
    }
    Ok(v)
}

fn parse_count(key: &str, value: &str) -> Result<usize> {
    let v: usize = value.parse().map_err(|_| Error::InvalidValue {
        key: key.into(),
        msg: format!("not a cell count: `{value}`"),
    })?;
    if v < 2 {
        return Err(Error::InvalidValue {
            key: key.into(),
            msg: format!("must be >= 2, got {v}"),
        });
    }
    Ok(v)
}

/// Parses a config document; missing keys keep their defaults.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: line_no,
            msg: format!("expected `key = value`, got `{line}`"),
        })?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "c1" => cfg.raw.c1 = parse_positive(key, value)?,
            "rho1" => cfg.raw.rho1 = parse_positive(key, value)?,
            "k1" => cfg.raw.k1 = parse_positive(key, value)?,
            "c2" => cfg.raw.c2 = parse_positive(key, value)?,
            "rho2" => cfg.raw.rho2 = parse_positive(key, value)?,
            "k2" => cfg.raw.k2 = parse_positive(key, value)?,
            "c" => cfg.raw.c = parse_positive(key, value)?,
            "k" => cfg.raw.k = parse_positive(key, value)?,
            "L1" => cfg.raw.l1 = parse_positive(key, value)?,
            "L2" => cfg.raw.l2 = parse_positive(key, value)?,
            "N1" => cfg.n1 = parse_count(key, value)?,
            "N2" => cfg.n2 = parse_count(key, value)?,
            "Nw" => cfg.nw = parse_count(key, value)?,
            "dt" => cfg.dt = parse_positive(key, value)?,
            "T" => cfg.t_end = parse_positive(key, value)?,
            "theta" => {
                let v = parse_f64(key, value)?;
                cfg.theta = if v == 1.0 {
                    ThetaScheme::BackwardEuler
                } else if v == 0.5 {
                    ThetaScheme::CrankNicolson
                } else {
                    return Err(Error::InvalidValue {
                        key: key.into(),
                        msg: format!("only 0.5 and 1.0 are supported, got {value}"),
                    });
                };
            }
            "preset" => cfg.preset = value.parse()?,
            "amplitude" => {
                let v = parse_f64(key, value)?;
                if !v.is_finite() {
                    return Err(Error::InvalidValue {
                        key: key.into(),
                        msg: "must be finite".into(),
                    });
                }
                cfg.amplitude = v;
            }
            "out_dir" => cfg.out_dir = value.to_string(),
            "stride" => {
                let v: usize = value.parse().map_err(|_| Error::InvalidValue {
                    key: key.into(),
                    msg: format!("not a stride: `{value}`"),
                })?;
                if v == 0 {
                    return Err(Error::InvalidValue {
                        key: key.into(),
                        msg: "must be >= 1".into(),
                    });
                }
                cfg.stride = v;
            }
            "eps_list" => {
                let mut list = Vec::new();
                for piece in value.split(',') {
                    let piece = piece.trim();
                    if piece.is_empty() {
                        continue;
                    }
                    list.push(parse_positive(key, piece)?);
                }
                if list.is_empty() {
                    return Err(Error::InvalidValue {
                        key: key.into(),
                        msg: "must contain at least one value".into(),
                    });
                }
                cfg.eps_list = list;
            }
            other => {
                return Err(Error::UnknownKey {
                    line: line_no,
                    key: other.to_string(),
                })
            }
        }
    }
    validate(&cfg)?;
    Ok(cfg)
}

/// Cross-field checks shared by the parser and `run_sweep`.
pub fn validate(cfg: &RunConfig) -> Result<()> {
    validate_params(&cfg.raw)?;
    if cfg.t_end < cfg.dt {
        return Err(Error::InvalidValue {
            key: "T".into(),
            msg: format!("horizon {} shorter than one step {}", cfg.t_end, cfg.dt),
        });
    }
    if cfg.eps_list.is_empty() {
        return Err(Error::InvalidValue {
            key: "eps_list".into(),
            msg: "must contain at least one value".into(),
        });
    }
    let bound = cfg.raw.l1.min(cfg.raw.l2);
    for pair in cfg.eps_list.windows(2) {
        if pair[1] >= pair[0] {
            return Err(Error::InvalidValue {
                key: "eps_list".into(),
                msg: format!("must be strictly decreasing, got {:?}", cfg.eps_list),
            });
        }
    }
    if cfg.eps_list.iter().any(|e| *e >= bound) {
        return Err(Error::InvalidValue {
            key: "eps_list".into(),
            msg: format!("every entry must be below min(L1, L2) = {bound}"),
        });
    }
    Ok(())
}
