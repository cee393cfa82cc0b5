use std::path::PathBuf;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter `{0}` must be strictly positive")]
    NonPositiveParameter(&'static str),

    #[error("{context}: expected {expected} values, got {got}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("source `{0}` evaluated to a non-finite value")]
    NonFiniteSource(&'static str),

    #[error("tridiagonal solve hit a vanishing pivot at row {row}")]
    SingularSystem { row: usize },

    #[error("incompatible initial data: {0}")]
    IncompatibleData(String),

    #[error("trajectory ends at t = {have} but the test function is supported up to t = {need}")]
    HorizonTooShort { have: f64, need: f64 },

    #[error("pairing reports come from different test functions: `{0}` vs `{1}`")]
    MismatchedTestFunction(String, String),

    #[error("need at least two trajectory samples")]
    TooFewSamples,

    #[error("config line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("config line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },

    #[error("invalid value for `{key}`: {msg}")]
    InvalidValue { key: String, msg: String },

    #[error("i/o failure on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("sweep failed at eps = {eps}: {source}")]
    AtEps {
        eps: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// True for errors caused by bad user input (config, parameters,
    /// initial data), as opposed to runtime failures. The CLI maps the
    /// former to exit code 1 and the latter to exit code 2.
    pub fn is_validation(&self) -> bool {
        match self {
            Error::NonPositiveParameter(_)
            | Error::IncompatibleData(_)
            | Error::Parse { .. }
            | Error::UnknownKey { .. }
            | Error::InvalidValue { .. } => true,
            Error::AtEps { source, .. } => source.is_validation(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
