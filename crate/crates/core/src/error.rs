use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("column `{0}` not found")]
    MissingColumn(String),

    #[error("no rows with a numeric target value")]
    NoRows,

    /// The target has no spread around its median, so dispersion-corrected
    /// objectives are undefined.
    #[error("degenerate target: {0}")]
    DegenerateTarget(String),

    #[error("empty input")]
    EmptyInput,

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("unknown proposition id {0}")]
    UnknownProposition(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("estimator `{estimator}` cannot bound objective `{objective}`")]
    EstimatorMismatch {
        estimator: &'static str,
        objective: String,
    },

    #[error("input of size {size} exceeds the configured cap of {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("invariant violated: {0}")]
    Invariant(String),
}
