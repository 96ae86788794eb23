//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Magnitude not representable in f64; carries the natural-log magnitude.
    #[error("magnitude out of range (ln|value| ~ {log_magnitude:.1})")]
    Range { log_magnitude: f64 },

    /// Pattern function evaluated at Re(gamma) = 0.
    #[error("pattern function pole: Re(gamma) = 0")]
    Pole,

    #[error("derivative order ({m},{n}) exceeds the supported total order {limit}")]
    UnsupportedOrder { m: u32, n: u32, limit: u32 },

    #[error("unsupported state: {0}")]
    UnsupportedState(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("data quality: {0}")]
    DataQuality(String),

    #[error("numerical inconsistency: {0}")]
    NumericalInconsistency(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
