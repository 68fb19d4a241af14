use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid density: {0}")]
    InvalidDensity(String),

    #[error("parameter out of range: {0}")]
    ParameterRange(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("tail budget exceeded: {0}")]
    TailBudget(String),

    #[error("dilation would truncate support: {0}")]
    DilationTruncated(String),

    #[error("solver failure: {0}")]
    Solver(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
