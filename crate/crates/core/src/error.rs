use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The observation window does not sit strictly inside `[0, T)`, or the
    /// normalization `lambda_t` would not be positive.
    #[error("invalid observation window: {0}")]
    InvalidWindow(String),

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    /// The requested operation needs a different range of `alpha`.
    #[error("regime error: {0}")]
    RegimeError(String),

    /// Outside the domain where a bound or quadrature is certified.
    #[error("domain error: {0}")]
    DomainError(String),

    /// The observed-information sum vanished.
    #[error("degenerate path: denominator sum is {0}")]
    DegeneratePath(f64),

    #[error("numerical failure: {message} (achieved tolerance {achieved:e})")]
    NumericalFailure { message: String, achieved: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("configuration error: {0}")]
    ConfigError(String),
}

impl Error {
    pub(crate) fn numerical(message: impl Into<String>, achieved: f64) -> Self {
        Error::NumericalFailure {
            message: message.into(),
            achieved,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
