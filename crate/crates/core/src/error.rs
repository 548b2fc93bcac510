use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside the domain of the operation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// An experiment configuration could not be parsed or validated.
    #[error("invalid config: {0}")]
    Config(String),
    /// A numeric procedure failed at runtime (no bracket, no convergence).
    #[error("numeric failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Error {
        Error::InvalidArgument(msg.into())
    }
}
