use thiserror::Error;

/// Errors raised by the algebra and geometry routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input is well formed but violates a mathematical precondition.
    #[error("{0}")]
    Domain(String),
    /// Input could not be interpreted.
    #[error("{0}")]
    Parse(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
