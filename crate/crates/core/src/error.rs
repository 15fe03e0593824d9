use thiserror::Error;

/// Errors shared by every module of the crate.
///
/// The variants map one-to-one onto the command line exit codes: domain and
/// parse errors exit with 1, resource exhaustion with 2, invariant failures
/// with 3.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A precondition of an operation was violated by its input.
    #[error("domain error: {0}")]
    Domain(String),
    /// Input text did not match the expected file schema.
    #[error("parse error: {0}")]
    Parse(String),
    /// A hard resource cap (group order, search size) was exhausted.
    #[error("resource cap exhausted: {0}")]
    Resource(String),
    /// An internal invariant failed. Signals a bug, never bad input.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    /// Process exit status for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Parse(_) => 1,
            Error::Resource(_) => 2,
            Error::Invariant(_) => 3,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
