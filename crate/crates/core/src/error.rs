use thiserror::Error;

/// Errors raised by the library. Each variant maps to a stable CLI exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),
    #[error("unsupported request: {0}")]
    Unsupported(String),
    #[error("degenerate modular differential equation: {0}")]
    DegenerateMlde(String),
    #[error("relation violation: {0}")]
    RelationViolation(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
