use thiserror::Error;

/// Errors raised by the compiler toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input (line {line}): {msg}")]
    MalformedInput { line: usize, msg: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("decomposition does not implement the target graph: {0}")]
    UnverifiedInput(String),

    #[error("warm start violates the model: {0}")]
    InconsistentWarmStart(String),

    #[error("assignment is missing variable `{0}`")]
    MissingVariable(String),

    #[error("parse error (line {line}): {msg}")]
    Parse { line: usize, msg: String },

    #[error("solution does not verify: {0}")]
    InfeasibleSolution(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn malformed(line: usize, msg: impl Into<String>) -> Error {
    Error::MalformedInput {
        line,
        msg: msg.into(),
    }
}

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
