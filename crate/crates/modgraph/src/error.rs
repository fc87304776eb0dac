use thiserror::Error;

/// Errors for graph, tree and class operations.
#[derive(Debug, Error)]
pub enum Error {
    /// A documented precondition was violated by the caller.
    #[error("contract violation: {0}")]
    Contract(String),
    /// A series or integral evaluation was requested outside the radius of
    /// convergence.
    #[error("divergence: {0}")]
    Divergence(String),
    /// A truncated evaluation could not certify the requested tolerance.
    #[error("truncation: {0}")]
    Truncation(String),
    /// Condition (C) does not hold for the class, so the requested constants
    /// do not exist.
    #[error("condition (C) fails: {0}")]
    ConditionC(String),
    /// A numeric routine failed (root not bracketed, non-finite value).
    #[error("numeric: {0}")]
    Numeric(String),
    /// No object of the requested size exists in the class.
    #[error("no object: {0}")]
    NoObject(String),
    /// Refusal to run an operation past its supported size.
    #[error("refused: {0}")]
    Refused(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}

/// Parse error for the text formats, with a 1-based line number.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(line: usize, msg: impl Into<String>) -> Self {
        ParseError {
            line,
            msg: msg.into(),
        }
    }
}
