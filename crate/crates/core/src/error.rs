use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two transformations (or a transformation and a set) live on chains of different sizes.
    #[error("domain mismatch: chain of size {left} vs chain of size {right}")]
    DomainMismatch { left: usize, right: usize },

    /// An argument lies outside the range an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// A predicate required by the operation does not hold for its input.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    /// A structured document (JSON) could not be decoded.
    #[error("decode error: {0}")]
    Decode(String),

    /// An enumeration selector is malformed.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// The requested computation exceeds a hard size budget.
    #[error("resource budget exceeded: {what} is {actual}, limit is {limit}")]
    Budget {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failure to read a transformation from its line format.
///
/// `position` is the 1-based index of the offending token, or 0 when the
/// problem concerns the line as a whole.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at token {position}: {kind}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty input")]
    Empty,
    #[error("`{0}` is not a positive integer")]
    NotAnInteger(String),
    #[error("image value {value} is outside 1..={n}")]
    OutOfRange { value: u64, n: usize },
    #[error("expected {expected} image values, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("chain size {0} exceeds the supported maximum of 255")]
    TooLong(usize),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
