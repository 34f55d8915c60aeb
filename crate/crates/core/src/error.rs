use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("cannot mix scalars over N={0} and N={1}")]
    FieldMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("division by a non-monomial in a is not supported")]
    UnsupportedDivision,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
