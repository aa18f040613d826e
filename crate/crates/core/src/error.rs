use thiserror::Error;

/// Location-tagged failure from the polynomial text parser.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("mixed variable arity: {0} vs {1}")]
    MixedArity(usize, usize),
    #[error("injection is undefined on index {0}")]
    UndefinedIndex(u32),
    #[error("operation requires arity {expected}, found {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cap exceeded: {cap} (limit {limit})")]
    CapExceeded { cap: &'static str, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
