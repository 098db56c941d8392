use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at u = {0}")]
    Pole(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator set is not a subset of S")]
    NotSubset,
    #[error("structural violation: {0}")]
    Structural(String),
    #[error("Coxeter matrix has an infinite entry for {0}, {1}")]
    InfiniteOrder(String, String),
    #[error("Coxeter matrices differ")]
    CoxeterMismatch,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("certificate does not verify: {0}")]
    Certificate(String),
    #[error("search limits exceeded: {0}")]
    SearchLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
