use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("position {pos} out of range for arity {arity}")]
    Position { pos: usize, arity: usize },
    #[error("maps live on different carriers")]
    CarrierMismatch,
    #[error("invalid carrier: {0}")]
    Carrier(String),
    #[error("inhomogeneous rule: {0}")]
    Inhomogeneous(String),
    #[error("degree mismatch: {0}")]
    Degree(String),
    #[error("malformed block data: {0}")]
    Shape(String),
    #[error("operator is not square-zero: {0}")]
    NotSquareZero(String),
    #[error("generator {0} missing from an untruncated set")]
    MissingGenerator(String),
    #[error("weight bound exceeded: {0}")]
    WeightBound(String),
    #[error("key not tabulated: {0}")]
    NotTabulated(String),
    #[error("symmetry violation: {0}")]
    Symmetry(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
