use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Lie type {family}{rank}: {reason}")]
    InvalidType {
        family: char,
        rank: usize,
        reason: &'static str,
    },
    #[error("weight has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("not a root: {0}")]
    NotARoot(String),
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("weight {weight:?} is not {p}-restricted")]
    NotRestricted { weight: Vec<i64>, p: u64 },
    #[error("orbit of size {size} exceeds cap {cap}")]
    OrbitTooLarge { size: String, cap: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("character subtraction went negative at weight {0:?}")]
    NegativeMultiplicity(Vec<i64>),
    #[error("invalid subgroup parameters: {0}")]
    InvalidParams(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
