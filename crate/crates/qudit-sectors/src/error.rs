use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension must be at least 2, got {0}")]
    BadDimension(u64),
    #[error("length or dimension mismatch: {0}")]
    Mismatch(String),
    #[error("enumeration guard exceeded: {size} > {limit}")]
    Guard { size: u128, limit: u128 },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("invalid stabilizer group: {0}")]
    InvalidGroup(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
