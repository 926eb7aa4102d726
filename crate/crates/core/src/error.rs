use alloc::string::String;

use crate::tracts::Tract;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("n = {n} exceeds the supported maximum {max}")]
    Capacity { n: usize, max: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("tract mismatch: {0} vs {1}")]
    TractMismatch(Tract, Tract),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = core::result::Result<T, Error>;
