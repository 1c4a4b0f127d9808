use thiserror::Error;

use crate::ring::RingSpec;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Smith normal form is not available over {0}")]
    UnsupportedRing(RingSpec),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("duplicate generator id `{0}`")]
    DuplicateGenerator(String),

    #[error("unknown generator id `{0}`")]
    UnknownGenerator(String),

    #[error("entry {from} -> {to} violates the degree rule: {detail}")]
    DegreeViolation {
        from: String,
        to: String,
        detail: String,
    },

    #[error("not a differential: d(d({0})) != 0")]
    NotADifferential(String),

    #[error("not a chain map: fails on generator `{0}`")]
    NotChainMap(String),

    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(RingSpec, RingSpec),

    #[error("short sequence is not exact in degree {degree} at {position}")]
    NotExact { degree: i64, position: String },

    #[error("window [{lo}, {hi}] has an empty safe range")]
    WindowTooSmall { lo: i64, hi: i64 },

    #[error("map does not intertwine the U-maps up to the supplied homotopy (generator `{0}`)")]
    NotIntertwining(String),

    #[error("J does not square to zero (generator `{0}`)")]
    JSquareNonzero(String),

    #[error("differential is not semi-positive: {0}")]
    SemiPositivityRequired(String),

    #[error("deck degree {0} is not supported here")]
    UnsupportedDeckDegree(i64),

    #[error("relation {0} is not homogeneous")]
    NonHomogeneousRelation(usize),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal mismatch: {0}")]
    InternalMismatch(String),
}
