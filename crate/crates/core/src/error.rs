use thiserror::Error;

/// Errors raised by field, curve, sequence and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("size {size} exceeds the configured cap {cap}")]
    SizeCap { size: u128, cap: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("the zero function has valuation +infinity")]
    ZeroFunction,

    #[error("function has a pole at orbit place {0}")]
    PoleOnOrbit(usize),

    #[error("no curve found: {0}")]
    NoCurve(String),

    #[error("operands belong to different structures: {0}")]
    Mismatch(String),

    #[error("provenance is missing {0}")]
    MissingProvenance(&'static str),

    #[error("monomial count {count} exceeds the cap {cap}")]
    MonomialCap { count: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
