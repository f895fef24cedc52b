use thiserror::Error;

use crate::galois::Elem;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("GF({p}^{a}) exceeds the supported field size")]
    FieldTooLarge { p: u32, a: u32 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("modulus {0:?} is reducible")]
    ReducibleModulus(Vec<u32>),
    #[error("element {0} is not primitive")]
    NotPrimitive(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("field order {0} is not a square")]
    NotASquare(u32),
    #[error("duplicate interpolation node {0}")]
    DuplicateNode(Elem),
    #[error("divisibility violated: {0}")]
    Divisibility(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid recovering structure: {0}")]
    InvalidStructure(String),
    #[error("designed distance {0} is below 1")]
    DesignedDistanceTooSmall(i64),
    #[error("generator matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("erasure error: {0}")]
    Erasure(String),
    #[error("enumeration of {count} codewords exceeds the cap of {cap}")]
    CapExceeded { count: u128, cap: u128 },
    #[error("t = {t} outside the admissible range [{lo}, {hi}]")]
    OutOfRange { t: i64, lo: i64, hi: i64 },
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
