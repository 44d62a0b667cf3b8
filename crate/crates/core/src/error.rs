use thiserror::Error;

/// Errors raised by ring construction, matrix building and the verification pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid ring spec: {0}")]
    InvalidSpec(String),

    #[error("polynomial is not basic primitive: {check} failed")]
    NotBasicPrimitive { check: String },

    #[error("dimension {dim} exceeds cap {cap}")]
    DimensionCapExceeded { dim: u64, cap: u64 },

    #[error("elements belong to different rings")]
    RingMismatch,

    #[error("trace left a non-constant coefficient on xi^{index}; arithmetic bug")]
    TraceNotInBaseRing { index: usize },

    #[error("element is not a unit")]
    NotAUnit,

    #[error("element is not a zero divisor")]
    NotAZeroDivisor,

    #[error("matrix is not invertible modulo {modulus}")]
    NotInvertible { modulus: u64 },

    #[error("no basic primitive polynomial found for p={p}, s={s}, m={m}")]
    SearchSpaceExhausted { p: u64, s: u32, m: usize },

    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("oracle already queried {0} times")]
    OracleAlreadyQueried(usize),

    #[error("no basis amplitude exceeds {threshold}; largest is {largest}")]
    AmbiguousMeasurement { threshold: f64, largest: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
