use alloc::string::String;

/// Errors raised by the coding primitives.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd(0, 0) is undefined")]
    ZeroGcd,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("element is zero where a nonzero element is required")]
    ZeroElement,
    #[error("polynomial {0:#x} is not primitive for the requested degree")]
    NotPrimitive(u32),
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("search exceeds capacity: {0}")]
    Capacity(String),
    #[error("generator matrix has rank {rank}, expected {k}")]
    RankDeficient { rank: usize, k: usize },
    #[error("code is not in systematic [I | P] form")]
    NotSystematic,
    #[error("catastrophic encoder: generator gcd is not a power of D")]
    Catastrophic,
    #[error("probability-domain recursion underflowed; use the log domain")]
    Underflow,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
