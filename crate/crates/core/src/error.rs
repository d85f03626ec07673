//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("extension degree must be at least 1")]
    InvalidExtensionDegree,

    #[error("field size {q} exceeds the enumeration cap {cap}")]
    FieldTooLarge { q: u64, cap: u64 },

    #[error("operation requires an odd field size, got q = {q}")]
    RequiresOddField { q: u64 },

    #[error("nilpotency index must be at least 2, got {0}")]
    NilpotencyTooSmall(u32),

    #[error("zero has no multiplicative inverse")]
    ZeroInversion,

    #[error("element does not belong to this context")]
    ContextMismatch,

    #[error("element is not a unit")]
    NotAUnit,

    #[error("{n} does not divide {order}")]
    NotADivisor { n: u64, order: u64 },

    #[error("operation requires the base ring (prime-field coefficients)")]
    RequiresBaseRing,

    #[error("operation requires the extension ring")]
    RequiresExtensionRing,

    #[error("defining set over squares requires odd characteristic")]
    SquaresNeedOddCharacteristic,

    #[error("computation needs {required} elementary steps, over the cap {cap}")]
    BudgetExceeded { required: u128, cap: u128 },

    #[error("parameter overflow: {0}")]
    Overflow(&'static str),

    #[error("closed-form value is not an integer: {0}")]
    NonIntegralClosedForm(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("invalid weight: {0}")]
    InvalidWeight(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
