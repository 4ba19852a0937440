//! Error type shared across the crate.

use thiserror::Error;

/// Errors reported by constructors and operations in this crate.
///
/// Mathematical negatives (a ring that is not simple, a stalled witness
/// search) are *values*, not errors; this type covers invalid inputs and
/// operations outside the supported catalog.
#[derive(Debug, Error)]
pub enum OreError {
    /// The modulus passed to a finite-field constructor is not prime.
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),

    /// A descriptor was built from invalid data (wrong degree, zero
    /// parameter, non-monic modulus, ...).
    #[error("invalid construction: {0}")]
    InvalidConstruction(String),

    /// A map kind is not defined on the given ring, or two maps that must
    /// be paired (a derivation and its twist) do not match.
    #[error("incompatible combination: {0}")]
    Incompatible(String),

    /// A structural law (homomorphism law, twisted Leibniz law) failed
    /// during construction-time validation.
    #[error("law violation: {0}")]
    LawViolation(String),

    /// The operation is not available for this ring class or map.
    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// A documented precondition does not hold for the given arguments.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Right division requires a monic divisor.
    #[error("right division requires a monic divisor")]
    NonMonicDivisor,

    /// A certificate provider could not reduce a coefficient to 1.
    #[error("certificate provider failed on coefficient {0}")]
    ProviderFailure(String),
}

pub type Result<T> = std::result::Result<T, OreError>;
