use alloc::string::String;
use core::fmt;

use crate::poly::Poly;

/// Errors raised by the arithmetic layers and the solvers.
///
/// The solver-level retry logic dispatches on these variants: the
/// genericity-type failures (`GenericityFailure`, `NotInvertible`,
/// `NotCoprime`, `PrecisionFailure`, `NonSeparating`) are resolved by
/// drawing fresh random blocks; everything else is a hard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The modulus is not a prime below 2^62.
    InvalidModulus(u64),
    /// Inversion or division by zero in the base field.
    DivisionByZero,
    /// Modular inverse requested for non-coprime polynomials; carries the gcd.
    NotInvertible { gcd: Poly },
    /// CRT moduli (or an inverse in a decomposition) share a factor.
    NotCoprime,
    /// A sequence is too short for the requested operation.
    InsufficientTerms { needed: usize, got: usize },
    /// Mismatched dimensions.
    ShapeError(String),
    /// Input violates a documented precondition.
    InvalidInput(String),
    /// A randomized step produced an output that fails its certificate.
    GenericityFailure(&'static str),
    /// Rational reconstruction failed at every precision tried.
    PrecisionFailure,
    /// A linear form does not separate the points of a parametrization.
    NonSeparating,
    /// Retries exhausted.
    UnluckyRandomness { attempts: usize },
}

impl Error {
    /// True for failures that a fresh random draw may cure.
    pub fn is_retryable(&self) -> bool {
        matches!(
            self,
            Error::NotInvertible { .. }
                | Error::NotCoprime
                | Error::GenericityFailure(_)
                | Error::PrecisionFailure
                | Error::NonSeparating
        )
    }

    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::ShapeError(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidModulus(p) => write!(f, "modulus {p} is not a prime below 2^62"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NotInvertible { gcd } => {
                write!(f, "not invertible: gcd has degree {}", gcd.degree().unwrap_or(0))
            }
            Error::NotCoprime => write!(f, "moduli are not coprime"),
            Error::InsufficientTerms { needed, got } => {
                write!(f, "need {needed} sequence terms, got {got}")
            }
            Error::ShapeError(msg) => write!(f, "shape error: {msg}"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::GenericityFailure(what) => write!(f, "genericity failure: {what}"),
            Error::PrecisionFailure => write!(f, "rational reconstruction failed"),
            Error::NonSeparating => write!(f, "linear form does not separate the points"),
            Error::UnluckyRandomness { attempts } => {
                write!(f, "no successful random draw after {attempts} attempts")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
