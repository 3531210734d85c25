use thiserror::Error;

use crate::poly::RationalPoly;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("extended gcd of two zero polynomials is undefined")]
    ZeroGcd,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("expected {expected} coefficients, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("minimal polynomial must be monic")]
    NotMonic,
    #[error("minimal polynomial must have degree at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("minimal polynomial is reducible over Q: factor {factor}")]
    Reducible { factor: RationalPoly },
    #[error("irreducibility could not be verified; pass allow_unverified to accept it anyway")]
    IrreducibilityUnverified,
    #[error("invalid conjugation: {0}")]
    InvalidConjugation(String),
    #[error("numeric root unavailable: {0}")]
    MissingNumericRoot(String),
    #[error("Newton iteration did not converge after {0} steps")]
    NoConvergence(usize),
    #[error("non-finite real value")]
    NonFinite,
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("cannot parse {0:?} as a rational number")]
    Parse(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("signal inner product vanishes on a nonzero signal")]
    DegenerateInnerProduct,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
