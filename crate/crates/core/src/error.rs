use thiserror::Error;

/// Errors raised by the algebra, distance and document layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus is reducible over GF({0})")]
    NotIrreducible(u32),
    #[error("modulus has degree {found}, expected monic degree {expected}")]
    DegreeMismatch { expected: usize, found: isize },
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("conjugation requires a field of square order (even extension degree)")]
    NotSquareField,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("polynomial degree {degree} exceeds m = {m}")]
    DegreeTooLarge { degree: usize, m: usize },
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
    #[error("block lengths differ: {0} vs {1}")]
    ModulusMismatch(usize, usize),
    #[error("enumeration of {q}^{dim} codewords exceeds the cap of {cap}")]
    EnumerationTooLarge { q: u32, dim: usize, cap: u64 },
    #[error("one-generator construction needs gcd(q, m) = 1 (q = {q}, m = {m})")]
    NotCoprimeCharacteristic { q: u32, m: usize },
    #[error("code is not generated by a single element")]
    NotOneGenerator,
    #[error("the smaller code is not contained in the larger one")]
    NotSubcode,
    #[error("code is not symplectic self-orthogonal")]
    NotSelfOrthogonal,
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("validation failed ({condition}): {message}")]
    Validation { condition: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
