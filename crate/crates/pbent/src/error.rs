use std::fmt;
use std::io;

/// Crate-wide error type covering field construction, table I/O, spectral
/// classification, subspace geometry and search configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The given modulus is not a prime number.
    NotPrime(u32),
    /// The prime is outside the supported range 2..=13.
    UnsupportedPrime(u32),
    /// No built-in modulus is available for this (p, n) and none was supplied.
    UnsupportedField { p: u32, n: usize },
    /// p^n exceeds the supported domain size.
    DomainTooLarge { p: u32, n: usize },
    /// A user-supplied modulus polynomial is reducible.
    ReducibleModulus,
    /// A user-supplied modulus polynomial is irreducible but not primitive.
    NotPrimitive,
    /// A modulus polynomial is malformed (wrong degree, not monic, bad digits).
    BadModulus(String),
    /// A vector or table has the wrong length.
    WrongLength { expected: usize, got: usize },
    /// A digit is not a valid residue modulo p.
    DigitOutOfRange { digit: u32, p: u32 },
    /// A coefficient exponent is out of its allowed range.
    BadExponent { exp: u64, limit: u64 },
    /// A text payload (truth table, function spec) failed to parse.
    Format(String),
    Io(String),
    /// The function is not bent, so the requested derived data does not exist.
    NotBent,
    /// The function is bent but not weakly regular, so it has no bent dual.
    NoBentDual,
    /// A Walsh value of a bent function matched no admissible pattern;
    /// this indicates an internal inconsistency.
    SpectrumInconsistency(u32),
    /// The supplied coefficients are linearly dependent over F_p.
    DependentCoefficients,
    /// The supplied table is not a permutation.
    NotPermutation,
    /// A dimension parameter is outside its valid range.
    BadDimension { what: &'static str, value: usize, limit: usize },
    /// Two points that must be distinct are equal.
    EqualPoints,
    /// The vector to extend a subspace with already lies in the subspace.
    VectorInSubspace,
    /// A construction asserted to produce a bent function did not.
    BentAssertionFailed,
    /// No fixture is registered under the given name.
    UnknownFixture(String),
    /// An internal invariant was violated.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::UnsupportedPrime(p) => write!(f, "prime {p} is outside the supported range 2..=13"),
            Error::UnsupportedField { p, n } => {
                write!(f, "no built-in modulus for GF({p}^{n}); supply one explicitly")
            }
            Error::DomainTooLarge { p, n } => {
                write!(f, "domain F_{p}^{n} exceeds the supported size")
            }
            Error::ReducibleModulus => write!(f, "modulus polynomial is reducible"),
            Error::NotPrimitive => write!(f, "modulus polynomial is not primitive"),
            Error::BadModulus(msg) => write!(f, "bad modulus polynomial: {msg}"),
            Error::WrongLength { expected, got } => {
                write!(f, "wrong length: expected {expected}, got {got}")
            }
            Error::DigitOutOfRange { digit, p } => {
                write!(f, "digit {digit} is not a residue modulo {p}")
            }
            Error::BadExponent { exp, limit } => {
                write!(f, "exponent {exp} outside allowed range (< {limit})")
            }
            Error::Format(msg) => write!(f, "format error: {msg}"),
            Error::Io(msg) => write!(f, "i/o error: {msg}"),
            Error::NotBent => write!(f, "function is not bent"),
            Error::NoBentDual => {
                write!(f, "function is not weakly regular and has no bent dual")
            }
            Error::SpectrumInconsistency(u) => write!(
                f,
                "walsh value at point {u} matches no admissible pattern (internal inconsistency)"
            ),
            Error::DependentCoefficients => {
                write!(f, "coefficients are linearly dependent over F_p")
            }
            Error::NotPermutation => write!(f, "table is not a permutation"),
            Error::BadDimension { what, value, limit } => {
                write!(f, "{what} = {value} outside valid range (limit {limit})")
            }
            Error::EqualPoints => write!(f, "points must be distinct"),
            Error::VectorInSubspace => write!(f, "vector already lies in the subspace"),
            Error::BentAssertionFailed => write!(f, "construction did not produce a bent function"),
            Error::UnknownFixture(name) => write!(f, "unknown fixture {name:?}"),
            Error::Internal(msg) => write!(f, "internal inconsistency: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<io::Error> for Error {
    fn from(e: io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
