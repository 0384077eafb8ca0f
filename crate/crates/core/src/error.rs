use thiserror::Error;

use crate::monomial::Monomial;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient variable count mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("exponent overflow while multiplying monomials")]
    Overflow,

    #[error("{what} exceeds desk-scale bound: {value} > {limit}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("operation is undefined on the zero ideal")]
    ZeroIdeal,

    #[error("variable subset must be non-empty")]
    EmptySupport,

    #[error("variable index {index} is outside 1..={n}")]
    VariableOutOfRange { index: usize, n: usize },

    #[error("power must be positive")]
    ZeroPower,

    #[error("ideal is not equigenerated: found degrees {first} and {second}")]
    NotEquigenerated { first: u64, second: u64 },

    #[error("variable order is not a permutation of 1..={n}: {reason}")]
    NotPermutation { n: usize, reason: String },

    #[error("sequence is not a permutation of the minimal generators: {reason}")]
    NotGeneratorOrder { reason: String },

    #[error("{0} is not a minimal generator of the ideal")]
    NotAGenerator(Monomial),

    #[error("ideal lacks the non-pure dual exchange property: {witness} is not in the split quotient ideal")]
    NotNdep { witness: Monomial },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("parse error: {0}")]
    Parse(String),
}
