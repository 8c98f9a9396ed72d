use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The transitive closure of the supplied relations contains a cycle.
    #[error("relations are not antisymmetric: {a} and {b} lie on a cycle")]
    Cycle { a: usize, b: usize },

    /// An index, symbol or parameter is outside its allowed range.
    #[error("out of bounds: {0}")]
    Bounds(String),

    /// An enumeration would exceed its configured cap.
    #[error("{what} count {count} exceeds cap {cap}")]
    Explosion { what: &'static str, count: u128, cap: u128 },

    /// Inputs with incompatible sizes were combined.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid weight table: {0}")]
    InvalidWeight(String),

    /// A method was called on an instance outside its domain.
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("the code has dimension 0")]
    TrivialCode,

    #[error("alphabet size {0} is not prime")]
    NonPrime(u32),

    /// A structural hypothesis of a check does not hold for the instance.
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    /// Two exact routes to the same quantity disagreed.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
