use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("ground set size {0} is out of range (1..={max})", max = crate::set::MAX_ELEMENTS)]
    GroundSize(usize),

    #[error("element {element} is outside the ground set of size {n}")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("ground set mismatch: expected n={expected}, got n={actual}")]
    GroundMismatch { expected: usize, actual: usize },

    #[error("element {0} is already in the set")]
    ElementPresent(usize),

    #[error("n={n} exceeds the enumeration budget of {limit}")]
    EnumerationBudget { n: usize, limit: usize },

    #[error("invalid function definition: {0}")]
    InvalidFunction(String),

    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),

    #[error("invalid noise parameters: {0}")]
    InvalidNoise(String),

    #[error("cannot draw {m} distinct {t}-subsets from a set of size {h}")]
    TooManySamples { h: usize, t: usize, m: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("point is outside the matroid polytope: {0}")]
    OutsidePolytope(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("instance generation failed: {0}")]
    Generation(String),

    #[error("instance format: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
