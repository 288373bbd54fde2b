use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid problem specification: {0}")]
    InvalidSpec(String),

    #[error("invalid algorithm parameters: {0}")]
    InvalidParameters(String),

    #[error("input must not be empty")]
    EmptyInput,

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("point lies below the reference point in objective {objective}")]
    BelowReference { objective: usize },

    #[error("no individual is old enough to take part in survival selection")]
    NoEligibleIndividuals,
}
