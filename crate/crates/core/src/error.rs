use num_bigint::BigInt;
use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Malformed polynomial text; `offset` is the byte position of the problem.
    #[error("syntax error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("polynomial must be monic with integer coefficients")]
    NonMonic,

    /// The defining polynomial has a proper rational factor.
    #[error("reducible polynomial: {0}")]
    Reducible(String),

    #[error("matrix is singular")]
    SingularMatrix,

    /// `p` divides a ramification index, so the tame trace theory does not apply.
    #[error("wild ramification: Theorem hypotheses not met (p = {0})")]
    WildRamification(BigInt),

    #[error("undefined invariant: {0}")]
    UndefinedInvariant(String),

    /// A named hypothesis of a two-field comparison fails.
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("forms live over different places")]
    PlaceMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
