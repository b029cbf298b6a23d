//! Error type shared by the kernel, constructions, the eliminator and the prover.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A ratio denominator, rational-expression denominator or lemma
    /// denominator is identically zero.
    #[error("division by zero: {0}")]
    DegenerateDenominator(String),

    #[error("unknown point `{0}`")]
    UnknownPoint(String),

    #[error("duplicate point `{0}`")]
    DuplicatePoint(String),

    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),

    #[error("prefix order {k} out of range 1..={max}")]
    PrefixOutOfRange { k: u32, max: u32 },

    #[error("construction is inconsistent at `{point}`: the negation of `{ndg}` is provable")]
    ConstructionInconsistent { point: String, ndg: String },

    #[error("invalid construction: {0}")]
    InvalidConstruction(String),

    #[error("cannot normalize `{0}` to an elimination-lemma shape")]
    UnsupportedShape(String),

    #[error("atom `{0}` has no area-coordinate rewrite")]
    UnsupportedAtom(String),

    #[error("construction needs at least two free points for an area-coordinate frame")]
    TooFewFreePoints,

    #[error("an odd power of the frame area survives area-coordinate reduction")]
    ResidualOddPower,

    #[error("no non-degenerate realization found after {0} attempts")]
    DegenerateAfterRetries(u32),

    #[error("ratio of non-parallel segments in numeric model: {0}")]
    NonParallelRatio(String),

    #[error("square root of a provably negative quantity: {0}")]
    SqrtOfNegative(String),

    #[error("square roots are not supported here: {0}")]
    SqrtUnsupported(String),

    #[error("radical arithmetic exceeded its depth budget")]
    RadicalDepthExceeded,

    #[error("recursion limit exceeded")]
    RecursionLimit,
}

pub type Result<T> = std::result::Result<T, Error>;
