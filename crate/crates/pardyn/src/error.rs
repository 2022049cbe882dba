use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("point index {index} out of range (system has {size} points)")]
    PointOutOfRange { index: usize, size: usize },
    #[error("duplicate point name `{0}`")]
    DuplicatePoint(String),
    #[error("theta is not injective: `{first}` and `{second}` both map to `{image}`")]
    NotInjective {
        first: String,
        second: String,
        image: String,
    },
    #[error("`{0}` is not in the domain of theta")]
    NotInDomain(String),
    #[error("set is not invariant: theta moves `{0}` outside the set")]
    NotInvariant(String),
    #[error("rank function undefined at domain point `{0}`")]
    RankMissing(String),
    #[error("rank at `{0}` must be at least 1")]
    RankZero(String),
    #[error("rank assigned at `{0}`, which is not in the domain of theta")]
    RankOffDomain(String),
    #[error("section has fiber dimension {got} at `{point}`, expected {expected}")]
    SectionShape {
        point: String,
        expected: usize,
        got: usize,
    },
    #[error("function has {got} values, expected one per point ({expected})")]
    FunctionShape { expected: usize, got: usize },
    #[error("system has a cycle through `{0}`; the matrix model exists only for cycle-free systems")]
    CycleFound(String),
    #[error("measure violates constraint: {0}")]
    ConstraintViolated(String),
    #[error("not a probability measure: {0}")]
    BadMeasure(String),
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("truncation index {index} out of range for a ray of length {len}")]
    RayIndex { index: usize, len: usize },
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("size {size} too large for exhaustive enumeration (maximum {max})")]
    TooLarge { size: usize, max: usize },
    #[error("matrix model too large to materialize ({0} basis vectors)")]
    ModelTooLarge(String),
    #[error("invalid system file: {0}")]
    BadFile(String),
    #[error("invalid fraction `{0}`")]
    BadFraction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
