use thiserror::Error;

/// Errors raised by the symbolic engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("unbounded index")]
    UnboundedIndex,
    #[error("filtration index must be positive, got {0}")]
    NonPositiveIndex(String),
    #[error("point {0} is outside the closed interval [0,1]")]
    PointOutOfRange(String),
    #[error("zero has no square class")]
    ZeroElement,
    #[error("isotropic pair: product {0} is a square")]
    IsotropicPair(String),
    #[error("trivial square class has no sign character")]
    TrivialTau,
    #[error("non-generic character: {0}")]
    NonGeneric(String),
    #[error("depth incompatible with ramification: {0}")]
    DepthParity(String),
    #[error("character does not live on the given torus")]
    TorusMismatch,
    #[error("invalid character of k^x: {0}")]
    InvalidCharacter(String),
    #[error("invalid cuspidal parameter: {0}")]
    InvalidCuspidal(String),
    #[error("invalid Shalika parameter: {0}")]
    InvalidShalika(String),
    #[error("truncation below depth: D = {max_depth} < depth {depth}")]
    TruncationBelowDepth { max_depth: String, depth: String },
    #[error("scholium inapplicable: {0}")]
    ScholiumInapplicable(String),
    #[error("profile undecidable: {0}")]
    ProfileUndecidable(String),
    #[error("profile inconsistent with source: expected {expected}, observed {observed}")]
    ProfileMismatch { expected: String, observed: String },
    #[error("empty series")]
    EmptySeries,
    #[error("dimension identity precondition failed: {0}")]
    DimensionPrecondition(String),
    #[error("degree overflow")]
    DegreeOverflow,
}

pub type Result<T> = std::result::Result<T, Error>;
