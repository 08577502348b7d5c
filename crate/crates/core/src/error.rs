use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymError {
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("sector `{0}` defines no braiding")]
    NoBraidingDefined(String),
    #[error("product label arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("sector kinds do not match: `{0}` vs `{1}`")]
    SectorMismatch(String, String),
    #[error("inadmissible fusion tree: {0}")]
    InadmissibleTree(String),
    #[error("charge mismatch: {0}")]
    ChargeMismatch(String),
    #[error("braiding unavailable: {0}")]
    BraidingUnavailable(String),
    #[error("permutation is not cyclic: {0}")]
    NotCyclic(String),
    #[error("trace pair does not match: {0}")]
    NonMatchingTracePair(String),
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("malformed network: {0}")]
    MalformedNetwork(String),
    #[error("sector `{0}` has no dense representation")]
    NoDenseRepresentation(String),
    #[error("map is not square: {0}")]
    NotSquare(String),
    #[error("map is not hermitian (deviation {0:.3e})")]
    NotHermitian(f64),
    #[error("map is not normal (deviation {0:.3e})")]
    NotNormal(f64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed serialized tensor: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, SymError>;
