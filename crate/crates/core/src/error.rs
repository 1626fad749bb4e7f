use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("coset action not transitive")]
    NotTransitive,
    #[error("group closure exceeds element cap {cap}")]
    CapExceeded { cap: usize },
    #[error("subgroup is not contained in the parent group: {0}")]
    NotSubset(String),
    #[error("not a subgroup element: {0}")]
    NotInSubgroup(String),
    #[error("identity has no separating quotient")]
    IdentityWitness,
    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("internal consistency violated: {0}")]
    Inconsistent(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
