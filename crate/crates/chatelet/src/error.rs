use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input must be nonzero")]
    ZeroInput,

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("{0} is not squarefree")]
    NotSquarefree(String),

    #[error("factor limit exceeded: composite cofactor of {bits} bits (limit {limit})")]
    FactorLimit { bits: u64, limit: u64 },

    #[error("invalid binary form: {0}")]
    InvalidForm(String),

    #[error("invalid surface data: {0}")]
    InvalidSurface(String),

    #[error("surface failed hypothesis validation: {0}")]
    ValidationFailed(String),

    #[error("multiquadratic basis merge failed: {0}")]
    BasisMerge(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("point violates torsor invariants: {0}")]
    InvalidPoint(String),

    #[error("partition property falsified: {0}")]
    PartitionFalsified(String),

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
