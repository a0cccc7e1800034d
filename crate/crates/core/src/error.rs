use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected ambient {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("edge subset belongs to a different host graph")]
    HostMismatch,

    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex sets must be disjoint (both contain {0})")]
    OverlappingSets(usize),

    #[error("copy enumeration exceeded cap ({cap}); span would be incomplete")]
    Truncated { cap: usize },

    #[error("pattern graph must have at least one edge")]
    EmptyPattern,

    #[error("pattern graph too large: {v_h} vertices (limit {limit})")]
    PatternTooLarge { v_h: usize, limit: usize },

    #[error("kappa must be odd and >= 3, got {0}")]
    BadKappa(usize),

    #[error("domain violation: {0}")]
    Domain(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("bad graph file: {0}")]
    BadGraphFile(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
