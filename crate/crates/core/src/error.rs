use thiserror::Error;

/// Errors shared across the crate. Variant names follow the per-operation
/// error contracts of the public API.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rotation system is not a plane embedding: Euler check failed (n={n}, m={m}, f={f})")]
    NotPlanarEmbedding { n: usize, m: usize, f: usize },

    #[error("graph is not connected")]
    Disconnected,

    #[error("graph is not simple: {0}")]
    NonSimple(String),

    #[error("unknown instance name: {0}")]
    UnknownName(String),

    #[error("operation requires all internal faces to be triangles")]
    NotMaximal,

    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("element is not colored with either color of the pair")]
    ColorNotInPair,

    #[error("chain does not satisfy the mixed Kempe chain conditions: {0}")]
    NotAnMChain(String),

    #[error("non-spiral structure mismatch: {0}")]
    StructureMismatch(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("instance too large for the exact oracle: {0}")]
    TooLarge(String),

    #[error("exact oracle exceeded its color cap {0}")]
    CapExceeded(usize),

    #[error("coloring does not cover all elements: {0}")]
    IncompleteColoring(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
