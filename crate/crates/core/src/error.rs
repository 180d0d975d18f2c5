use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported diagram: {0}")]
    UnsupportedDiagram(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("not a root of {system}: {vector:?}")]
    NotARoot { system: String, vector: Vec<i32> },

    #[error("roots are not mutually orthogonal: {0}")]
    NotOrthogonal(String),

    #[error("invalid seed: {0}")]
    InvalidSeed(String),

    #[error("unknown table row {row}; valid rows: {valid}")]
    UnknownTableRow { row: String, valid: String },

    #[error("orbit exceeds {0} members")]
    OrbitTooLarge(usize),

    #[error("orbit not admissible")]
    NotAdmissible,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency violated: {0}")]
    Consistency(String),

    #[error("well-definedness violated: {0}")]
    WellDefinedness(String),

    #[error("node {node} is not in the coefficient diagram")]
    NodeNotInC { node: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("fixture error: {0}")]
    Fixture(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
