use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("deleting ({u}, {v}) would make its multiplicity negative")]
    NegativeMultiplicity { u: usize, v: usize },

    #[error("vertex connectivity needs at least two vertices (got {0})")]
    TooFewVertices(usize),

    #[error("brute-force search limited to {limit} vertices (got {n})")]
    TooLarge { n: usize, limit: usize },

    #[error("failure probability must lie in (0, 1), got {0}")]
    BadDelta(f64),

    #[error("index {index} out of range for universe of size {universe}")]
    IndexOutOfRange { index: u64, universe: u64 },

    #[error("sketches differ in seed or dimensions and cannot be merged")]
    SeedMismatch,

    #[error("sketch space {used} bytes exceeds the cap of {cap} bytes")]
    SpaceExceeded { used: u64, cap: u64 },

    #[error("vertex count must be at least 1")]
    BadN,

    #[error("insertion-only stream received a deletion of ({u}, {v})")]
    InsertionOnlyViolation { u: usize, v: usize },

    #[error("malformed instance: {0}")]
    BadShape(String),

    #[error("instance too small: {0}")]
    TooSmall(String),

    #[error("unknown graph name `{0}`")]
    UnknownName(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("malformed sketch encoding: {0}")]
    Decode(String),

    #[error("invalid parameter: {0}")]
    BadParam(String),
}
