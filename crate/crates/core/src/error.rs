use thiserror::Error;

/// Errors raised by the alignment library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid noise parameters: {0}")]
    InvalidParams(String),

    #[error("invalid labeling: {0}")]
    InvalidLabeling(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("pair ({0}, {1}) was never queried")]
    MissingPair(usize, usize),

    #[error("pair ({0}, {1}) was already queried")]
    RepeatQuery(usize, usize),

    #[error("node {0} cannot be paired with itself")]
    IdentityPair(usize),

    #[error("node {node} out of range for n = {n}")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("answer {answer} out of range for k = {k}")]
    AnswerOutOfRange { answer: u32, k: u32 },

    #[error("cannot vote over an empty set")]
    EmptyVote,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("degenerate likelihood: {0}")]
    DegenerateLikelihood(String),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("grid mixes the small-bias and large-bias regimes")]
    RegimeMixing,

    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),

    #[error("malformed transcript: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
