use thiserror::Error;

use crate::hypergraph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("edge index {index} out of range (hypergraph has {len} edges)")]
    EdgeOutOfRange { index: usize, len: usize },

    #[error("vertex {0} is not in the hypergraph")]
    UnknownVertex(VertexId),

    #[error("edge {edge:?} has fewer than two vertices")]
    EdgeTooSmall { edge: Vec<VertexId> },

    #[error("edge {edge:?} repeats vertex {vertex}")]
    RepeatedVertex {
        edge: Vec<VertexId>,
        vertex: VertexId,
    },

    #[error("edge {0} has a single vertex")]
    DegenerateEdge(usize),

    #[error("contraction set is empty")]
    EmptyContraction,

    #[error("hypergraph has no cycles")]
    Acyclic,

    #[error("hypergraph is not uniform")]
    NonUniform,

    #[error("hypothesis not met: {0}")]
    HypothesisUnmet(String),

    #[error("{what} budget exceeded: need {needed}, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: String,
        budget: u64,
    },

    #[error("hypergraph has {0} vertices; the bitmask kernels support at most 128")]
    TooManyVertices(usize),

    #[error("denominator vanishes at k = {0}")]
    ZeroDenominator(i64),

    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("json: {0}")]
    Json(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn budget(what: &'static str, needed: impl ToString, budget: u64) -> Self {
        Error::BudgetExceeded {
            what,
            needed: needed.to_string(),
            budget,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
