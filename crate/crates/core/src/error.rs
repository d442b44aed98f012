use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not adjacent: {0} and {1}")]
    NotAdjacent(Vertex, Vertex),

    #[error("vertex {0} not in graph")]
    UnknownVertex(Vertex),

    #[error("vertex set is not a subset of the graph")]
    NotASubset,

    #[error("boundary size mismatch: {0} vs {1}")]
    BoundaryMismatch(usize, usize),

    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("exact width check out of configured range: w = {w}, w_max = {w_max}")]
    WidthOutOfRange { w: usize, w_max: usize },

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("unknown decomposition node: {0}")]
    UnknownNode(usize),

    #[error("DP only for c <= 2 (got c = {0})")]
    DpUnsupported(u32),

    #[error("independence check budget exceeded at vertex {0}")]
    IndependenceBudget(Vertex),

    #[error("isolated vertex in B side: {0}")]
    IsolatedInB(usize),

    #[error("replacement cache miss beyond budget (boundary {t}, searched up to {max_interior} interior vertices)")]
    ReplacementBudget { t: usize, max_interior: usize },

    #[error("degree invariant violated at vertex {0}")]
    DegreeInvariant(Vertex),

    #[error("precondition not met: {0}")]
    Precondition(String),

    #[error("invalid hitting set passed as input")]
    InvalidHittingSet,

    #[error("instance already rejected (k < 0)")]
    Rejected,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
