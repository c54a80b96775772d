use std::time::Duration;

use thiserror::Error;

use crate::graph::Edge;
use crate::solver::CutReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("graph order {order} exceeds the supported maximum of {max}")]
    OrderCap { order: usize, max: usize },

    #[error("vertex set must be nonempty")]
    EmptyVertexSet,

    #[error("({}, {}) is not an edge of the graph", .0.u(), .0.v())]
    NotAnEdge(Edge),

    #[error("order mismatch: left block {left}, right block {right}, matching {matching}")]
    OrderMismatch {
        left: usize,
        right: usize,
        matching: usize,
    },

    #[error("sigma is not a bijection on 0..{0}")]
    NotABijection(usize),

    #[error("invalid trace at node {path:?}: {reason}")]
    InvalidTrace { path: String, reason: String },

    #[error("dimension {n} exceeds the construction cap of {max}")]
    DimensionCap { n: usize, max: usize },

    #[error("level {h} out of range (admissible: {min}..={max})")]
    LevelOutOfRange { h: usize, min: usize, max: usize },

    #[error("removing the vertex set leaves {0} vertices; at least 2 are required")]
    TooFewRemaining(usize),

    #[error("input graph is disconnected")]
    Disconnected,

    #[error("graph order {order} exceeds the exhaustive-search gate of {gate}")]
    GateExceeded { order: usize, gate: usize },

    #[error("search budget of {budget:?} exhausted after {elapsed:?}")]
    Incomplete {
        budget: Duration,
        elapsed: Duration,
        best: Option<Box<CutReport>>,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    Usage(String),

    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),

    #[error("thread pool: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Caller-side mistakes: bad arguments, malformed inputs, violated
    /// preconditions.
    pub fn is_usage(&self) -> bool {
        !matches!(
            self,
            Error::Incomplete { .. } | Error::Io(_) | Error::ThreadPool(_)
        )
    }
}
