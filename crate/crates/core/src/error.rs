use thiserror::Error;

use crate::graph::{EdgeId, Vertex};

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid shore: {0}")]
    InvalidShore(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),

    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),

    #[error("cuts belong to different host graphs")]
    ForeignCut,

    #[error("{what}: size {size} exceeds the limit {limit}")]
    LimitExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown graph name `{0}`")]
    UnknownGraph(String),

    /// A guaranteed construction failed its own verification. Always a bug.
    #[error("internal error: {0}")]
    Internal(String),

    #[error("json error at `{path}`: {message}")]
    Json { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
