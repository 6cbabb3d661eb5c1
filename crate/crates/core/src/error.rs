use thiserror::Error;

use crate::roadmap::{EdgeId, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("probability {0} is outside [0, 1]")]
    ProbabilityDomain(f64),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("configuration has a non-finite coordinate")]
    NonFiniteCoordinate,

    #[error("vertex {0} does not exist")]
    UnknownVertex(VertexId),

    #[error("edge {0} does not exist")]
    UnknownEdge(EdgeId),

    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(VertexId, VertexId),

    #[error("edge {0} has already been evaluated")]
    AlreadyEvaluated(EdgeId),

    #[error("query not embeddable: no collision-free connection for the {0} configuration")]
    QueryNotEmbeddable(&'static str),

    #[error("roadmap has no attached query")]
    NoQuery,

    #[error("truth table has no entry for edge ({0}, {1})")]
    MissingTruth(VertexId, VertexId),

    #[error("invalid obstacle: {0}")]
    InvalidObstacle(String),

    #[error("terminal set is empty")]
    EmptyTerminals,

    #[error("source and sink sets overlap at vertex {0}")]
    OverlappingTerminals(VertexId),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn contract(message: impl Into<String>) -> Self {
        Error::Contract(message.into())
    }
}
