use thiserror::Error;

use crate::geometry::Segment;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degenerate geometry: {0}")]
    Degenerate(String),

    /// The input does not satisfy the connectivity assumption of the construction.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("vertex {vertex} has no neighbor within radius {radius}")]
    IsolatedVertex { vertex: usize, radius: f64 },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("property unattainable: {0}")]
    Unattainable(String),

    /// An internal invariant of a construction failed. Carries the offending edges.
    #[error("construction failed: {message} (witness: {witness:?})")]
    Construction {
        message: String,
        witness: Vec<Segment>,
    },

    #[error("exhaustive search over {n} points exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("exhaustive search exceeded its time budget; verdict unknown")]
    BudgetExhausted,

    #[error("no instance satisfied the precondition after {0} attempts; change the density")]
    SamplingExhausted(usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn construction(message: impl Into<String>, witness: Vec<Segment>) -> Self {
        Error::Construction {
            message: message.into(),
            witness,
        }
    }
}
