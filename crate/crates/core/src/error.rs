use thiserror::Error;

/// Errors raised by the library. Validation variants name the violated
/// invariant and the offending indices so callers can report them verbatim.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point index {index} out of range for a space of {n} points")]
    PointOutOfRange { index: usize, n: usize },

    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("invalid partition of unity: {0}")]
    InvalidPartition(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("schema violation at {pointer}: {message}")]
    Schema { pointer: String, message: String },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("search too large: {0}")]
    Infeasible(String),

    #[error("finder failed at iteration {iteration}: {source}")]
    FinderFailed {
        iteration: usize,
        #[source]
        source: Box<Error>,
    },

    /// A theorem guarantees an outcome that the implementation did not
    /// produce. Never expected; signals a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
