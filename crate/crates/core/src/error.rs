use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    #[error("edge list parse error on line {line}: {message}")]
    EdgeList { line: usize, message: String },

    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },

    /// An exhaustive computation was refused because its size exceeds a cap.
    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded { what: &'static str, size: u64, cap: u64 },

    #[error("block {block} is not valid for a modular partition: {reason}")]
    InvalidPartition { block: usize, reason: String },

    /// A documented precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    Domain(String),

    /// An internal invariant failed; always indicates a bug.
    #[error("internal invariant failed: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
