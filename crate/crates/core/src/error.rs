use thiserror::Error;

/// Errors produced by graph construction, products and the solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("loop at vertex {0} in a graph that does not allow loops")]
    LoopNotAllowed(usize),

    /// The exact search refused to run because the input is larger than the
    /// configured guard. This is not a "no" answer.
    #[error("{what} refused: order {order} exceeds guard {limit}")]
    GuardExceeded {
        what: &'static str,
        order: usize,
        limit: usize,
    },

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    /// A theorem or formula was asked for on an instance outside its hypotheses.
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("decomposition condition fails for blocks ({i}, {j}) and vertices ({u}, {v})")]
    DecompositionCondition {
        i: usize,
        j: usize,
        u: usize,
        v: usize,
    },

    #[error(
        "assignment not symmetric: edge ({alpha},{a})-({beta},{b}) and ({alpha},{b})-({beta},{a}) carry different members"
    )]
    AsymmetricAssignment {
        alpha: usize,
        beta: usize,
        a: usize,
        b: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
