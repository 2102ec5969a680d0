use thiserror::Error;

/// Errors raised by graph construction, the solvers and the instance codecs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range (graph has {n} vertices)")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("mapping is not injective: vertex {0} is used twice")]
    NotInjective(usize),
    #[error("mapping is not total: vertex {0} of H has no image")]
    NotTotal(usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("vertex set is not independent: edge {0} {1}")]
    NotIndependent(usize, usize),
    #[error("weight arithmetic overflowed 64 bits")]
    Overflow,
    #[error("H has no vertex cover of size at most {0}")]
    CoverTooLarge(usize),
    #[error("too large for oracle: {count} injections exceed cap {cap}")]
    OracleCapExceeded { count: u128, cap: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph is not cubic: vertex {0} has degree {1}")]
    NotCubic(usize, usize),
    #[error("graph is not a tree")]
    NotTree,
    #[error("no finite value to reconstruct")]
    InfiniteValue,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
