use thiserror::Error;

use crate::spectral::SpectralResult;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge {edge} has wrong arity: expected {k} distinct vertices")]
    EdgeWrongArity { edge: usize, k: usize },

    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("duplicate edge {edge:?}")]
    DuplicateEdge { edge: Vec<usize> },

    #[error("invalid dimensions: {0}")]
    InvalidDimensions(String),

    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("infeasible request: {0}")]
    InfeasibleRequest(String),

    #[error("k = {k} is too small, this operation requires k >= {required}")]
    KTooSmall { k: usize, required: usize },

    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("vector is identically zero")]
    ZeroVector,

    #[error("vector entries must be finite")]
    NonFinite,

    #[error("alpha = {0} is outside [0, 1)")]
    InvalidAlpha(f64),

    #[error("hypergraph is not connected")]
    NotConnected,

    #[error("power iteration did not converge after {} iterations (bracket width {:e})", .0.iterations, .0.upper - .0.lower)]
    NoConvergence(Box<SpectralResult>),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("instance too large for exact search: n = {n} exceeds cap {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("hypergraph has no vertex cut")]
    NoCutExists,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    /// True for the errors that mean "the caller asked for something outside
    /// an operation's hypotheses" rather than a numerical or I/O failure.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::PreconditionViolated(_)
                | Error::KTooSmall { .. }
                | Error::NotConnected
                | Error::ArityMismatch { .. }
        )
    }
}
