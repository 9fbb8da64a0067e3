use thiserror::Error;

/// Errors raised by the numerical and analysis layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },

    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),

    #[error("matrix is not Hermitian (|A - A†|_F = {0:e})")]
    NotHermitian(f64),

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("dimension {requested} exceeds the configured cap {cap}")]
    Capacity { requested: usize, cap: usize },

    #[error("Hermitian eigensolver did not converge within {0} iterations")]
    EigenNonConvergence(usize),

    #[error("state is not normalized (|ψ|² = {0})")]
    NotNormalized(f64),

    #[error("not a projector: {0}")]
    NotProjector(String),

    #[error("projectors do not commute (|PQ - QP|_F = {0:e}); use the non-commuting conjunction")]
    NonCommuting(f64),

    #[error("alternating product did not converge after {iterations} squarings (last delta {delta:e})")]
    Convergence { iterations: usize, delta: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("characteristic functions live on different grids ({0} vs {1} cells)")]
    GridMismatch(usize, usize),

    #[error("branch recursion needs {steps} branching steps, cap is {cap}")]
    RecursionDepth { steps: usize, cap: usize },

    #[error("{0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Parse(#[from] crate::circuit::ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
