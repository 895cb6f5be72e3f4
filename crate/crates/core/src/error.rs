use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid genus {0}: must be at least 1")]
    InvalidGenus(i64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The deformation coefficient lies outside `(0, 2*sqrt(c)/M)`.
    #[error("alpha = {alpha} outside the admissible range (0, {upper})")]
    AlphaOutOfRange { alpha: f64, upper: f64 },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("matrix is not hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("matrix X is not diagonal")]
    NotDiagonal,

    #[error("degenerate interval [{lo}, {hi}]")]
    DegenerateInterval { lo: f64, hi: f64 },

    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("invalid bracket [{lo}, {hi}]: endpoint values do not change sign")]
    InvalidBracket { lo: f64, hi: f64 },

    #[error("root refinement did not converge after {0} iterations")]
    NonConvergence(usize),

    /// A constraint of a construction failed; the payload names the inequality.
    #[error("constraint violated: {0}")]
    Constraint(String),

    /// A root whose existence is guaranteed was not found.
    #[error("existence violation: {0}")]
    Existence(String),

    /// The requested construction has no solution for these parameters.
    #[error("no solution: {0}")]
    Domain(String),

    #[error("incompatible parameters: {0}")]
    IncompatibleParams(String),

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph size {0} out of supported range")]
    GraphSizeOutOfRange(usize),

    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
