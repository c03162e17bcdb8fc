use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix must be square with dimension >= 1, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix has a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("eigenvalue iteration did not converge within {iterations} sweeps")]
    NonConvergence { iterations: usize },
    #[error("matrix 1-norm {norm:e} exceeds the exponential safety cap {cap:e}")]
    OverflowRisk { norm: f64, cap: f64 },
    #[error("matrix is numerically singular")]
    SingularMatrix,
    #[error("monodromy eigenvector matrix is numerically singular (condition {condition:e})")]
    DefectiveMonodromy { condition: f64 },
    #[error("rotation angle undefined: r(k) = 0")]
    DegenerateDirection,
    #[error("effective Hamiltonian direction undefined at exceptional point (x = {x})")]
    ResonanceSingularity { x: f64 },
    #[error("state is not normalized (2-norm {norm})")]
    NotNormalized { norm: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
