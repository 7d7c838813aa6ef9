//! Error type shared by every module in the crate.

/// Failure modes for construction, validation, and the numerical kernels.
///
/// Validation errors always name the worst offending quantity so a caller can
/// tell a genuinely bad input from one that merely sits outside tolerance.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CoreError {
    #[error("dimension mismatch: expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    DimensionMismatch {
        expected: usize,
        rows: usize,
        cols: usize,
    },

    #[error("subsystem dimensions must both be at least 2, got {d1}x{d2}")]
    BadDims { d1: usize, d2: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("matrix is not Hermitian: max |a_ij - conj(a_ji)| = {max_deviation:.3e}")]
    NotHermitian { max_deviation: f64 },

    #[error("trace is {trace:.12} + {imag:.3e}i, expected 1")]
    TraceNotOne { trace: f64, imag: f64 },

    #[error("matrix is not positive semi-definite: lambda_min = {lambda_min:.6e}")]
    NotPsd { lambda_min: f64 },

    #[error("state vector norm is {norm:.12}, expected 1")]
    NotNormalized { norm: f64 },

    #[error("mixing parameter must lie in [0, 1], got {q}")]
    MixingOutOfRange { q: f64 },

    #[error("mixing p = {p} exceeds the positivity limit p* = {p_star:.12}")]
    MixingBeyondPositivity { p: f64, p_star: f64 },

    #[error("witness direction undefined: {0}")]
    DegenerateWitness(String),

    #[error("parameter out of range: {0}")]
    InvalidParameter(String),

    #[error("SPA output at q = {q} is not positive semi-definite: lambda_min = {lambda_min:.6e}")]
    SpaNotPositive { q: f64, lambda_min: f64 },

    #[error("SPA assembly produced an unusable trace {trace:.6e}; check the map parameters")]
    SpaBadTrace { trace: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off:.3e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
