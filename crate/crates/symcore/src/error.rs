use thiserror::Error;

/// Errors produced by the symmetric-matrix kernel.
#[derive(Debug, Error)]
pub enum SymError {
    /// Storage length does not match the triangular size for the stated order.
    #[error("storage length {len} does not match order {n} (expected {expected})")]
    StorageSize { n: usize, len: usize, expected: usize },

    /// Two operands have different matrix orders.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// A matrix entry is NaN or infinite.
    #[error("non-finite entry at ({i}, {j})")]
    NonFinite { i: usize, j: usize },

    /// The iterative eigensolver failed to converge.
    #[error("eigensolver failed to converge on a {n}x{n} matrix (norm {norm:.3e})")]
    EigenFailure { n: usize, norm: f64 },

    /// Angle requested for a matrix with zero Frobenius norm.
    #[error("angle undefined: operand has zero Frobenius norm")]
    ZeroNormAngle,
}
