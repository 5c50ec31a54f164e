use thiserror::Error;

/// Errors produced while building or using SDP problem data.
#[derive(Debug, Error)]
pub enum SdpError {
    #[error(transparent)]
    Sym(#[from] symcore::SymError),

    #[error("I/O failure reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Multi-block or diagonal-block files are not supported.
    #[error("unsupported block structure {block_sizes:?}: only a single positive block is accepted")]
    UnsupportedStructure { block_sizes: Vec<i64> },

    /// The constraint matrices fail the surjectivity assumption.
    #[error(
        "constraint matrices are numerically dependent: Gram eigenvalue ratio {ratio:.3e} below {floor:.3e}"
    )]
    DependentConstraints { ratio: f64, floor: f64 },

    #[error("operand order {got} does not match problem order {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("vector length {got} does not match constraint count {expected}")]
    ConstraintCountMismatch { expected: usize, got: usize },

    #[error("transform matrix is not orthonormal: ||Q^T Q - I|| = {deviation:.3e}")]
    NotOrthonormal { deviation: f64 },

    #[error("cached feasible point fails A(x) = b: residual {residual:.3e}")]
    FeasiblePointResidual { residual: f64 },
}
