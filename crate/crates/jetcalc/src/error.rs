use thiserror::Error;

/// Errors produced while building eigen-structure descriptions or evaluating
/// jets.
#[derive(Debug, Error)]
pub enum JetError {
    /// Underlying symmetric-kernel failure (eigensolver, non-finite data).
    #[error(transparent)]
    Sym(#[from] symcore::SymError),

    /// The triplet members have different orders.
    #[error("triplet orders differ: z is {z}, h is {h}, w is {w}")]
    OrderMismatch { z: usize, h: usize, w: usize },
}
