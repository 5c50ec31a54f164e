use thiserror::Error;

/// Errors raised while building anchors or evaluating limit-map operators.
#[derive(Debug, Error)]
pub enum LimitDynError {
    #[error(transparent)]
    Sym(#[from] symcore::SymError),

    #[error(transparent)]
    Sdp(#[from] sdpmodel::SdpError),

    #[error(transparent)]
    Jet(#[from] jetcalc::JetError),

    #[error("sigma must be positive and finite, got {sigma}")]
    InvalidSigma { sigma: f64 },

    #[error("matrix orders disagree: expected {expected}, got {got}")]
    OrderMismatch { expected: usize, got: usize },

    /// The supplied anchor pair fails the optimality check.
    #[error("anchor is not a KKT point: max residual {r_max:e} exceeds {tol:e}")]
    Kkt { r_max: f64, tol: f64 },

    /// Strict complementarity (or the block-support structure it implies)
    /// does not hold for the supplied certificate pair.
    #[error("strict complementarity violated: {reason}")]
    StrictComplementarity { reason: String },

    /// The direction is not in the stalled cone, so second-order operators
    /// built on it are undefined.
    #[error("direction is outside the stalled cone: first-order residual {residual:e} exceeds {tol:e}")]
    NotInCone { residual: f64, tol: f64 },

    /// The zero-block rotation is not block-diagonal across the
    /// complementarity split, contradicting the anchor's structure.
    #[error("anchor inconsistency: zero-block cross mass {off_block:e} exceeds {tol:e}")]
    AnchorInconsistency { off_block: f64, tol: f64 },
}
