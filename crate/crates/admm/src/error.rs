use thiserror::Error;

/// Errors raised by the splitting solvers.
#[derive(Debug, Error)]
pub enum AdmmError {
    #[error(transparent)]
    Sym(#[from] symcore::SymError),

    #[error(transparent)]
    Sdp(#[from] sdpmodel::SdpError),

    /// The iteration produced a non-finite value; the index is the first
    /// iteration at which it was observed.
    #[error("non-finite value produced at iteration {iteration}")]
    Divergence { iteration: usize },

    #[error("sigma must be positive, got {sigma}")]
    NonPositiveSigma { sigma: f64 },
}
