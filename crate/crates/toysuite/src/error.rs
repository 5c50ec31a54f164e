use crate::oracle::ToyId;
use thiserror::Error;

/// Errors raised by the reference-instance oracles.
#[derive(Debug, Error)]
pub enum ToyError {
    /// Parameters belong to a different instance's direction family.
    #[error("parameters are for {got:?} but this oracle is {expected:?}")]
    ParamsMismatch { expected: ToyId, got: ToyId },
    /// Parameters violate the family constraints (sign conditions or
    /// non-finite values).
    #[error("parameters lie outside the direction family: {reason}")]
    OutOfFamily { reason: String },
    /// A non-positive or non-finite penalty parameter.
    #[error("sigma must be a positive finite number, got {sigma}")]
    InvalidSigma { sigma: f64 },
    /// The requested operation has no closed form for this instance.
    #[error("operation not available for {id:?}: {reason}")]
    Unsupported { id: ToyId, reason: String },
}
