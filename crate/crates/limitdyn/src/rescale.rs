use jetcalc::{pi_minus_dd1, pi_plus_dd1};
use symcore::SymMatrix;

use crate::anchor::{build_anchor, AnchorTols, KktAnchor};
use crate::error::LimitDynError;
use crate::limitmap::limit_map_iterative;

/// Result of transporting a stalled direction to a new penalty weight: the
/// re-anchored problem, the transported direction, and the predicted limit
/// pair obtained from the exact scaling law (the primal limit scales with
/// `sigma_new / sigma`, the dual limit inversely).
#[derive(Debug, Clone)]
pub struct SigmaRescale {
    pub anchor: KktAnchor,
    pub h_new: SymMatrix,
    pub psi_x_pred: SymMatrix,
    pub psi_s_pred: SymMatrix,
}

/// Transports `(anchor, h)` to the penalty weight `sigma_new`.
///
/// The direction transforms through the first directional derivatives of
/// the cone projections: its primal-side component is kept and its
/// dual-side component is scaled by `sigma_new / sigma`, which keeps it
/// stalled at the new anchor. The returned predictions come from evaluating
/// the limit map once at the original anchor and applying the scaling law.
pub fn sigma_rescale(
    anchor: &KktAnchor,
    h: &SymMatrix,
    sigma_new: f64,
    max_iters: usize,
    tol: f64,
) -> Result<SigmaRescale, LimitDynError> {
    if !(sigma_new.is_finite() && sigma_new > 0.0) {
        return Err(LimitDynError::InvalidSigma { sigma: sigma_new });
    }
    let ratio = sigma_new / anchor.sigma;
    let plus = pi_plus_dd1(&anchor.z_bar, h)?;
    let minus = pi_minus_dd1(&anchor.z_bar, h)?;
    let h_new = plus.axpy(ratio, &minus);

    let new_anchor = build_anchor(
        &anchor.problem,
        &anchor.x_bar,
        &anchor.s_bar,
        Some((&anchor.x_sc, &anchor.s_sc)),
        sigma_new,
        AnchorTols::default(),
    )?;

    let base = limit_map_iterative(anchor, h, max_iters, tol)?;
    Ok(SigmaRescale {
        anchor: new_anchor,
        h_new,
        psi_x_pred: base.psi_x.scale(ratio),
        psi_s_pred: base.psi_s.scale(1.0 / ratio),
    })
}
