use jetcalc::{pi_minus_dd1, pi_minus_dd2, pi_plus_dd1, pi_plus_dd2};
use sdpmodel::SdpProblem;
use symcore::{psd_project, SymMatrix};

use crate::anchor::KktAnchor;
use crate::error::LimitDynError;

/// Backward residual of the one-step splitting recursion at `z`:
/// `delta(z) = -P(Pi_+(z) - X_feas) + P_perp(Pi_+(-z) - sigma C)`,
/// so that one step of the recursion maps `z` to `z + delta(z)`.
pub fn delta(
    problem: &SdpProblem,
    z: &SymMatrix,
    sigma: f64,
) -> Result<SymMatrix, LimitDynError> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(LimitDynError::InvalidSigma { sigma });
    }
    let x_part = psd_project(z)?;
    let neg_part = psd_project(&z.scale(-1.0))?;
    let range_term = problem.project_range(&x_part.axpy(-1.0, problem.feasible_point()));
    let orth_term = problem.project_orth(&neg_part.axpy(-sigma, problem.cost()));
    Ok(orth_term.axpy(-1.0, &range_term))
}

/// First directional derivative of the residual at the anchor:
/// `delta'(h) = -P Pi_+'(Z; h) - P_perp Pi_-'(Z; h)`.
pub fn delta_dd1(anchor: &KktAnchor, h: &SymMatrix) -> Result<SymMatrix, LimitDynError> {
    let plus = pi_plus_dd1(&anchor.z_bar, h)?;
    let minus = pi_minus_dd1(&anchor.z_bar, h)?;
    let term = anchor
        .problem
        .project_range(&plus)
        .axpy(1.0, &anchor.problem.project_orth(&minus));
    Ok(term.scale(-1.0))
}

/// Second directional derivative of the residual at the anchor:
/// `delta''(h, w) = -P Pi_+''(Z; h, w) - P_perp Pi_-''(Z; h, w)`.
pub fn delta_dd2(
    anchor: &KktAnchor,
    h: &SymMatrix,
    w: &SymMatrix,
) -> Result<SymMatrix, LimitDynError> {
    let plus = pi_plus_dd2(&anchor.z_bar, h, w)?;
    let minus = pi_minus_dd2(&anchor.z_bar, h, w)?;
    let term = anchor
        .problem
        .project_range(&plus)
        .axpy(1.0, &anchor.problem.project_orth(&minus));
    Ok(term.scale(-1.0))
}

/// Outcome of iterating the first-order dynamics to a fixed point.
#[derive(Debug, Clone)]
pub struct FirstOrderRun {
    pub h: SymMatrix,
    pub iterations: usize,
    pub residual: f64,
    pub converged: bool,
}

/// Iterates `h <- h + delta'(h)` until the update norm drops below `tol`.
/// The update operator is firmly nonexpansive, so the iteration converges to
/// a point of the stalled cone.
pub fn first_order_dynamics_run(
    anchor: &KktAnchor,
    h0: &SymMatrix,
    max_iters: usize,
    tol: f64,
) -> Result<FirstOrderRun, LimitDynError> {
    let mut h = h0.clone();
    let mut residual = f64::INFINITY;
    for k in 0..max_iters {
        let step = delta_dd1(anchor, &h)?;
        residual = step.norm();
        if residual <= tol {
            return Ok(FirstOrderRun {
                h,
                iterations: k,
                residual,
                converged: true,
            });
        }
        h = h.axpy(1.0, &step);
    }
    Ok(FirstOrderRun {
        h,
        iterations: max_iters,
        residual,
        converged: false,
    })
}
