use crate::error::AdmmError;
use nalgebra::DVector;
use sdpmodel::{Iterate, SdpProblem};
use symcore::{psd_project, SymMatrix};

fn check_sigma(sigma: f64) -> Result<(), AdmmError> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(AdmmError::NonPositiveSigma { sigma });
    }
    Ok(())
}

/// Splits the splitting variable into its primal-dual pair:
/// `X = proj_psd(Z)` and `S = (1/sigma) proj_psd(-Z)`, so `Z = X - sigma S`.
pub fn split_z(z: &SymMatrix, sigma: f64) -> Result<(SymMatrix, SymMatrix), AdmmError> {
    check_sigma(sigma)?;
    let x = psd_project(z)?;
    let s = psd_project(&-z)?.scale(1.0 / sigma);
    Ok((x, s))
}

/// Recovers the multiplier the three-step iteration would compute from the
/// current `(X, S, sigma)`:
/// `y = (A A*)^-1 (sigma^-1 b - A(sigma^-1 X + S - C))`.
pub fn recover_dual(
    p: &SdpProblem,
    x: &SymMatrix,
    s: &SymMatrix,
    sigma: f64,
) -> Result<DVector<f64>, AdmmError> {
    check_sigma(sigma)?;
    let inner = &(&x.scale(1.0 / sigma) + s) - p.cost();
    let rhs = p.rhs().scale(1.0 / sigma) - p.apply_a(&inner);
    Ok(p.solve_gram(&rhs))
}

/// One sweep of the three-step ADMM:
/// `y+ = (A A*)^-1 (sigma^-1 b - A(sigma^-1 X + S - C))`,
/// `S+ = proj_psd(C - A* y+ - sigma^-1 X)`,
/// `X+ = X + sigma (S+ + A* y+ - C)`.
pub fn three_step_admm_step(p: &SdpProblem, it: &Iterate) -> Result<Iterate, AdmmError> {
    check_sigma(it.sigma)?;
    let y = recover_dual(p, &it.x, &it.s, it.sigma)?;
    let adj_y = p.apply_a_adj(&y);
    let s = psd_project(&(&(p.cost() - &adj_y) - &it.x.scale(1.0 / it.sigma)))?;
    let x = &it.x + &(&(&s + &adj_y) - p.cost()).scale(it.sigma);
    x.check_finite()?;
    s.check_finite()?;
    Ok(Iterate {
        x,
        y,
        s,
        sigma: it.sigma,
    })
}

/// One sweep of the equivalent Douglas-Rachford recursion on `Z`:
/// `Z+ = Z - P(proj_psd(Z) - X~) + P_perp(proj_psd(-Z) - sigma C)`,
/// with `X~` the cached minimum-norm feasible point.
pub fn one_step_drs_step(p: &SdpProblem, z: &SymMatrix, sigma: f64) -> Result<SymMatrix, AdmmError> {
    check_sigma(sigma)?;
    let pos = psd_project(z)?;
    let neg = psd_project(&-z)?;
    let next = &(z - &p.project_range(&(&pos - p.feasible_point())))
        + &p.project_orth(&(&neg - &p.cost().scale(sigma)));
    next.check_finite()?;
    Ok(next)
}
