use symcore::SymMatrix;

use crate::anchor::KktAnchor;
use crate::error::LimitDynError;
use crate::limitmap::limit_map_iterative;
use crate::span::{constrained_span_basis, distance_to_span, pattern_units, PatternBlocks};

/// Verifies the quadratic scaling of the limit map: the limit along `t * h`
/// must equal `t^2` times the limit along `h`. Returns the relative error.
pub fn two_homogeneity_check(
    anchor: &KktAnchor,
    h: &SymMatrix,
    t: f64,
    max_iters: usize,
    tol: f64,
) -> Result<f64, LimitDynError> {
    let base = limit_map_iterative(anchor, h, max_iters, tol)?;
    let scaled = limit_map_iterative(anchor, &h.scale(t), max_iters, tol * t * t)?;
    let expected = base.psi_z.scale(t * t);
    let denom = expected.norm();
    let err = scaled.psi_z.axpy(-1.0, &expected).norm();
    Ok(if denom > 0.0 { err / denom } else { err })
}

/// Distance diagnostics between the limit of the splitting increments and
/// the affine hull of the stalled cone.
#[derive(Debug, Clone)]
pub struct RangeReport {
    /// Frobenius distance from the limit to the affine hull.
    pub distance: f64,
    pub psi_norm: f64,
    /// Present when the caller declares one-sided solution-set uniqueness;
    /// true iff the distance is negligible, as the theory then predicts.
    pub included: Option<bool>,
}

/// Builds the affine hull of the stalled cone (its structural pattern with
/// the semidefinite inequalities dropped) and reports the distance of the
/// limit direction to it. Inclusion holds under one-sided uniqueness of the
/// solution sets, which is a caller-supplied declaration.
pub fn range_inclusion_check(
    anchor: &KktAnchor,
    h: &SymMatrix,
    declared_unique: bool,
    max_iters: usize,
    tol: f64,
) -> Result<RangeReport, LimitDynError> {
    let result = limit_map_iterative(anchor, h, max_iters, tol)?;

    let primal_units = pattern_units(
        anchor,
        PatternBlocks {
            primal_core: true,
            primal_cross: true,
            dual_core: false,
            dual_cross: false,
        },
    );
    let dual_units = pattern_units(
        anchor,
        PatternBlocks {
            primal_core: false,
            primal_cross: false,
            dual_core: true,
            dual_cross: true,
        },
    );
    let p = &anchor.problem;
    let mut basis = constrained_span_basis(&primal_units, |u| p.apply_a(u));
    basis.extend(constrained_span_basis(&dual_units, |u| {
        crate::span::vec_iso(&p.project_orth(u))
    }));

    let distance = distance_to_span(&basis, &result.psi_z);
    let psi_norm = result.psi_z.norm();
    let included = declared_unique.then(|| distance <= 1e-8 * (1.0 + psi_norm));
    Ok(RangeReport {
        distance,
        psi_norm,
        included,
    })
}
