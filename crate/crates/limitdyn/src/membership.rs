use symcore::{default_tols, eigen_decompose, SymMatrix};

use crate::anchor::{sub_matrix, KktAnchor};
use crate::error::LimitDynError;
use crate::ops::delta_dd1;

/// Index class of a working-basis coordinate, in the four-way split used by
/// the stalled-cone structure: positive eigenvalues, primal-side zeros,
/// dual-side zeros, negative eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexClass {
    Pos,
    ZeroP,
    ZeroD,
    Neg,
}

pub(crate) fn classes(anchor: &KktAnchor) -> Vec<IndexClass> {
    let mut c = vec![IndexClass::ZeroP; anchor.order()];
    for &i in &anchor.pos {
        c[i] = IndexClass::Pos;
    }
    for &i in &anchor.zero_d {
        c[i] = IndexClass::ZeroD;
    }
    for &i in &anchor.neg {
        c[i] = IndexClass::Neg;
    }
    c
}

/// Block-pattern witness for the structural description of the stalled
/// cone: the direction splits into a primal part `U` (supported on the
/// upper-left pattern, with a PSD zero-block and zero constraint-range
/// component) and a dual part `V` (the mirror image), plus whatever mass
/// falls on the forbidden cross blocks.
#[derive(Debug, Clone)]
pub struct MembershipReport {
    /// True iff the first-order residual norm is below the tolerance.
    pub member: bool,
    /// Norm of `delta'(h)` at the anchor.
    pub residual: f64,
    /// True iff the block decomposition also satisfies every structural
    /// condition within the tolerance.
    pub structural_ok: bool,
    pub primal_part: SymMatrix,
    pub dual_part: SymMatrix,
    /// Mass on the forbidden (pos x neg) and (zeroP x zeroD) blocks.
    pub cross_norm: f64,
    /// Norm of the constraint-range component of the primal part.
    pub primal_range_norm: f64,
    /// Norm of the range-complement component of the dual part.
    pub dual_orth_norm: f64,
    /// Smallest eigenvalue of the primal zero block (must be >= -tol).
    pub primal_block_min_eig: f64,
    /// Largest eigenvalue of the dual zero block (must be <= tol).
    pub dual_block_max_eig: f64,
}

fn pattern_split(anchor: &KktAnchor, h: &SymMatrix) -> (SymMatrix, SymMatrix, f64) {
    let n = anchor.order();
    let cls = classes(anchor);
    let mut u = SymMatrix::zeros(n);
    let mut v = SymMatrix::zeros(n);
    let mut cross = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let val = h.get(i, j);
            let pair = (cls[i].min_pair(cls[j]), cls[i].max_pair(cls[j]));
            use IndexClass::*;
            match pair {
                (Pos, Pos) | (Pos, ZeroP) | (Pos, ZeroD) | (ZeroP, ZeroP) => u.set(i, j, val),
                (ZeroP, Neg) | (ZeroD, ZeroD) | (ZeroD, Neg) | (Neg, Neg) => v.set(i, j, val),
                (Pos, Neg) | (ZeroP, ZeroD) => {
                    let w = if i == j { 1.0 } else { 2.0 };
                    cross += w * val * val;
                }
                _ => unreachable!(),
            }
        }
    }
    (u, v, cross.sqrt())
}

impl IndexClass {
    fn rank(self) -> u8 {
        match self {
            IndexClass::Pos => 0,
            IndexClass::ZeroP => 1,
            IndexClass::ZeroD => 2,
            IndexClass::Neg => 3,
        }
    }
    fn min_pair(self, other: Self) -> Self {
        if self.rank() <= other.rank() {
            self
        } else {
            other
        }
    }
    fn max_pair(self, other: Self) -> Self {
        if self.rank() >= other.rank() {
            self
        } else {
            other
        }
    }
}

fn extreme_eig(m: &SymMatrix) -> Result<(f64, f64), LimitDynError> {
    if m.order() == 0 {
        return Ok((0.0, 0.0));
    }
    let (cluster, zero) = default_tols(m);
    let (dec, _) = eigen_decompose(m, cluster, zero)?;
    Ok((
        dec.lambdas.last().copied().unwrap_or(0.0),
        dec.lambdas.first().copied().unwrap_or(0.0),
    ))
}

/// Tests whether `h` lies in the stalled cone of the anchor: the first-order
/// residual must vanish within `tol`, and the structural block description
/// is evaluated alongside as an independent witness.
pub fn cone_c_membership(
    anchor: &KktAnchor,
    h: &SymMatrix,
    tol: f64,
) -> Result<MembershipReport, LimitDynError> {
    let residual = delta_dd1(anchor, h)?.norm();
    let (u, v, cross_norm) = pattern_split(anchor, h);
    let primal_range_norm = anchor.problem.project_range(&u).norm();
    let dual_orth_norm = anchor.problem.project_orth(&v).norm();
    let (p_min, _) = extreme_eig(&sub_matrix(h, &anchor.zero_p))?;
    let (_, d_max) = extreme_eig(&sub_matrix(h, &anchor.zero_d))?;
    let structural_ok = cross_norm <= tol
        && primal_range_norm <= tol
        && dual_orth_norm <= tol
        && p_min >= -tol
        && d_max <= tol;
    Ok(MembershipReport {
        member: residual <= tol,
        residual,
        structural_ok,
        primal_part: u,
        dual_part: v,
        cross_norm,
        primal_range_norm,
        dual_orth_norm,
        primal_block_min_eig: p_min,
        dual_block_max_eig: d_max,
    })
}

/// Tests membership in the tangent cone to the KKT set: stalled-cone
/// membership plus vanishing of the (pos u zeroP) x zeroD and zeroP x neg
/// cross blocks.
pub fn tangent_cone_membership(
    anchor: &KktAnchor,
    h: &SymMatrix,
    tol: f64,
) -> Result<bool, LimitDynError> {
    let report = cone_c_membership(anchor, h, tol)?;
    if !report.member {
        return Ok(false);
    }
    let mut cross = 0.0f64;
    for &i in anchor.pos.iter().chain(&anchor.zero_p) {
        for &j in &anchor.zero_d {
            cross += 2.0 * h.get(i, j) * h.get(i, j);
        }
    }
    for &i in &anchor.zero_p {
        for &j in &anchor.neg {
            cross += 2.0 * h.get(i, j) * h.get(i, j);
        }
    }
    Ok(cross.sqrt() <= tol)
}
