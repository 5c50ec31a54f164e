use nalgebra::DMatrix;
use symcore::{nsd_project, psd_project, SymMatrix};

use crate::anchor::KktAnchor;
use crate::error::LimitDynError;
use crate::frame::DirectionOps;
use crate::membership::{classes, IndexClass};

/// Which algorithm produced a [`LimitMapResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitMethod {
    Iterative,
    Decoupled,
}

/// The second-order limit triple of the splitting iteration along a stalled
/// direction: the limits of the per-iteration increments of the splitting
/// variable, the primal iterate, and the dual iterate.
#[derive(Debug, Clone)]
pub struct LimitMapResult {
    pub psi_z: SymMatrix,
    pub psi_x: SymMatrix,
    pub psi_s: SymMatrix,
    pub method: LimitMethod,
    pub iterations_used: usize,
    pub residual_estimate: f64,
    pub converged: bool,
}

/// Computes the limit triple by running the second-order iteration
/// `w <- P_perp theta(w) + P theta_perp(w) + psi_drive` from zero and
/// extracting the limit of its increments.
///
/// Two estimators are required to agree before stopping: the raw increment
/// and the Cesaro average `w_k / k`; the iteration is monotone but comes
/// with no convergence rate, so a single estimator could stop early.
pub fn limit_map_iterative(
    anchor: &KktAnchor,
    h: &SymMatrix,
    max_iters: usize,
    tol: f64,
) -> Result<LimitMapResult, LimitDynError> {
    let ops = DirectionOps::new(anchor, h, anchor.membership_tol(h))?;
    let p = &anchor.problem;

    let mut w = SymMatrix::zeros(anchor.order());
    let mut prev_delta: Option<SymMatrix> = None;
    let mut delta = SymMatrix::zeros(anchor.order());
    let mut residual = f64::INFINITY;
    let mut converged = false;
    let mut used = max_iters;
    for k in 1..=max_iters {
        let t = ops.theta(&w)?;
        let tp = ops.theta_perp(&w)?;
        let w_next = p
            .project_orth(&t)
            .axpy(1.0, &p.project_range(&tp))
            .axpy(1.0, &ops.psi_drive);
        delta = w_next.axpy(-1.0, &w);
        let cesaro_gap = delta.axpy(-1.0 / k as f64, &w_next).norm();
        if let Some(prev) = &prev_delta {
            residual = delta.axpy(-1.0, prev).norm();
            if residual <= tol && cesaro_gap <= 10.0 * tol {
                converged = true;
                used = k;
                w = w_next;
                break;
            }
        }
        prev_delta = Some(delta.clone());
        w = w_next;
    }
    let _ = w;

    let psi_z = delta;
    let psi_x = ops.theta(&psi_z)?;
    let psi_s = ops.theta_perp(&psi_z)?.scale(-1.0 / anchor.sigma);
    Ok(LimitMapResult {
        psi_z,
        psi_x,
        psi_s,
        method: LimitMethod::Iterative,
        iterations_used: used,
        residual_estimate: residual,
        converged,
    })
}

/// Which side of the polar-cone split a [`PolarConeSpec`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeSide {
    Primal,
    Dual,
}

/// Concrete description of one summand of the polar cone: a block-sparsity
/// pattern in rotated coordinates, a range/kernel condition through the
/// constraint projection, and a semidefinite constraint on one rotated
/// sub-block of the zero block.
#[derive(Debug, Clone)]
pub struct PolarConeSpec {
    pub side: ConeSide,
    /// Zero-block rotation (block-diagonal across the complementarity
    /// split), with the working-basis indices of its columns.
    pub q0: DMatrix<f64>,
    pub zero: Vec<usize>,
    /// Frame columns of the sub-block carrying the semidefinite constraint
    /// (PSD for the primal side, NSD for the dual side).
    pub psd_block: Vec<usize>,
    /// Allowed frame-column pairs inside the rotated zero block.
    pub zero_pattern: Vec<(usize, usize)>,
}

pub(crate) fn polar_cone_spec(ops: &DirectionOps<'_>, side: ConeSide) -> PolarConeSpec {
    let f = &ops.frame;
    let mut pattern = Vec::new();
    let push_all = |pattern: &mut Vec<(usize, usize)>, rows: &[usize], cols: &[usize]| {
        for &i in rows {
            for &j in cols {
                pattern.push((i, j));
            }
        }
    };
    match side {
        ConeSide::Primal => {
            push_all(&mut pattern, &f.sc1, &f.sc1);
            push_all(&mut pattern, &f.sc1, &f.sc2);
            push_all(&mut pattern, &f.sc1, &f.sc3);
            push_all(&mut pattern, &f.sc2, &f.sc2);
            PolarConeSpec {
                side,
                q0: f.q0.clone(),
                zero: f.zero.clone(),
                psd_block: f.sc2.clone(),
                zero_pattern: pattern,
            }
        }
        ConeSide::Dual => {
            push_all(&mut pattern, &f.sc2, &f.sc4);
            push_all(&mut pattern, &f.sc3, &f.sc3);
            push_all(&mut pattern, &f.sc3, &f.sc4);
            push_all(&mut pattern, &f.sc4, &f.sc4);
            PolarConeSpec {
                side,
                q0: f.q0.clone(),
                zero: f.zero.clone(),
                psd_block: f.sc3.clone(),
                zero_pattern: pattern,
            }
        }
    }
}

/// Projects onto the block-sparsity pattern of `spec` (level-1 blocks plus
/// the rotated zero-block pattern).
pub(crate) fn project_pattern(
    anchor: &KktAnchor,
    spec: &PolarConeSpec,
    m: &SymMatrix,
) -> SymMatrix {
    let n = anchor.order();
    let cls = classes(anchor);
    let mut out = SymMatrix::zeros(n);
    use IndexClass::*;
    for i in 0..n {
        for j in i..n {
            let (ci, cj) = (cls[i], cls[j]);
            let in_zero = matches!(ci, ZeroP | ZeroD) && matches!(cj, ZeroP | ZeroD);
            if in_zero {
                continue;
            }
            let keep = match spec.side {
                ConeSide::Primal => {
                    matches!((ci, cj), (Pos, Pos))
                        || matches!((ci, cj) , (Pos, ZeroP) | (Pos, ZeroD) | (ZeroP, Pos) | (ZeroD, Pos))
                }
                ConeSide::Dual => {
                    matches!((ci, cj), (Neg, Neg))
                        || matches!((ci, cj), (ZeroP, Neg) | (ZeroD, Neg) | (Neg, ZeroP) | (Neg, ZeroD))
                }
            };
            if keep {
                out.set(i, j, m.get(i, j));
            }
        }
    }
    // Rotated zero-block pattern.
    let n0 = spec.zero.len();
    if n0 > 0 {
        let v00 = DMatrix::from_fn(n0, n0, |i, j| m.get(spec.zero[i], spec.zero[j]));
        let hat = spec.q0.transpose() * v00 * &spec.q0;
        let mut kept = DMatrix::zeros(n0, n0);
        for &(i, j) in &spec.zero_pattern {
            kept[(i, j)] = hat[(i, j)];
            kept[(j, i)] = hat[(j, i)];
        }
        let back = &spec.q0 * kept * spec.q0.transpose();
        for i in 0..n0 {
            for j in i..n0 {
                out.set(
                    spec.zero[i],
                    spec.zero[j],
                    0.5 * (back[(i, j)] + back[(j, i)]),
                );
            }
        }
    }
    out
}

fn project_semidefinite(
    spec: &PolarConeSpec,
    m: &SymMatrix,
) -> Result<SymMatrix, LimitDynError> {
    let block = &spec.psd_block;
    if block.is_empty() {
        return Ok(m.clone());
    }
    let n0 = spec.zero.len();
    let v00 = DMatrix::from_fn(n0, n0, |i, j| m.get(spec.zero[i], spec.zero[j]));
    let mut hat = spec.q0.transpose() * v00 * &spec.q0;
    let sub = SymMatrix::from_fn(block.len(), |a, b| {
        0.5 * (hat[(block[a], block[b])] + hat[(block[b], block[a])])
    });
    let proj = match spec.side {
        ConeSide::Primal => psd_project(&sub)?,
        ConeSide::Dual => nsd_project(&sub)?,
    };
    for (a, &i) in block.iter().enumerate() {
        for (b, &j) in block.iter().enumerate() {
            hat[(i, j)] = proj.get(a, b);
        }
    }
    let back = &spec.q0 * hat * spec.q0.transpose();
    let mut out = m.clone();
    for i in 0..n0 {
        for j in i..n0 {
            out.set(
                spec.zero[i],
                spec.zero[j],
                0.5 * (back[(i, j)] + back[(j, i)]),
            );
        }
    }
    Ok(out)
}

/// Dykstra's alternating projections onto the intersection of the pattern
/// subspace, the constraint-range kernel subspace, and the semidefinite
/// sub-block constraint. Correction terms are carried only for the
/// semidefinite set; the two subspaces need none.
pub(crate) fn dykstra_project(
    anchor: &KktAnchor,
    spec: &PolarConeSpec,
    target: &SymMatrix,
    max_sweeps: usize,
    tol: f64,
) -> Result<(SymMatrix, usize, f64), LimitDynError> {
    let p = &anchor.problem;
    let mut x = target.clone();
    let mut correction = SymMatrix::zeros(anchor.order());
    let mut change = f64::INFINITY;
    for sweep in 1..=max_sweeps {
        let prev = x.clone();
        x = project_pattern(anchor, spec, &x);
        x = match spec.side {
            ConeSide::Primal => p.project_orth(&x),
            ConeSide::Dual => p.project_range(&x),
        };
        let y = x.axpy(1.0, &correction);
        x = project_semidefinite(spec, &y)?;
        correction = y.axpy(-1.0, &x);
        change = x.axpy(-1.0, &prev).norm();
        if change <= tol {
            return Ok((x, sweep, change));
        }
    }
    Ok((x, max_sweeps, change))
}

/// Computes the limit triple directly from the drift operators: the primal
/// limit is the polar-cone projection of the negated dual drift, and the
/// dual limit mirrors it.
pub fn limit_map_decoupled(
    anchor: &KktAnchor,
    h: &SymMatrix,
    dykstra_iters: usize,
    tol: f64,
) -> Result<LimitMapResult, LimitDynError> {
    let ops = DirectionOps::new(anchor, h, anchor.membership_tol(h))?;
    let frame_tol = anchor.membership_tol(h);
    if ops.frame.cross_mass > frame_tol {
        return Err(LimitDynError::AnchorInconsistency {
            off_block: ops.frame.cross_mass,
            tol: frame_tol,
        });
    }

    let primal_spec = polar_cone_spec(&ops, ConeSide::Primal);
    let dual_spec = polar_cone_spec(&ops, ConeSide::Dual);

    let (psi_x, it_x, res_x) = dykstra_project(
        anchor,
        &primal_spec,
        &ops.e_perp.scale(-1.0),
        dykstra_iters,
        tol,
    )?;
    let (v, it_s, res_s) =
        dykstra_project(anchor, &dual_spec, &ops.e.scale(-1.0), dykstra_iters, tol)?;
    let psi_s = v.scale(-1.0 / anchor.sigma);
    let psi_z = psi_x.axpy(-anchor.sigma, &psi_s);

    Ok(LimitMapResult {
        psi_z,
        psi_x,
        psi_s,
        method: LimitMethod::Decoupled,
        iterations_used: it_x.max(it_s),
        residual_estimate: res_x.max(res_s),
        converged: res_x <= tol && res_s <= tol,
    })
}

/// Exposes the polar-cone descriptions for a stalled direction.
pub fn polar_cone_specs(
    anchor: &KktAnchor,
    h: &SymMatrix,
) -> Result<(PolarConeSpec, PolarConeSpec), LimitDynError> {
    let ops = DirectionOps::new(anchor, h, anchor.membership_tol(h))?;
    Ok((
        polar_cone_spec(&ops, ConeSide::Primal),
        polar_cone_spec(&ops, ConeSide::Dual),
    ))
}

/// Projects `m` onto the pattern subspace of `spec`; exposed so the
/// commutation invariant between the pattern projection and the kernel
/// projection can be verified externally.
pub fn pattern_projection(anchor: &KktAnchor, spec: &PolarConeSpec, m: &SymMatrix) -> SymMatrix {
    project_pattern(anchor, spec, m)
}
