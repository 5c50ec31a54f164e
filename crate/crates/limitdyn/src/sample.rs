use rand::Rng;
use rand_distr_shim::standard_normal;
use symcore::{default_tols, eigen_decompose, SymMatrix};

use crate::anchor::{sub_matrix, KktAnchor};
use crate::error::LimitDynError;
use crate::ops::delta_dd1;
use crate::span::{constrained_span_basis, pattern_units, PatternBlocks};

/// Box-Muller standard normal; kept local to avoid an extra dependency.
mod rand_distr_shim {
    use rand::Rng;

    pub fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
        loop {
            let u: f64 = rng.gen::<f64>();
            if u > f64::MIN_POSITIVE {
                let v: f64 = rng.gen::<f64>();
                return (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos();
            }
        }
    }
}

fn bases(anchor: &KktAnchor, with_cross: bool) -> (Vec<SymMatrix>, Vec<SymMatrix>) {
    let p = &anchor.problem;
    let primal_units = pattern_units(
        anchor,
        PatternBlocks {
            primal_core: true,
            primal_cross: with_cross,
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
            dual_cross: with_cross,
        },
    );
    let primal = constrained_span_basis(&primal_units, |u| p.apply_a(u));
    let dual = constrained_span_basis(&dual_units, |u| {
        crate::span::vec_iso(&p.project_orth(u))
    });
    (primal, dual)
}

fn eig_min_max(m: &SymMatrix) -> Result<(f64, f64), LimitDynError> {
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

fn combine<R: Rng + ?Sized>(rng: &mut R, basis: &[SymMatrix], n: usize) -> SymMatrix {
    let mut out = SymMatrix::zeros(n);
    for b in basis {
        out = out.axpy(standard_normal(rng), b);
    }
    out
}

fn cross_mass(anchor: &KktAnchor, h: &SymMatrix) -> f64 {
    let mut sum = 0.0;
    for &i in anchor.pos.iter().chain(&anchor.zero_p) {
        for &j in &anchor.zero_d {
            sum += 2.0 * h.get(i, j) * h.get(i, j);
        }
    }
    for &i in &anchor.zero_p {
        for &j in &anchor.neg {
            sum += 2.0 * h.get(i, j) * h.get(i, j);
        }
    }
    sum.sqrt()
}

fn sample_with<R: Rng + ?Sized>(
    anchor: &KktAnchor,
    rng: &mut R,
    with_cross: bool,
    require_cross: bool,
) -> Result<Option<SymMatrix>, LimitDynError> {
    let n = anchor.order();
    let (primal, dual) = bases(anchor, with_cross);
    if primal.is_empty() && dual.is_empty() {
        return Ok(None);
    }
    if require_cross {
        // The complement of the tangent cone is nonempty only if the cross
        // blocks add genuine dimensions.
        let (tp, td) = bases(anchor, false);
        if primal.len() + dual.len() <= tp.len() + td.len() {
            return Ok(None);
        }
    }
    'attempt: for _ in 0..2000 {
        let mut h = combine(rng, &primal, n).axpy(1.0, &combine(rng, &dual, n));
        let norm = h.norm();
        if norm < 1e-8 {
            continue;
        }
        h = h.scale(1.0 / norm);
        // Rejection sampling on the semidefinite blocks keeps the law
        // simple; the blocks are small for the intended instances.
        let (p_min, _) = eig_min_max(&sub_matrix(&h, &anchor.zero_p))?;
        if p_min < -1e-12 {
            continue 'attempt;
        }
        let (_, d_max) = eig_min_max(&sub_matrix(&h, &anchor.zero_d))?;
        if d_max > 1e-12 {
            continue 'attempt;
        }
        if require_cross && cross_mass(anchor, &h) < 0.05 {
            continue 'attempt;
        }
        let tol = anchor.membership_tol(&h);
        if delta_dd1(anchor, &h)?.norm() > tol {
            continue 'attempt;
        }
        return Ok(Some(h));
    }
    Ok(None)
}

/// Samples a direction of the stalled cone (cross blocks allowed).
pub fn sample_stalled_direction<R: Rng + ?Sized>(
    anchor: &KktAnchor,
    rng: &mut R,
) -> Result<Option<SymMatrix>, LimitDynError> {
    sample_with(anchor, rng, true, false)
}

/// Samples a direction of the tangent cone to the KKT set.
pub fn sample_tangent_direction<R: Rng + ?Sized>(
    anchor: &KktAnchor,
    rng: &mut R,
) -> Result<Option<SymMatrix>, LimitDynError> {
    sample_with(anchor, rng, false, false)
}

/// Samples a stalled direction with definite mass on the cross blocks, so
/// it lies outside the tangent cone. Returns `None` when the cross blocks
/// add no dimensions and no such direction exists.
pub fn sample_cone_complement_direction<R: Rng + ?Sized>(
    anchor: &KktAnchor,
    rng: &mut R,
) -> Result<Option<SymMatrix>, LimitDynError> {
    sample_with(anchor, rng, true, true)
}
