use nalgebra::{DMatrix, DVector};
use sdpmodel::{Iterate, SdpProblem};
use symcore::{default_tols, eigen_decompose, EigenPartition, SymMatrix};

use crate::error::LimitDynError;

/// Tolerances used when validating and assembling a [`KktAnchor`].
#[derive(Debug, Clone, Copy)]
pub struct AnchorTols {
    /// Maximum admissible KKT residual at the anchor pair.
    pub kkt_tol: f64,
    /// Threshold below which an eigenvalue counts as zero, relative to the
    /// matrix scale.
    pub zero_tol: f64,
    /// Maximum admissible off-diagonal mass for the anchor pair in the
    /// working basis before a change of basis is applied.
    pub diag_tol: f64,
}

impl Default for AnchorTols {
    fn default() -> Self {
        Self {
            kkt_tol: 1e-10,
            zero_tol: 1e-8,
            diag_tol: 1e-12,
        }
    }
}

/// A validated KKT point of a standard-form SDP, expressed in a working
/// basis where the optimal pair is diagonal, together with the eigenvalue
/// partition of the splitting variable and the complementarity split of its
/// zero block.
///
/// The index sets refer to positions in the working basis: `pos`/`neg` hold
/// the indices with positive/negative splitting-variable eigenvalue, and the
/// remaining (zero) indices are split into `zero_p` (reachable by the primal
/// solution set) and `zero_d` (reachable by the dual solution set), derived
/// from the supplied strictly complementary certificate pair.
#[derive(Debug, Clone)]
pub struct KktAnchor {
    pub problem: SdpProblem,
    pub x_bar: SymMatrix,
    pub s_bar: SymMatrix,
    pub y_bar: DVector<f64>,
    pub x_sc: SymMatrix,
    pub s_sc: SymMatrix,
    pub sigma: f64,
    pub z_bar: SymMatrix,
    /// Clustered sign partition of the spectrum of `z_bar`.
    pub level1: EigenPartition,
    /// Diagonal of `z_bar` in the working basis.
    pub lambdas: Vec<f64>,
    pub pos: Vec<usize>,
    pub zero_p: Vec<usize>,
    pub zero_d: Vec<usize>,
    pub neg: Vec<usize>,
    /// Absolute zero threshold used for the partition.
    pub zero_tol: f64,
}

impl KktAnchor {
    pub fn order(&self) -> usize {
        self.problem.order()
    }

    /// Zero-block indices in the canonical order: primal-side first, then
    /// dual-side. This order fixes the column layout of every second-level
    /// frame built on this anchor.
    pub fn zero(&self) -> Vec<usize> {
        let mut z = self.zero_p.clone();
        z.extend_from_slice(&self.zero_d);
        z
    }

    /// Indices covered by the primal solution set's range.
    pub fn p_side(&self) -> Vec<usize> {
        let mut p = self.pos.clone();
        p.extend_from_slice(&self.zero_p);
        p
    }

    /// Indices covered by the dual solution set's range.
    pub fn d_side(&self) -> Vec<usize> {
        let mut d = self.zero_d.clone();
        d.extend_from_slice(&self.neg);
        d
    }

    /// Default membership tolerance, scaled by the direction's size.
    pub fn membership_tol(&self, h: &SymMatrix) -> f64 {
        1e-8 * (1.0 + h.norm())
    }
}

fn off_diag_norm(m: &SymMatrix) -> f64 {
    let n = m.order();
    let mut sum = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            sum += 2.0 * m.get(i, j) * m.get(i, j);
        }
    }
    sum.sqrt()
}

fn recover_dual_multiplier(p: &SdpProblem, s: &SymMatrix) -> DVector<f64> {
    let target = p.cost().axpy(-1.0, s);
    p.solve_gram(&p.apply_a(&target))
}

fn eig_range(m: &SymMatrix) -> Result<(f64, f64), LimitDynError> {
    let (cluster, zero) = default_tols(m);
    let (dec, _) = eigen_decompose(m, cluster, zero)?;
    let min = dec.lambdas.last().copied().unwrap_or(0.0);
    let max = dec.lambdas.first().copied().unwrap_or(0.0);
    Ok((min, max))
}

fn rank_of(m: &SymMatrix, tol: f64) -> Result<usize, LimitDynError> {
    let (cluster, zero) = default_tols(m);
    let (dec, _) = eigen_decompose(m, cluster, zero)?;
    Ok(dec.lambdas.iter().filter(|l| l.abs() > tol).count())
}

/// Extracts the principal submatrix of `m` on `idx` (in the given order).
pub(crate) fn sub_matrix(m: &SymMatrix, idx: &[usize]) -> SymMatrix {
    SymMatrix::from_fn(idx.len(), |i, j| m.get(idx[i], idx[j]))
}

/// Builds a [`KktAnchor`] from an optimal pair, an optional strictly
/// complementary certificate pair, and a penalty weight.
///
/// If the working basis does not already diagonalize the pair, the problem
/// and all matrices are re-expressed in the eigenbasis of the splitting
/// variable. The zero block is further rotated so that the certificate
/// difference is diagonal there, which makes the primal/dual split of the
/// zero block a plain index split.
///
/// When no certificate pair is supplied, the anchor pair itself must be
/// strictly complementary.
pub fn build_anchor(
    problem: &SdpProblem,
    x_bar: &SymMatrix,
    s_bar: &SymMatrix,
    sc_pair: Option<(&SymMatrix, &SymMatrix)>,
    sigma: f64,
    tols: AnchorTols,
) -> Result<KktAnchor, LimitDynError> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(LimitDynError::InvalidSigma { sigma });
    }
    let n = problem.order();
    for m in [x_bar, s_bar] {
        if m.order() != n {
            return Err(LimitDynError::OrderMismatch {
                expected: n,
                got: m.order(),
            });
        }
    }
    let (x_sc0, s_sc0) = match sc_pair {
        Some((x, s)) => (x.clone(), s.clone()),
        None => (x_bar.clone(), s_bar.clone()),
    };
    for m in [&x_sc0, &s_sc0] {
        if m.order() != n {
            return Err(LimitDynError::OrderMismatch {
                expected: n,
                got: m.order(),
            });
        }
    }

    let mut problem = problem.clone();
    let mut x_bar = x_bar.clone();
    let mut s_bar = s_bar.clone();
    let mut x_sc = x_sc0;
    let mut s_sc = s_sc0;

    // Step 1: diagonalize the anchor pair if necessary. The eigenbasis of
    // Z = X - sigma S diagonalizes both X and S at a complementary pair.
    let scale = 1.0 + x_bar.norm().max(s_bar.norm());
    if off_diag_norm(&x_bar).max(off_diag_norm(&s_bar)) > tols.diag_tol * scale {
        let z_pre = x_bar.axpy(-sigma, &s_bar);
        let (cluster, zero) = default_tols(&z_pre);
        let (dec, _) = eigen_decompose(&z_pre, cluster, zero)?;
        problem = problem.congruence_transform(&dec.q)?;
        x_bar = x_bar.conjugate_by(&dec.q);
        s_bar = s_bar.conjugate_by(&dec.q);
        x_sc = x_sc.conjugate_by(&dec.q);
        s_sc = s_sc.conjugate_by(&dec.q);
        let off = off_diag_norm(&x_bar).max(off_diag_norm(&s_bar));
        if off > 1e-8 * scale {
            return Err(LimitDynError::Kkt {
                r_max: off,
                tol: 1e-8 * scale,
            });
        }
    }

    let z_bar = x_bar.axpy(-sigma, &s_bar);
    let (_, zero_tol_z) = default_tols(&z_bar);
    let lambdas: Vec<f64> = (0..n).map(|i| z_bar.get(i, i)).collect();

    let pos: Vec<usize> = (0..n).filter(|&i| lambdas[i] > zero_tol_z).collect();
    let neg: Vec<usize> = (0..n).filter(|&i| lambdas[i] < -zero_tol_z).collect();
    let zero_all: Vec<usize> = (0..n).filter(|&i| lambdas[i].abs() <= zero_tol_z).collect();

    // Step 2: split the zero block through the certificate difference. Its
    // positive eigendirections belong to the primal side, the negative ones
    // to the dual side; a (near-)zero eigenvalue is a rank defect.
    let (zero_p, zero_d) = if zero_all.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        let g = {
            let xg = sub_matrix(&x_sc, &zero_all);
            let sg = sub_matrix(&s_sc, &zero_all);
            xg.axpy(-1.0, &sg)
        };
        let g_scale = g.norm().max(1.0);
        if off_diag_norm(&g) > 1e-12 * g_scale {
            // Rotate only the zero block; the anchor pair vanishes there, so
            // it stays diagonal.
            let (cluster, zero) = default_tols(&g);
            let (dec, _) = eigen_decompose(&g, cluster, zero)?;
            let mut q_full = DMatrix::identity(n, n);
            for (a, &ia) in zero_all.iter().enumerate() {
                for (b, &ib) in zero_all.iter().enumerate() {
                    q_full[(ia, ib)] = dec.q[(a, b)];
                }
            }
            problem = problem.congruence_transform(&q_full)?;
            x_sc = x_sc.conjugate_by(&q_full);
            s_sc = s_sc.conjugate_by(&q_full);
        }
        let g = {
            let xg = sub_matrix(&x_sc, &zero_all);
            let sg = sub_matrix(&s_sc, &zero_all);
            xg.axpy(-1.0, &sg)
        };
        let split_tol = 1e-8 * g_scale;
        let mut zp = Vec::new();
        let mut zd = Vec::new();
        for (k, &i) in zero_all.iter().enumerate() {
            let v = g.get(k, k);
            if v > split_tol {
                zp.push(i);
            } else if v < -split_tol {
                zd.push(i);
            } else {
                return Err(LimitDynError::StrictComplementarity {
                    reason: format!(
                        "certificate pair leaves zero-block direction {i} uncovered (value {v:e})"
                    ),
                });
            }
        }
        (zp, zd)
    };

    // Step 3: optimality of the anchor pair.
    let y_bar = recover_dual_multiplier(&problem, &s_bar);
    let res = problem.kkt_residuals(&Iterate {
        x: x_bar.clone(),
        y: y_bar.clone(),
        s: s_bar.clone(),
        sigma,
    });
    if !(res.r_max <= tols.kkt_tol) {
        return Err(LimitDynError::Kkt {
            r_max: res.r_max,
            tol: tols.kkt_tol,
        });
    }
    let gap = x_bar.inner(&s_bar).abs();
    let gap_tol = 1e-10 * (1.0 + x_bar.norm() * s_bar.norm());
    if gap > gap_tol {
        return Err(LimitDynError::Kkt {
            r_max: gap,
            tol: gap_tol,
        });
    }

    // Step 4: optimality and strict complementarity of the certificate pair.
    let sc_scale = 1.0 + x_sc.norm().max(s_sc.norm());
    let y_sc = recover_dual_multiplier(&problem, &s_sc);
    let res_sc = problem.kkt_residuals(&Iterate {
        x: x_sc.clone(),
        y: y_sc,
        s: s_sc.clone(),
        sigma,
    });
    if !(res_sc.r_max <= 1e-9) {
        return Err(LimitDynError::Kkt {
            r_max: res_sc.r_max,
            tol: 1e-9,
        });
    }
    let (x_min, _) = eig_range(&x_sc)?;
    let (s_min, _) = eig_range(&s_sc)?;
    if x_min < -1e-9 * sc_scale || s_min < -1e-9 * sc_scale {
        return Err(LimitDynError::StrictComplementarity {
            reason: format!("certificate pair is not PSD (min eigenvalues {x_min:e}, {s_min:e})"),
        });
    }
    let rank_tol = 1e-8 * sc_scale;
    let rank_sum = rank_of(&x_sc, rank_tol)? + rank_of(&s_sc, rank_tol)?;
    if rank_sum != n {
        return Err(LimitDynError::StrictComplementarity {
            reason: format!("certificate ranks sum to {rank_sum}, expected the order {n}"),
        });
    }

    let (cluster, zero) = default_tols(&z_bar);
    let (_, level1) = eigen_decompose(&z_bar, cluster, zero)?;

    Ok(KktAnchor {
        problem,
        x_bar,
        s_bar,
        y_bar,
        x_sc,
        s_sc,
        sigma,
        z_bar,
        level1,
        lambdas,
        pos,
        zero_p,
        zero_d,
        neg,
        zero_tol: zero_tol_z,
    })
}
