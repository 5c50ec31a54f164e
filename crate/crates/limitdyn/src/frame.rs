use nalgebra::DMatrix;
use symcore::{default_tols, eigen_decompose, SymMatrix};

use crate::anchor::{sub_matrix, KktAnchor};
use crate::error::LimitDynError;
use crate::membership::{classes, IndexClass};
use crate::ops::delta_dd1;

/// Eigenframe of the direction's zero block, built separately on the
/// primal-side and dual-side coordinates so the rotation is block-diagonal
/// across the complementarity split by construction.
///
/// Frame columns are ordered primal-side first (eigenvalues descending),
/// then dual-side (descending). The four column classes split the spectrum:
/// `sc1` positive, `sc2` primal-side null, `sc3` dual-side null, `sc4`
/// negative.
#[derive(Debug, Clone)]
pub struct SecondLevelFrame {
    /// Working-basis indices of the zero block, in frame column order.
    pub zero: Vec<usize>,
    pub q0: DMatrix<f64>,
    pub mus: Vec<f64>,
    pub sc1: Vec<usize>,
    pub sc2: Vec<usize>,
    pub sc3: Vec<usize>,
    pub sc4: Vec<usize>,
    /// Mass of the zero block on the forbidden primal/dual cross block.
    pub cross_mass: f64,
}

impl SecondLevelFrame {
    pub fn build(anchor: &KktAnchor, h: &SymMatrix) -> Result<Self, LimitDynError> {
        let zero = anchor.zero();
        let np = anchor.zero_p.len();
        let n0 = zero.len();
        let h00 = sub_matrix(h, &zero);
        let (_, mu_tol) = default_tols(&h00);
        let mu_tol = mu_tol.max(1e-10);

        let mut cross = 0.0f64;
        for i in 0..np {
            for j in np..n0 {
                cross += 2.0 * h00.get(i, j) * h00.get(i, j);
            }
        }
        let cross = cross.sqrt();

        let mut q0 = DMatrix::identity(n0, n0);
        let mut mus = vec![0.0; n0];
        let mut fill = |offset: usize, idx: &[usize]| -> Result<(), LimitDynError> {
            if idx.is_empty() {
                return Ok(());
            }
            let block = sub_matrix(h, idx);
            let (cluster, _) = default_tols(&block);
            let (dec, _) = eigen_decompose(&block, cluster, mu_tol)?;
            for (a, &mu) in dec.lambdas.iter().enumerate() {
                mus[offset + a] = mu;
                for b in 0..idx.len() {
                    q0[(offset + b, offset + a)] = dec.q[(b, a)];
                }
            }
            Ok(())
        };
        fill(0, &anchor.zero_p)?;
        fill(np, &anchor.zero_d)?;

        let mut sc1 = Vec::new();
        let mut sc2 = Vec::new();
        let mut sc3 = Vec::new();
        let mut sc4 = Vec::new();
        for (k, &mu) in mus.iter().enumerate() {
            let primal_side = k < np;
            if mu > mu_tol {
                if !primal_side {
                    return Err(LimitDynError::NotInCone {
                        residual: mu,
                        tol: mu_tol,
                    });
                }
                sc1.push(k);
            } else if mu < -mu_tol {
                if primal_side {
                    return Err(LimitDynError::NotInCone {
                        residual: -mu,
                        tol: mu_tol,
                    });
                }
                sc4.push(k);
            } else if primal_side {
                sc2.push(k);
            } else {
                sc3.push(k);
            }
        }

        Ok(Self {
            zero,
            q0,
            mus,
            sc1,
            sc2,
            sc3,
            sc4,
            cross_mass: cross,
        })
    }

    pub fn null_cols(&self) -> Vec<usize> {
        let mut v = self.sc2.clone();
        v.extend_from_slice(&self.sc3);
        v
    }
}

/// The drift operators and blockwise split operators attached to one
/// (anchor, stalled direction) pair. All second-order machinery for a fixed
/// direction flows through this struct so the second-level frame is built
/// once.
#[derive(Debug, Clone)]
pub struct DirectionOps<'a> {
    pub anchor: &'a KktAnchor,
    pub h: SymMatrix,
    pub frame: SecondLevelFrame,
    /// Primal-side drift matrix.
    pub e: SymMatrix,
    /// Dual-side drift matrix.
    pub e_perp: SymMatrix,
    /// Zero-block curvature sum `e + e_perp`.
    pub upsilon: SymMatrix,
    /// Constant forcing term of the second-order iteration:
    /// `-P e - P_perp e_perp`.
    pub psi_drive: SymMatrix,
    cls: Vec<IndexClass>,
}

impl<'a> DirectionOps<'a> {
    /// Validates stalled-cone membership of `h` within `tol` and assembles
    /// the frame plus the drift matrices.
    pub fn new(anchor: &'a KktAnchor, h: &SymMatrix, tol: f64) -> Result<Self, LimitDynError> {
        if h.order() != anchor.order() {
            return Err(LimitDynError::OrderMismatch {
                expected: anchor.order(),
                got: h.order(),
            });
        }
        let residual = delta_dd1(anchor, h)?.norm();
        if residual > tol {
            return Err(LimitDynError::NotInCone { residual, tol });
        }
        let frame = SecondLevelFrame::build(anchor, h)?;
        let cls = classes(anchor);

        let n = anchor.order();
        let n0 = frame.zero.len();
        let lam = &anchor.lambdas;

        // Zero-block spectral projections of the direction, in frame-row
        // order: positive part and negative part.
        let q0 = &frame.q0;
        let diag_of = |f: &dyn Fn(f64) -> f64| {
            let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                n0,
                frame.mus.iter().map(|&m| f(m)),
            ));
            q0 * d * q0.transpose()
        };
        let p_plus = diag_of(&|m: f64| m.max(0.0));
        let n_minus = diag_of(&|m: f64| m.min(0.0));

        let row_of = |a: usize| -> nalgebra::DVector<f64> {
            nalgebra::DVector::from_iterator(n0, frame.zero.iter().map(|&z| h.get(a, z)))
        };

        let mut e = SymMatrix::zeros(n);
        let mut e_perp = SymMatrix::zeros(n);

        for &a in &anchor.pos {
            let row = row_of(a);
            // (pos, zero): drift through the negative part of the zero block.
            let pe = (-&n_minus) * &row; // Pi_+(-H00) row action
            let pp = &n_minus * &row; // Pi_-(H00) row action
            for (k, &z) in frame.zero.iter().enumerate() {
                e.set(a, z, -2.0 / lam[a] * pe[k]);
                e_perp.set(a, z, -2.0 / lam[a] * pp[k]);
            }
            // (pos, neg): coupling through the zero block.
            for &b in &anchor.neg {
                let col = row_of(b);
                let dot = row.dot(&col);
                e.set(a, b, 2.0 / (lam[a] - lam[b]) * dot);
                e_perp.set(a, b, 2.0 / (lam[b] - lam[a]) * dot);
            }
        }
        for &b in &anchor.neg {
            let col = row_of(b);
            // (zero, neg): drift through the positive part of the zero block.
            let pe = &p_plus * &col;
            for (k, &z) in frame.zero.iter().enumerate() {
                e.set(z, b, 2.0 / (-lam[b]) * pe[k]);
                e_perp.set(z, b, 2.0 / lam[b] * pe[k]);
            }
        }
        // (zero, zero): curvature terms from the off-block couplings.
        for (k, &zk) in frame.zero.iter().enumerate() {
            for &zl in frame.zero.iter().skip(k) {
                let mut pos_sum = 0.0;
                for &c in &anchor.pos {
                    pos_sum += h.get(zk, c) * h.get(zl, c) / lam[c];
                }
                let mut neg_sum = 0.0;
                for &c in &anchor.neg {
                    neg_sum += h.get(zk, c) * h.get(zl, c) / lam[c];
                }
                e.set(zk, zl, 2.0 * pos_sum);
                e_perp.set(zk, zl, 2.0 * neg_sum);
            }
        }

        let upsilon = e.axpy(1.0, &e_perp);
        let psi_drive = anchor
            .problem
            .project_range(&e)
            .axpy(1.0, &anchor.problem.project_orth(&e_perp))
            .scale(-1.0);

        Ok(Self {
            anchor,
            h: h.clone(),
            frame,
            e,
            e_perp,
            upsilon,
            psi_drive,
            cls,
        })
    }

    /// Curvature-corrected second-order argument: `w - upsilon`.
    pub fn w_tilde(&self, w: &SymMatrix) -> SymMatrix {
        w.axpy(-1.0, &self.upsilon)
    }

    /// Rotates the zero block of `w` into the frame.
    fn zero_block_hat(&self, w: &SymMatrix) -> DMatrix<f64> {
        let n0 = self.frame.zero.len();
        let v00 = DMatrix::from_fn(n0, n0, |i, j| {
            w.get(self.frame.zero[i], self.frame.zero[j])
        });
        self.frame.q0.transpose() * v00 * &self.frame.q0
    }

    fn write_zero_block(&self, out: &mut SymMatrix, hat: &DMatrix<f64>) {
        let back = &self.frame.q0 * hat * self.frame.q0.transpose();
        let n0 = self.frame.zero.len();
        for i in 0..n0 {
            for j in i..n0 {
                out.set(
                    self.frame.zero[i],
                    self.frame.zero[j],
                    0.5 * (back[(i, j)] + back[(j, i)]),
                );
            }
        }
    }

    /// Positive part of the null-null sub-block of the rotated zero block.
    fn null_psd_part(&self, hat: &DMatrix<f64>) -> Result<(Vec<usize>, SymMatrix), LimitDynError> {
        let null = self.frame.null_cols();
        let sub = SymMatrix::from_fn(null.len(), |i, j| {
            0.5 * (hat[(null[i], null[j])] + hat[(null[j], null[i])])
        });
        let plus = symcore::psd_project(&sub)?;
        Ok((null, plus))
    }

    /// The primal split operator: keeps the blocks that feed the primal
    /// iterate's second-order response.
    pub fn theta(&self, w: &SymMatrix) -> Result<SymMatrix, LimitDynError> {
        self.split(w, true)
    }

    /// The dual split operator; `theta(w) + theta_perp(w) = w` holds by
    /// construction.
    pub fn theta_perp(&self, w: &SymMatrix) -> Result<SymMatrix, LimitDynError> {
        self.split(w, false)
    }

    fn split(&self, w: &SymMatrix, primal: bool) -> Result<SymMatrix, LimitDynError> {
        let n = self.anchor.order();
        let lam = &self.anchor.lambdas;
        let mut out = SymMatrix::zeros(n);
        use IndexClass::*;
        let rank = |c: IndexClass| match c {
            Pos => 0,
            ZeroP => 1,
            ZeroD => 2,
            Neg => 3,
        };
        for i in 0..n {
            for j in i..n {
                let (ci, cj) = (self.cls[i], self.cls[j]);
                let in_zero = matches!(ci, ZeroP | ZeroD) && matches!(cj, ZeroP | ZeroD);
                if in_zero {
                    continue; // handled through the frame below
                }
                // Orient the pair so the class with the smaller rank comes
                // first; the divided-difference coefficient needs to know
                // which side carries the positive eigenvalue.
                let (ci, cj, li, lj) = if rank(ci) <= rank(cj) {
                    (ci, cj, lam[i], lam[j])
                } else {
                    (cj, ci, lam[j], lam[i])
                };
                let val = w.get(i, j);
                let coeff = match (ci, cj) {
                    (Pos, Pos) | (Pos, ZeroP) | (Pos, ZeroD) => {
                        if primal {
                            1.0
                        } else {
                            0.0
                        }
                    }
                    (ZeroP, Neg) | (ZeroD, Neg) | (Neg, Neg) => {
                        if primal {
                            0.0
                        } else {
                            1.0
                        }
                    }
                    (Pos, Neg) => {
                        let t = li / (li - lj);
                        if primal {
                            t
                        } else {
                            1.0 - t
                        }
                    }
                    _ => unreachable!(),
                };
                out.set(i, j, coeff * val);
            }
        }

        // Zero block: divided differences of the direction's eigenvalues,
        // with a genuine cone projection on the null-null sub-block.
        let n0 = self.frame.zero.len();
        if n0 > 0 {
            let hat = self.zero_block_hat(w);
            let mus = &self.frame.mus;
            let mu_class = |k: usize| -> i8 {
                if self.frame.sc1.contains(&k) {
                    1
                } else if self.frame.sc4.contains(&k) {
                    -1
                } else {
                    0
                }
            };
            let mut hat_out = DMatrix::zeros(n0, n0);
            for i in 0..n0 {
                for j in 0..n0 {
                    let (si, sj) = (mu_class(i), mu_class(j));
                    if si == 0 && sj == 0 {
                        continue; // null-null handled by projection
                    }
                    let coeff_primal = match (si, sj) {
                        (1, 1) | (1, 0) | (0, 1) => 1.0,
                        (1, -1) => mus[i] / (mus[i] - mus[j]),
                        (-1, 1) => mus[j] / (mus[j] - mus[i]),
                        _ => 0.0,
                    };
                    let c = if primal { coeff_primal } else { 1.0 - coeff_primal };
                    hat_out[(i, j)] = c * hat[(i, j)];
                }
            }
            let (null, plus) = self.null_psd_part(&hat)?;
            for (a, &i) in null.iter().enumerate() {
                for (b, &j) in null.iter().enumerate() {
                    let full = 0.5 * (hat[(i, j)] + hat[(j, i)]);
                    hat_out[(i, j)] = if primal {
                        plus.get(a, b)
                    } else {
                        full - plus.get(a, b)
                    };
                }
            }
            self.write_zero_block(&mut out, &hat_out);
        }
        Ok(out)
    }

    /// The simplified second directional derivative of the PSD projection at
    /// the anchor along `(h, w)`: split of the curvature-corrected argument
    /// plus the primal drift.
    pub fn second_dd_plus(&self, w: &SymMatrix) -> Result<SymMatrix, LimitDynError> {
        Ok(self.theta(&self.w_tilde(w))?.axpy(1.0, &self.e))
    }

    /// Dual counterpart of [`Self::second_dd_plus`].
    pub fn second_dd_minus(&self, w: &SymMatrix) -> Result<SymMatrix, LimitDynError> {
        Ok(self.theta_perp(&self.w_tilde(w))?.axpy(1.0, &self.e_perp))
    }
}
