use crate::error::JetError;
use nalgebra::DMatrix;
use std::ops::Range;
use symcore::{default_tols, eigen_decompose, EigenPartition, SignClass, SymMatrix};

/// A divided-difference denominator smaller than this factor times `||Z||_F`
/// is reported as a conditioning warning: the jet formulas are stated per
/// distinct eigenvalue and give no guidance when two groups nearly coincide.
pub const CONDITION_WARNING_FACTOR: f64 = 1e-6;

/// Eigenvalue clustering tolerances used when building descriptions.
#[derive(Debug, Clone, Copy)]
pub struct JetTols {
    pub cluster_tol: f64,
    pub zero_tol: f64,
}

impl JetTols {
    /// Default tolerances scaled to the norm of `m`.
    pub fn for_matrix(m: &SymMatrix) -> Self {
        let (cluster_tol, zero_tol) = default_tols(m);
        Self {
            cluster_tol,
            zero_tol,
        }
    }
}

/// Third-level data for a zero eigenvalue sub-block: the eigendecomposition
/// of `Vhat_k^{i,i}` restricted to a zero-mu group.
#[derive(Debug, Clone)]
pub struct LevelThree {
    /// Rotation diagonalizing the zero-mu sub-block of `Vhat`.
    pub q: DMatrix<f64>,
    /// Its eigenvalues (nu-level), descending.
    pub nus: Vec<f64>,
    pub partition: EigenPartition,
}

/// Second-level data for one first-level eigenvalue group `alpha_k`:
/// the eigendecomposition of `H_{alpha_k alpha_k}` and the auxiliary matrix
/// `V_k(H, W) = W_{kk} + sum_{l != k} 2 / (lambda_k - lambda_l) H_{kl} H_{lk}`.
#[derive(Debug, Clone)]
pub struct LevelTwo {
    /// Rotation `Q^(k)` diagonalizing the diagonal block of `H`.
    pub q: DMatrix<f64>,
    /// Eigenvalues `mu_{k,i}` (by index, descending).
    pub mus: Vec<f64>,
    /// Grouping of the `mu` values (beta-level index sets).
    pub partition: EigenPartition,
    /// `V_k(H, W)` in the first-level frame.
    pub v: SymMatrix,
    /// Per beta-group third-level data; populated only for zero-mu groups.
    pub level3: Vec<Option<LevelThree>>,
}

/// Nested three-level eigen-structure of a triplet `(Z, H, W)`.
///
/// Level 1 is the clustered spectrum of `Z` with rotation `Q`; `h` and `w`
/// are stored already rotated into that frame (so the level-1 blocks are
/// plain index ranges). Level 2 describes each diagonal block of `h`;
/// level 3 refines the zero-mu sub-blocks of the `Vhat` matrices.
#[derive(Debug, Clone)]
pub struct ThreeLevelDescription {
    /// First-level rotation; identity when `z` was already diagonal with
    /// descending diagonal.
    pub q: DMatrix<f64>,
    /// Eigenvalues of `z`, descending.
    pub lambdas: Vec<f64>,
    /// Sign-labeled grouping of the spectrum of `z`.
    pub level1: EigenPartition,
    /// `H` rotated into the level-1 frame.
    pub h: SymMatrix,
    /// `W` rotated into the level-1 frame.
    pub w: SymMatrix,
    /// One entry per level-1 group, in group order.
    pub level2: Vec<LevelTwo>,
    /// Conditioning warnings (nearly coincident group eigenvalues).
    pub warnings: Vec<String>,
}

impl ThreeLevelDescription {
    /// Representative eigenvalue of level-1 group `k`.
    pub fn lambda(&self, k: usize) -> f64 {
        self.level1.groups[k].value
    }

    /// Index range of level-1 group `k`.
    pub fn range(&self, k: usize) -> Range<usize> {
        self.level1.groups[k].range.clone()
    }
}

/// Extracts the `(rows, cols)` block of a dense matrix.
pub(crate) fn block(m: &DMatrix<f64>, rows: &Range<usize>, cols: &Range<usize>) -> DMatrix<f64> {
    m.view((rows.start, cols.start), (rows.len(), cols.len()))
        .into_owned()
}

/// Writes `value` into the `(rows, cols)` block and mirrors it when off the
/// diagonal.
pub(crate) fn set_block(
    target: &mut DMatrix<f64>,
    rows: &Range<usize>,
    cols: &Range<usize>,
    value: &DMatrix<f64>,
) {
    target
        .view_mut((rows.start, cols.start), (rows.len(), cols.len()))
        .copy_from(value);
    if rows.start != cols.start {
        target
            .view_mut((cols.start, rows.start), (cols.len(), rows.len()))
            .copy_from(&value.transpose());
    }
}

fn check_orders(z: &SymMatrix, h: &SymMatrix, w: &SymMatrix) -> Result<(), JetError> {
    if z.order() != h.order() || z.order() != w.order() {
        return Err(JetError::OrderMismatch {
            z: z.order(),
            h: h.order(),
            w: w.order(),
        });
    }
    Ok(())
}

/// Builds the nested three-level description of `(z, h, w)`.
///
/// The supplied tolerances apply to the level-1 clustering of `z`; levels 2
/// and 3 reuse the default tolerance factors scaled to the norm of the block
/// being decomposed.
pub fn build_three_level(
    z: &SymMatrix,
    h: &SymMatrix,
    w: &SymMatrix,
    tols: JetTols,
) -> Result<ThreeLevelDescription, JetError> {
    check_orders(z, h, w)?;
    let (eig, level1) = eigen_decompose(z, tols.cluster_tol, tols.zero_tol)?;
    let h_rot = h.conjugate_by(&eig.q);
    let w_rot = w.conjugate_by(&eig.q);
    let hd = h_rot.to_dense();
    let wd = w_rot.to_dense();

    let mut warnings = Vec::new();
    let warn_floor = CONDITION_WARNING_FACTOR * z.norm();
    for (a, ga) in level1.groups.iter().enumerate() {
        for gb in level1.groups.iter().skip(a + 1) {
            let gap = (ga.value - gb.value).abs();
            if gap < warn_floor {
                warnings.push(format!(
                    "level-1 eigenvalue gap {gap:.3e} between groups at {:.6e} and {:.6e} \
                     is below {warn_floor:.3e}; divided-difference coefficients are ill-conditioned",
                    ga.value, gb.value
                ));
            }
        }
    }

    let mut level2 = Vec::with_capacity(level1.groups.len());
    for (k, gk) in level1.groups.iter().enumerate() {
        // V_k = W_kk + sum_{l != k} 2 / (lambda_k - lambda_l) H_kl H_lk.
        let mut v = block(&wd, &gk.range, &gk.range);
        for (l, gl) in level1.groups.iter().enumerate() {
            if l == k {
                continue;
            }
            let hkl = block(&hd, &gk.range, &gl.range);
            let coeff = 2.0 / (gk.value - gl.value);
            v += coeff * (&hkl * hkl.transpose());
        }
        let v_sym = SymMatrix::from_dense(&v);

        let h_kk = SymMatrix::from_dense(&block(&hd, &gk.range, &gk.range));
        let sub_tols = JetTols::for_matrix(&h_kk);
        let (h_eig, h_part) = eigen_decompose(&h_kk, sub_tols.cluster_tol, sub_tols.zero_tol)?;
        let vhat = v_sym.conjugate_by(&h_eig.q);
        let vhat_d = vhat.to_dense();

        let mut level3 = Vec::with_capacity(h_part.groups.len());
        for gi in &h_part.groups {
            if gi.label == SignClass::Zero {
                let vii = SymMatrix::from_dense(&block(&vhat_d, &gi.range, &gi.range));
                let vt = JetTols::for_matrix(&vii);
                let (v_eig, v_part) = eigen_decompose(&vii, vt.cluster_tol, vt.zero_tol)?;
                level3.push(Some(LevelThree {
                    q: v_eig.q,
                    nus: v_eig.lambdas,
                    partition: v_part,
                }));
            } else {
                level3.push(None);
            }
        }
        level2.push(LevelTwo {
            q: h_eig.q,
            mus: h_eig.lambdas,
            partition: h_part,
            v: v_sym,
            level3,
        });
    }

    Ok(ThreeLevelDescription {
        q: eig.q,
        lambdas: eig.lambdas,
        level1,
        h: h_rot,
        w: w_rot,
        level2,
        warnings,
    })
}
