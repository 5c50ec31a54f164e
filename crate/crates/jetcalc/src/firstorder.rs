use crate::describe::{block, set_block, JetTols};
use crate::error::JetError;
use nalgebra::DMatrix;
use symcore::{eigen_decompose, psd_project, SignClass, SymMatrix};

/// First-order directional derivative `Pi_+'(Z; H)` of the PSD projection.
///
/// In the eigenbasis of `Z` (groups `alpha_+`, `alpha_0`, `alpha_-` with
/// representative eigenvalues `lambda`):
///
/// ```text
/// [Pi_+'][a][b] = H_ab                              a, b in alpha_+ or (a in alpha_+, b in alpha_0)
/// [Pi_+'][a][b] = lambda_a / (lambda_a - lambda_b) H_ab    a in alpha_+, b in alpha_-
/// [Pi_+'][0][0] = Pi_+(H_00)
/// all other blocks = 0.
/// ```
pub fn pi_plus_dd1(z: &SymMatrix, h: &SymMatrix) -> Result<SymMatrix, JetError> {
    if z.order() != h.order() {
        return Err(JetError::OrderMismatch {
            z: z.order(),
            h: h.order(),
            w: h.order(),
        });
    }
    let tols = JetTols::for_matrix(z);
    let (eig, part) = eigen_decompose(z, tols.cluster_tol, tols.zero_tol)?;
    let h_rot = h.conjugate_by(&eig.q).to_dense();
    let n = z.order();
    let mut r = DMatrix::zeros(n, n);

    for (ai, ga) in part.groups.iter().enumerate() {
        for gb in part.groups.iter().skip(ai) {
            let hab = block(&h_rot, &ga.range, &gb.range);
            let value = match (ga.label, gb.label) {
                (SignClass::Pos, SignClass::Pos) | (SignClass::Pos, SignClass::Zero) => hab,
                (SignClass::Pos, SignClass::Neg) => {
                    (ga.value / (ga.value - gb.value)) * hab
                }
                (SignClass::Zero, SignClass::Zero) => {
                    psd_project(&SymMatrix::from_dense(&hab))?.to_dense()
                }
                _ => continue,
            };
            set_block(&mut r, &ga.range, &gb.range, &value);
        }
    }
    Ok(SymMatrix::from_dense(&r).conjugate_by(&eig.q.transpose()))
}

/// First-order directional derivative `Pi_-'(Z; H)` of the NSD projection,
/// via the exact symmetry `Pi_-(Z) = -Pi_+(-Z)`.
pub fn pi_minus_dd1(z: &SymMatrix, h: &SymMatrix) -> Result<SymMatrix, JetError> {
    Ok(pi_plus_dd1(&z.scale(-1.0), &h.scale(-1.0))?.scale(-1.0))
}
