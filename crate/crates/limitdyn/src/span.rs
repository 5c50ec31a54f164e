use nalgebra::{DMatrix, DVector};
use symcore::SymMatrix;

use crate::anchor::KktAnchor;
use crate::membership::{classes, IndexClass};

/// Isometric vectorization of a symmetric matrix: diagonal entries as-is,
/// off-diagonal entries scaled by sqrt(2), so Euclidean inner products of
/// the vectors equal Frobenius inner products of the matrices.
pub(crate) fn vec_iso(m: &SymMatrix) -> DVector<f64> {
    let n = m.order();
    let mut v = DVector::zeros(n * (n + 1) / 2);
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            v[k] = if i == j {
                m.get(i, j)
            } else {
                std::f64::consts::SQRT_2 * m.get(i, j)
            };
            k += 1;
        }
    }
    v
}

/// Orthonormal basis element supported on the single entry pair `(i, j)`.
fn sym_unit_iso(n: usize, i: usize, j: usize) -> SymMatrix {
    let mut m = SymMatrix::zeros(n);
    if i == j {
        m.set(i, i, 1.0);
    } else {
        m.set(i, j, std::f64::consts::FRAC_1_SQRT_2);
    }
    m
}

/// Which support blocks, in the four-way index split, to include when
/// spanning a structural pattern.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PatternBlocks {
    pub primal_core: bool, // (pos,pos), (pos,zeroP), (zeroP,zeroP)
    pub primal_cross: bool, // (pos,zeroD)
    pub dual_core: bool,   // (zeroD,zeroD), (zeroD,neg), (neg,neg)
    pub dual_cross: bool,  // (zeroP,neg)
}

pub(crate) fn pattern_units(anchor: &KktAnchor, blocks: PatternBlocks) -> Vec<SymMatrix> {
    let n = anchor.order();
    let cls = classes(anchor);
    let mut units = Vec::new();
    use IndexClass::*;
    for i in 0..n {
        for j in i..n {
            let mut a = cls[i];
            let mut b = cls[j];
            if (a as u8) > (b as u8) {
                std::mem::swap(&mut a, &mut b);
            }
            let keep = match (a, b) {
                (Pos, Pos) | (Pos, ZeroP) | (ZeroP, ZeroP) => blocks.primal_core,
                (Pos, ZeroD) => blocks.primal_cross,
                (ZeroD, ZeroD) | (ZeroD, Neg) | (Neg, Neg) => blocks.dual_core,
                (ZeroP, Neg) => blocks.dual_cross,
                _ => false,
            };
            if keep {
                units.push(sym_unit_iso(n, i, j));
            }
        }
    }
    units
}

/// Orthonormal basis of the subspace `{sum c_k B_k : L(sum c_k B_k) = 0}`,
/// where the `B_k` are orthonormal and `L` is linear. The null space of the
/// constraint restricted to the span is read off the Gram matrix of the
/// constraint columns: its zero eigenvectors are the admissible coefficient
/// vectors, and orthonormal coefficients give orthonormal combinations.
pub(crate) fn constrained_span_basis(
    units: &[SymMatrix],
    constraint: impl Fn(&SymMatrix) -> DVector<f64>,
) -> Vec<SymMatrix> {
    if units.is_empty() {
        return Vec::new();
    }
    let p = units.len();
    let q = constraint(&units[0]).len();
    let mut mat = DMatrix::zeros(q, p);
    for (k, u) in units.iter().enumerate() {
        mat.set_column(k, &constraint(u));
    }
    let gram = SymMatrix::from_dense(&(mat.transpose() * &mat));
    let scale = gram.norm().max(1.0);
    let (cluster, _) = symcore::default_tols(&gram);
    let dec = match symcore::eigen_decompose(&gram, cluster, 1e-16 * scale) {
        Ok((d, _)) => d,
        Err(_) => return Vec::new(),
    };
    let tol = 1e-12 * scale;
    let n = units[0].order();
    let mut basis = Vec::new();
    for (idx, &l) in dec.lambdas.iter().enumerate() {
        if l.abs() <= tol {
            let mut b = SymMatrix::zeros(n);
            for (k, u) in units.iter().enumerate() {
                b = b.axpy(dec.q[(k, idx)], u);
            }
            basis.push(b);
        }
    }
    basis
}

/// Distance from `m` to the span of `basis` (not necessarily orthonormal),
/// via least squares.
pub(crate) fn distance_to_span(basis: &[SymMatrix], m: &SymMatrix) -> f64 {
    if basis.is_empty() {
        return m.norm();
    }
    let dim = {
        let n = m.order();
        n * (n + 1) / 2
    };
    let mut b = DMatrix::zeros(dim, basis.len());
    for (k, u) in basis.iter().enumerate() {
        b.set_column(k, &vec_iso(u));
    }
    let target = vec_iso(m);
    let svd = b.clone().svd(true, true);
    let coeffs = svd
        .solve(&target, 1e-12)
        .expect("least-squares solve is infallible for finite input");
    (b * coeffs - target).norm()
}
