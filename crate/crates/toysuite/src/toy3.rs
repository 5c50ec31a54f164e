//! The 6x6 reference instance with simultaneous primal and dual
//! degeneracy. Its second-order limit map is discontinuous on the family
//! boundary `eps = 0` once `|h| > sqrt(2)`.

use crate::oracle::{PsiTriple, ToyId, ToyOracle};
use nalgebra::{DMatrix, DVector};
use sdpmodel::SdpProblem;
use symcore::SymMatrix;

/// Guard band for the branch test `h^2 > 2` under floating-point `h`.
pub const BRANCH_GUARD: f64 = 1e-12;

fn rotation() -> DMatrix<f64> {
    let s3 = 3.0f64.sqrt();
    let s2 = 2.0f64.sqrt();
    let s6 = 6.0f64.sqrt();
    DMatrix::from_row_slice(
        3,
        3,
        &[
            1.0 / s3,
            1.0 / s2,
            1.0 / s6,
            1.0 / s3,
            -1.0 / s2,
            1.0 / s6,
            1.0 / s3,
            0.0,
            -2.0 / s6,
        ],
    )
}

/// Upper-left 3x3 block `Q^T diag(d) Q` embedded in a 6x6 matrix.
fn rotated_diag_block(d: [f64; 3]) -> SymMatrix {
    let q = rotation();
    let block = q.transpose() * DMatrix::from_diagonal(&DVector::from_row_slice(&d)) * q;
    SymMatrix::from_fn(6, |i, j| {
        if i < 3 && j < 3 {
            block[(i, j)]
        } else {
            0.0
        }
    })
}

pub fn build() -> ToyOracle {
    let pair = |i: usize, j: usize| SymMatrix::sym_unit(6, i, j);
    let mut a_mats = vec![
        SymMatrix::identity(6),
        rotated_diag_block([1.0, -1.0, 0.0]),
        rotated_diag_block([1.0, 0.0, -1.0]),
        SymMatrix::from_diag(&[0.0, 0.0, 0.0, 1.0, -1.0, 0.0]),
        SymMatrix::from_diag(&[0.0, 0.0, 0.0, 0.0, 1.0, -1.0]),
    ];
    a_mats.extend([
        pair(1, 3),
        pair(1, 4),
        pair(1, 5),
        pair(2, 3),
        pair(2, 4),
        pair(2, 5),
        pair(3, 4),
        pair(3, 5),
        pair(4, 5),
        pair(0, 5),
    ]);
    let mut b = vec![0.0; 15];
    b[0] = 6.0;
    let c = SymMatrix::from_diag(&[0.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
    let problem = SdpProblem::new(a_mats, b, c).unwrap();

    let mut y_bar = DVector::zeros(15);
    y_bar[3] = 1.0;
    y_bar[4] = 2.0;
    let mut x_bar = SymMatrix::zeros(6);
    x_bar.set(0, 0, 6.0);
    let mut s_bar = SymMatrix::zeros(6);
    s_bar.set(5, 5, 3.0);
    ToyOracle::assemble(
        ToyId::Toy3,
        problem,
        x_bar,
        s_bar,
        y_bar,
        SymMatrix::from_diag(&[2.0, 2.0, 2.0, 0.0, 0.0, 0.0]),
        SymMatrix::from_diag(&[0.0, 0.0, 0.0, 1.0, 1.0, 1.0]),
    )
}

/// Family member: rank-one leading entry interactions with free `h`, a
/// zero-block diagonal `diag(1, 0, -eps, -1)`, and unit couplings into the
/// negative space.
pub fn direction(h: f64, eps: f64) -> SymMatrix {
    let s2 = 2.0f64.sqrt();
    let mut m = SymMatrix::zeros(6);
    m.set(0, 0, -1.0);
    m.set(0, 2, -s2 / 4.0);
    m.set(0, 3, 1.0);
    m.set(0, 4, h);
    m.set(1, 1, 1.0);
    m.set(3, 3, -eps);
    m.set(4, 4, -1.0);
    for i in 1..5 {
        m.set(i, 5, 1.0);
    }
    m.set(5, 5, 1.0 + eps);
    m
}

/// Row of the family member over the zero block: `(0, -sqrt2/4, 1, h)`.
fn zero_block_row(h: f64) -> [f64; 4] {
    [0.0, -2.0f64.sqrt() / 4.0, 1.0, h]
}

fn pos_neg_coupling(h: f64, sigma: f64) -> f64 {
    let s2 = 2.0f64.sqrt();
    (4.0 * h - s2 + 4.0) / (6.0 * (sigma + 2.0))
}

pub fn drift_e(h: f64, eps: f64, sigma: f64) -> SymMatrix {
    let r = zero_block_row(h);
    let mut e = SymMatrix::zeros(6);
    e.set(0, 3, -eps / 3.0);
    e.set(0, 4, -h / 3.0);
    e.set(0, 5, pos_neg_coupling(h, sigma));
    for i in 0..4 {
        for j in i..4 {
            e.set(1 + i, 1 + j, r[i] * r[j] / 3.0);
        }
    }
    e.set(1, 5, 2.0 / (3.0 * sigma));
    e
}

pub fn drift_e_perp(h: f64, eps: f64, sigma: f64) -> SymMatrix {
    let mut e = SymMatrix::zeros(6);
    e.set(0, 3, eps / 3.0);
    e.set(0, 4, h / 3.0);
    e.set(0, 5, -pos_neg_coupling(h, sigma));
    for i in 0..4 {
        for j in i..4 {
            e.set(1 + i, 1 + j, -2.0 / (3.0 * sigma));
        }
    }
    e.set(1, 5, -2.0 / (3.0 * sigma));
    e
}

pub fn psi(h: f64, eps: f64, sigma: f64) -> PsiTriple {
    let s2 = 2.0f64.sqrt();
    let over = h * h - 2.0 > BRANCH_GUARD && eps == 0.0;

    let mut psi_x = SymMatrix::zeros(6);
    psi_x.set(0, 0, -4.0 / (9.0 * sigma));
    psi_x.set(0, 1, -2.0 * s2 / (9.0 * sigma));
    psi_x.set(0, 3, -eps / 3.0);
    psi_x.set(0, 4, -h / 3.0);
    psi_x.set(1, 1, 2.0 / (9.0 * sigma));
    psi_x.set(1, 2, 4.0 / (9.0 * sigma));
    psi_x.set(2, 2, 2.0 / (9.0 * sigma));

    // Dual contribution recorded as -sigma * psi_s.
    let mut dual = SymMatrix::zeros(6);
    if eps > 0.0 {
        // With eps > 0 the third zero-block direction joins the negative
        // second-level class, so the (2,3) coordinate becomes free in the
        // dual polar cone and keeps the drift value there.
        dual.set(2, 3, s2 / 12.0);
    }
    dual.set(2, 4, s2 * h / 12.0);
    dual.set(3, 4, -h / 3.0);
    dual.set(1, 5, -2.0 / (3.0 * sigma));
    if over {
        dual.set(4, 4, -h * h / 6.0);
        dual.set(5, 5, h * h / 6.0);
    } else {
        dual.set(3, 3, (h * h - 2.0) / 9.0);
        dual.set(4, 4, -(2.0 * h * h - 1.0) / 9.0);
        dual.set(5, 5, (h * h + 1.0) / 9.0);
    }

    let psi_z = &psi_x + &dual;
    let psi_s = dual.scale(-1.0 / sigma);
    PsiTriple {
        psi_z,
        psi_x,
        psi_s,
    }
}
