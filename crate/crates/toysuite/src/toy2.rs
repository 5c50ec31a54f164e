//! The 3x3 reference instance (in the basis diagonalizing the rank-one
//! anchor): unit trace, vanishing (2,3) cross term, cost `diag(0,0,1)`.
//! The anchor is `x_bar = diag(1,0,0)` with slack `s_bar = diag(0,0,1)`;
//! the maximum-rank solution `diag(1/2, 1/2, 0)` certifies strict
//! complementarity.

use crate::oracle::{PsiTriple, ToyId, ToyOracle};
use nalgebra::DVector;
use sdpmodel::SdpProblem;
use symcore::SymMatrix;

pub fn build() -> ToyOracle {
    let a1 = SymMatrix::identity(3);
    let a2 = SymMatrix::sym_unit(3, 1, 2);
    let problem = SdpProblem::new(
        vec![a1, a2],
        vec![1.0, 0.0],
        SymMatrix::from_diag(&[0.0, 0.0, 1.0]),
    )
    .unwrap();
    ToyOracle::assemble(
        ToyId::Toy2,
        problem,
        SymMatrix::from_diag(&[1.0, 0.0, 0.0]),
        SymMatrix::from_diag(&[0.0, 0.0, 1.0]),
        DVector::zeros(2),
        SymMatrix::from_diag(&[0.5, 0.5, 0.0]),
        SymMatrix::from_diag(&[0.0, 0.0, 1.0]),
    )
}

/// Family member `[[-h22, h12, 0], [h12, h22, h23], [0, h23, 0]]`.
pub fn direction(h12: f64, h22: f64, h23: f64) -> SymMatrix {
    let mut h = SymMatrix::zeros(3);
    h.set(0, 0, -h22);
    h.set(0, 1, h12);
    h.set(1, 1, h22);
    h.set(1, 2, h23);
    h
}

pub fn drift_e(h12: f64, h22: f64, h23: f64, sigma: f64) -> SymMatrix {
    let mut e = SymMatrix::zeros(3);
    e.set(0, 1, -2.0 * h12 * (-h22).max(0.0));
    e.set(0, 2, 2.0 * h12 * h23 / (1.0 + sigma));
    e.set(1, 1, 2.0 * h12 * h12);
    e.set(1, 2, 2.0 * h22.max(0.0) * h23 / sigma);
    e
}

pub fn drift_e_perp(h12: f64, h22: f64, h23: f64, sigma: f64) -> SymMatrix {
    let mut e = SymMatrix::zeros(3);
    e.set(0, 1, -2.0 * h12 * h22.min(0.0));
    e.set(0, 2, -2.0 * h12 * h23 / (1.0 + sigma));
    e.set(1, 1, -2.0 * h23 * h23 / sigma);
    e.set(1, 2, -2.0 * h22.max(0.0) * h23 / sigma);
    e
}

pub fn psi(_h12: f64, h22: f64, h23: f64, sigma: f64) -> PsiTriple {
    let q = h23 * h23 / sigma;
    let psi_x = SymMatrix::from_diag(&[-q, q, 0.0]);
    let mut psi_s = SymMatrix::zeros(3);
    psi_s.set(1, 2, 2.0 * h22 * h23 / (sigma * sigma));
    let psi_z = psi_x.axpy(-sigma, &psi_s);
    PsiTriple {
        psi_z,
        psi_x,
        psi_s,
    }
}
