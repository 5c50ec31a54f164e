//! The 2x2 reference instance: one constraint `[[0,1],[1,-1]]` with zero
//! right-hand side and cost `diag(0,1)`. The primal solution set is the ray
//! `diag(x, 0)` with `x >= 0`; the anchor is the degenerate endpoint
//! `x_bar = 0` with slack `s_bar = diag(0, 1)`.

use crate::oracle::{PsiTriple, ToyId, ToyOracle};
use nalgebra::DVector;
use sdpmodel::SdpProblem;
use symcore::SymMatrix;

pub fn build() -> ToyOracle {
    let a1 = SymMatrix::new(2, vec![0.0, 1.0, -1.0]).unwrap();
    let problem = SdpProblem::new(
        vec![a1],
        vec![0.0],
        SymMatrix::from_diag(&[0.0, 1.0]),
    )
    .unwrap();
    ToyOracle::assemble(
        ToyId::Toy1,
        problem,
        SymMatrix::zeros(2),
        SymMatrix::from_diag(&[0.0, 1.0]),
        DVector::zeros(1),
        SymMatrix::from_diag(&[1.0, 0.0]),
        SymMatrix::from_diag(&[0.0, 1.0]),
    )
}

/// Family member `[[a, b], [b, -b]]`.
pub fn direction(a: f64, b: f64) -> SymMatrix {
    SymMatrix::new(2, vec![a, b, -b]).unwrap()
}

pub fn drift_e(a: f64, b: f64, sigma: f64) -> SymMatrix {
    SymMatrix::new(2, vec![0.0, 2.0 * a.max(0.0) * b / sigma, 0.0]).unwrap()
}

pub fn drift_e_perp(a: f64, b: f64, sigma: f64) -> SymMatrix {
    SymMatrix::new(
        2,
        vec![
            -2.0 * b * b / sigma,
            -2.0 * a.max(0.0) * b / sigma,
            0.0,
        ],
    )
    .unwrap()
}

pub fn psi(a: f64, b: f64, sigma: f64) -> PsiTriple {
    let psi_x = SymMatrix::new(2, vec![2.0 * b * b / sigma, 0.0, 0.0]).unwrap();
    let coupling = 4.0 * a * b / (3.0 * sigma * sigma);
    let psi_s = SymMatrix::new(2, vec![0.0, coupling, -coupling]).unwrap();
    let psi_z = psi_x.axpy(-sigma, &psi_s);
    PsiTriple {
        psi_z,
        psi_x,
        psi_s,
    }
}
