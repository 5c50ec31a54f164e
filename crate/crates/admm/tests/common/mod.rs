use nalgebra::DVector;
use sdpmodel::{Iterate, SdpProblem};
use symcore::SymMatrix;

/// 2x2 instance: single constraint [[0,1],[1,-1]] with zero right-hand side
/// and cost diag(0,1). Optimal triple (0, 0, diag(0,1)); the splitting
/// fixed point is diag(0, -sigma).
pub fn tiny() -> SdpProblem {
    let a1 = SymMatrix::new(2, vec![0.0, 1.0, -1.0]).unwrap();
    SdpProblem::new(vec![a1], vec![0.0], SymMatrix::from_diag(&[0.0, 1.0])).unwrap()
}

pub fn tiny_solution(sigma: f64) -> Iterate {
    Iterate {
        x: SymMatrix::zeros(2),
        y: DVector::zeros(1),
        s: SymMatrix::from_diag(&[0.0, 1.0]),
        sigma,
    }
}

/// 3x3 instance: trace one, zero (2,3) cross term, cost diag(0,0,1).
/// Optimal triple (diag(1,0,0), 0, diag(0,0,1)).
pub fn trace_instance() -> SdpProblem {
    let a1 = SymMatrix::identity(3);
    let a2 = SymMatrix::sym_unit(3, 1, 2);
    SdpProblem::new(vec![a1, a2], vec![1.0, 0.0], SymMatrix::from_diag(&[0.0, 0.0, 1.0])).unwrap()
}

pub fn trace_solution(sigma: f64) -> Iterate {
    Iterate {
        x: SymMatrix::from_diag(&[1.0, 0.0, 0.0]),
        y: DVector::zeros(2),
        s: SymMatrix::from_diag(&[0.0, 0.0, 1.0]),
        sigma,
    }
}
