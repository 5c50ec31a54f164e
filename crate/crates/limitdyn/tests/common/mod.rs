#![allow(dead_code)]

use limitdyn::{build_anchor, AnchorTols, KktAnchor};
use rand::Rng;
use symcore::SymMatrix;
use toysuite::{toy1, toy2, toy3, ToyOracle, ToyParams};

/// Builds the working anchor of a reference instance at the given penalty.
pub fn anchor_for(o: &ToyOracle, sigma: f64) -> KktAnchor {
    build_anchor(
        &o.problem,
        &o.x_bar,
        &o.s_bar,
        Some((&o.x_sc, &o.s_sc)),
        sigma,
        AnchorTols::default(),
    )
    .expect("reference anchors are valid")
}

pub fn all_toys() -> Vec<ToyOracle> {
    vec![toy1(), toy2(), toy3()]
}

/// A parameter grid of stalled-cone members covering each instance's
/// direction family, including the branch boundaries of the third instance.
pub fn cone_grid(o: &ToyOracle) -> Vec<ToyParams> {
    let s2 = 2.0f64.sqrt();
    match o.id() {
        toysuite::ToyId::Toy1 => {
            let mut pts = Vec::new();
            for a in [0.0, 0.3, 1.0, 2.5] {
                for b in [-1.2, -0.4, 0.0, 0.7, 1.5] {
                    pts.push(ToyParams::Toy1 { a, b });
                }
            }
            pts
        }
        toysuite::ToyId::Toy2 => {
            let mut pts = Vec::new();
            for h12 in [-0.8, 0.3, 1.1] {
                for h22 in [0.0, 0.6, 1.4] {
                    for h23 in [-1.0, 0.5] {
                        pts.push(ToyParams::Toy2 { h12, h22, h23 });
                    }
                }
            }
            pts.push(ToyParams::Toy2 {
                h12: 0.0,
                h22: 1.0,
                h23: 2.0,
            });
            pts.push(ToyParams::Toy2 {
                h12: 1.0,
                h22: 0.0,
                h23: -2.0,
            });
            pts.push(ToyParams::Toy2 {
                h12: 0.5,
                h22: 2.0,
                h23: 1.0,
            });
            pts
        }
        toysuite::ToyId::Toy3 => {
            let mut pts = Vec::new();
            for h in [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0] {
                for eps in [0.0, 0.1, 0.4] {
                    pts.push(ToyParams::Toy3 { h, eps });
                }
            }
            for h in [s2 - 1e-3, s2 + 1e-3, -s2 - 1e-3, -s2 + 1e-3] {
                pts.push(ToyParams::Toy3 { h, eps: 0.0 });
                pts.push(ToyParams::Toy3 { h, eps: 0.05 });
            }
            pts
        }
    }
}

/// Iteration budget sized so the increment estimator settles well below the
/// comparison tolerances on each instance.
pub fn iter_budget(o: &ToyOracle) -> usize {
    match o.id() {
        toysuite::ToyId::Toy3 => 60_000,
        _ => 20_000,
    }
}

pub fn assert_rel_close(got: &SymMatrix, want: &SymMatrix, tol: f64, what: &str) {
    let err = got.axpy(-1.0, want).norm();
    let denom = 1.0 + want.norm();
    assert!(
        err <= tol * denom,
        "{what}: difference {err:e} exceeds {tol:e} * (1 + {:e})",
        want.norm()
    );
}

/// Dense random symmetric matrix with independent N(0, 1)-ish entries.
pub fn random_sym<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SymMatrix {
    let mut m = SymMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            m.set(i, j, rng.gen_range(-1.0..1.0));
        }
    }
    m
}
