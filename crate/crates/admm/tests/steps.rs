mod common;

use admm::{one_step_drs_step, split_z, three_step_admm_step, AdmmError};
use common::{tiny, tiny_solution, trace_instance, trace_solution};
use sdpmodel::Iterate;
use symcore::{psd_project, SymMatrix};

#[test]
fn kkt_triples_are_fixed_points_of_the_three_step_iteration() {
    for (p, it) in [
        (tiny(), tiny_solution(1.0)),
        (tiny(), tiny_solution(0.3)),
        (trace_instance(), trace_solution(1.0)),
        (trace_instance(), trace_solution(2.5)),
    ] {
        let next = three_step_admm_step(&p, &it).unwrap();
        assert!((&next.x - &it.x).norm() <= 1e-12);
        assert!((&next.s - &it.s).norm() <= 1e-12);
    }
}

#[test]
fn splitting_fixed_points_are_stationary() {
    for sigma in [1.0, 0.5, 4.0] {
        let p = tiny();
        let z = SymMatrix::from_diag(&[0.0, -sigma]);
        let next = one_step_drs_step(&p, &z, sigma).unwrap();
        assert!((&next - &z).norm() <= 1e-10);

        let p = trace_instance();
        let z = SymMatrix::from_diag(&[1.0, 0.0, -sigma]);
        let next = one_step_drs_step(&p, &z, sigma).unwrap();
        assert!((&next - &z).norm() <= 1e-10);
    }
}

#[test]
fn split_recovers_a_complementary_pair() {
    let z = SymMatrix::new(3, vec![1.0, 0.3, -0.7, 0.1, 0.0, -2.0]).unwrap();
    for sigma in [1.0, 0.25] {
        let (x, s) = split_z(&z, sigma).unwrap();
        assert!((&(&x - &s.scale(sigma)) - &z).norm() <= 1e-12);
        // Complementarity of the split pair.
        assert!(x.inner(&s).abs() <= 1e-12 * (1.0 + x.norm() * s.norm()));
    }
}

#[test]
fn matched_starts_keep_both_solvers_in_lockstep() {
    let p = tiny();
    let sigma = 1.0;
    let h = SymMatrix::new(2, vec![1.0, 1.0, -1.0]).unwrap();
    let mut z = &SymMatrix::from_diag(&[0.0, -sigma]) + &h.scale(0.3);
    let (x0, s0) = split_z(&z, sigma).unwrap();
    let mut it = Iterate {
        x: x0,
        y: nalgebra::DVector::zeros(1),
        s: s0,
        sigma,
    };
    for _ in 0..100 {
        it = three_step_admm_step(&p, &it).unwrap();
        z = one_step_drs_step(&p, &z, sigma).unwrap();
        let x_from_z = psd_project(&z).unwrap();
        assert!((&x_from_z - &it.x).norm() <= 1e-9);
    }
}

#[test]
fn residual_identities_hold_along_three_step_trajectories() {
    let p = trace_instance();
    let sigma = 0.8;
    let mut it = Iterate {
        x: SymMatrix::from_diag(&[0.2, 0.3, 0.1]),
        y: nalgebra::DVector::zeros(2),
        s: SymMatrix::zeros(3),
        sigma,
    };
    for _ in 0..50 {
        let next = three_step_admm_step(&p, &it).unwrap();
        let res = p.kkt_residuals(&next);
        let rp_pred =
            sigma * (p.apply_a(&(&next.s - &it.s))).norm() / (1.0 + p.rhs().norm());
        let rd_pred = (&next.x - &it.x).norm() / sigma / (1.0 + p.cost().norm());
        assert!((res.r_p - rp_pred).abs() <= 1e-9 * (1.0 + res.r_p));
        assert!((res.r_d - rd_pred).abs() <= 1e-9 * (1.0 + res.r_d));
        it = next;
    }
}

#[test]
fn non_finite_state_is_reported() {
    let p = tiny();
    let mut bad = tiny_solution(1.0);
    bad.x.set(0, 0, f64::NAN);
    assert!(matches!(
        three_step_admm_step(&p, &bad),
        Err(AdmmError::Sym(_)) | Err(AdmmError::Divergence { .. })
    ));
    assert!(matches!(
        one_step_drs_step(&p, &SymMatrix::zeros(2), -1.0),
        Err(AdmmError::NonPositiveSigma { .. })
    ));
}
