mod common;

use common::{all_toys, anchor_for, assert_rel_close, cone_grid, random_sym};
use jetcalc::{pi_minus_dd2, pi_plus_dd2};
use limitdyn::{DirectionOps, LimitDynError};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symcore::SymMatrix;
use toysuite::{toy1, ToyParams};

#[test]
fn split_operators_are_complementary() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for o in all_toys() {
        let anchor = anchor_for(&o, 1.0);
        let p = o.sample_cone_complement(&mut rng);
        let h = o.direction(&p).unwrap();
        let ops = DirectionOps::new(&anchor, &h, anchor.membership_tol(&h)).unwrap();
        for _ in 0..100 {
            let w = random_sym(&mut rng, anchor.order()).scale(2.0);
            let sum = ops.theta(&w).unwrap().axpy(1.0, &ops.theta_perp(&w).unwrap());
            assert_rel_close(&sum, &w, 1e-12, "theta + theta_perp");
        }
    }
}

#[test]
fn drift_matrices_match_the_closed_forms() {
    for o in all_toys() {
        let anchor_cache: Vec<_> = [0.5, 1.0, 2.5]
            .iter()
            .map(|&s| (s, anchor_for(&o, s)))
            .collect();
        for p in cone_grid(&o) {
            for (sigma, anchor) in &anchor_cache {
                let h = o.direction(&p).unwrap();
                let ops = DirectionOps::new(anchor, &h, anchor.membership_tol(&h)).unwrap();
                let e_want = o.drift_e(&p, *sigma).unwrap();
                let ep_want = o.drift_e_perp(&p, *sigma).unwrap();
                assert_rel_close(&ops.e, &e_want, 1e-12, "primal drift");
                assert_rel_close(&ops.e_perp, &ep_want, 1e-12, "dual drift");
                let psi_drive_want = anchor
                    .problem
                    .project_range(&e_want)
                    .axpy(1.0, &anchor.problem.project_orth(&ep_want))
                    .scale(-1.0);
                assert_rel_close(&ops.psi_drive, &psi_drive_want, 1e-12, "drive term");
            }
        }
    }
}

#[test]
fn two_by_two_drift_displays_are_reproduced_exactly() {
    let o = toy1();
    for (a, b, sigma) in [(1.0, 1.0, 1.0), (1.5, -0.7, 2.0), (0.0, 1.0, 0.5)] {
        let anchor = anchor_for(&o, sigma);
        let h = o.direction(&ToyParams::Toy1 { a, b }).unwrap();
        let ops = DirectionOps::new(&anchor, &h, anchor.membership_tol(&h)).unwrap();
        assert!((ops.e.get(0, 0)).abs() <= 1e-14);
        assert!((ops.e.get(0, 1) - 2.0 * a * b / sigma).abs() <= 1e-14);
        assert!((ops.e.get(1, 1)).abs() <= 1e-14);
        assert!((ops.e_perp.get(0, 0) + 2.0 * b * b / sigma).abs() <= 1e-14);
        assert!((ops.e_perp.get(0, 1) + 2.0 * a * b / sigma).abs() <= 1e-14);
        assert!((ops.e_perp.get(1, 1)).abs() <= 1e-14);
        assert!((ops.psi_drive.get(0, 0) - 2.0 * b * b / sigma).abs() <= 1e-14);
        assert!((ops.psi_drive.get(0, 1) + 2.0 * a * b / (3.0 * sigma)).abs() <= 1e-14);
        assert!((ops.psi_drive.get(1, 1) - 8.0 * a * b / (3.0 * sigma)).abs() <= 1e-14);
    }
}

#[test]
fn tangent_directions_leave_only_zero_block_drift() {
    let o = toy1();
    let anchor = anchor_for(&o, 1.0);
    let h = o.direction(&ToyParams::Toy1 { a: 1.3, b: 0.0 }).unwrap();
    let ops = DirectionOps::new(&anchor, &h, anchor.membership_tol(&h)).unwrap();
    // With no coupling into the negative space, both drift matrices vanish
    // here (the zero-block curvature needs off-block mass).
    assert!(ops.e.norm() <= 1e-14);
    assert!(ops.e_perp.norm() <= 1e-14);
    assert!(ops.psi_drive.norm() <= 1e-14);
}

#[test]
fn drift_sum_is_the_zero_block_curvature() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for o in all_toys() {
        let anchor = anchor_for(&o, 1.0);
        let p = o.sample_cone_complement(&mut rng);
        let h = o.direction(&p).unwrap();
        let ops = DirectionOps::new(&anchor, &h, anchor.membership_tol(&h)).unwrap();
        let sum = ops.e.axpy(1.0, &ops.e_perp);
        assert_rel_close(&sum, &ops.upsilon, 1e-15, "drift sum");
        // Supported on the zero block only, with the curvature values.
        let zero = anchor.zero();
        let n = anchor.order();
        for i in 0..n {
            for j in i..n {
                if zero.contains(&i) && zero.contains(&j) {
                    let mut want = 0.0;
                    for &c in anchor.pos.iter().chain(&anchor.neg) {
                        want += 2.0 * h.get(i, c) * h.get(j, c) / anchor.lambdas[c];
                    }
                    assert!((ops.upsilon.get(i, j) - want).abs() <= 1e-12);
                } else {
                    assert!(ops.upsilon.get(i, j).abs() <= 1e-14);
                }
            }
        }
    }
}

#[test]
fn second_derivatives_factor_through_the_split_operators() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for o in all_toys() {
        let anchor = anchor_for(&o, 1.0);
        for p in cone_grid(&o).into_iter().step_by(4) {
            let h = o.direction(&p).unwrap();
            let ops = DirectionOps::new(&anchor, &h, anchor.membership_tol(&h)).unwrap();
            for _ in 0..5 {
                let w = random_sym(&mut rng, anchor.order()).scale(2.0);
                let plus = ops.second_dd_plus(&w).unwrap();
                let minus = ops.second_dd_minus(&w).unwrap();
                let plus_ref = pi_plus_dd2(&anchor.z_bar, &h, &w).unwrap();
                let minus_ref = pi_minus_dd2(&anchor.z_bar, &h, &w).unwrap();
                assert_rel_close(&plus, &plus_ref, 1e-9, "positive-cone second derivative");
                assert_rel_close(&minus, &minus_ref, 1e-9, "negative-cone second derivative");
                // The two second derivatives always recombine to the
                // curvature argument.
                assert_rel_close(
                    &plus.axpy(1.0, &minus),
                    &w,
                    1e-12,
                    "second-derivative additivity",
                );
            }
        }
    }
}

#[test]
fn directions_outside_the_cone_are_rejected() {
    let o = toy1();
    let anchor = anchor_for(&o, 1.0);
    let h = SymMatrix::from_diag(&[-1.0, 0.0]);
    let err = DirectionOps::new(&anchor, &h, anchor.membership_tol(&h)).unwrap_err();
    assert!(matches!(err, LimitDynError::NotInCone { .. }));
}
