mod common;

use common::{all_toys, anchor_for, assert_rel_close, cone_grid, iter_budget};
use limitdyn::{
    cone_c_membership, limit_map_decoupled, limit_map_iterative, range_inclusion_check,
    sample_cone_complement_direction, sample_stalled_direction, sample_tangent_direction,
    sigma_rescale, tangent_cone_membership, two_homogeneity_check, LimitDynError,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toysuite::{toy1, toy2, toy3, ToyParams};

#[test]
fn tangent_samples_have_vanishing_limits() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for o in all_toys() {
        let anchor = anchor_for(&o, 1.0);
        let mut drawn = 0;
        for _ in 0..50 {
            let Some(h) = sample_tangent_direction(&anchor, &mut rng).unwrap() else {
                continue;
            };
            drawn += 1;
            assert!(tangent_cone_membership(&anchor, &h, anchor.membership_tol(&h)).unwrap());
            let r = limit_map_decoupled(&anchor, &h, 100_000, 1e-11).unwrap();
            assert!(
                r.psi_z.norm() <= 1e-7,
                "{:?}: |psi| = {}",
                o.id(),
                r.psi_z.norm()
            );
        }
        assert!(drawn >= 50, "{:?}: tangent sampler starved", o.id());
    }
}

#[test]
fn cone_complement_samples_have_definite_limits() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for o in all_toys() {
        let anchor = anchor_for(&o, 1.0);
        let mut drawn = 0;
        for _ in 0..50 {
            let Some(h) = sample_cone_complement_direction(&anchor, &mut rng).unwrap() else {
                continue;
            };
            drawn += 1;
            let report = cone_c_membership(&anchor, &h, anchor.membership_tol(&h)).unwrap();
            assert!(report.member);
            assert!(!tangent_cone_membership(&anchor, &h, anchor.membership_tol(&h)).unwrap());
            let r = limit_map_decoupled(&anchor, &h, 100_000, 1e-11).unwrap();
            assert!(
                r.psi_z.norm() > 1e-3,
                "{:?}: |psi| = {}",
                o.id(),
                r.psi_z.norm()
            );
        }
        assert!(drawn >= 50, "{:?}: complement sampler starved", o.id());
    }
}

#[test]
fn stalled_samples_are_members_and_methods_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for o in all_toys() {
        let anchor = anchor_for(&o, 1.0);
        for _ in 0..5 {
            let Some(h) = sample_stalled_direction(&anchor, &mut rng).unwrap() else {
                panic!("{:?}: stalled sampler starved", o.id())
            };
            let it = limit_map_iterative(&anchor, &h, iter_budget(&o), 1e-9).unwrap();
            let de = limit_map_decoupled(&anchor, &h, 100_000, 1e-11).unwrap();
            assert_rel_close(&it.psi_z, &de.psi_z, 1e-6, "sampled method agreement");
        }
    }
}

#[test]
fn limits_are_two_homogeneous() {
    for o in all_toys() {
        let anchor = anchor_for(&o, 1.0);
        let p = match o.id() {
            toysuite::ToyId::Toy1 => ToyParams::Toy1 { a: 0.8, b: -0.6 },
            toysuite::ToyId::Toy2 => ToyParams::Toy2 {
                h12: 0.4,
                h22: 0.9,
                h23: 1.1,
            },
            toysuite::ToyId::Toy3 => ToyParams::Toy3 { h: 1.2, eps: 0.2 },
        };
        let h = o.direction(&p).unwrap();
        for t in [0.5, 2.0, 10.0] {
            let err = two_homogeneity_check(&anchor, &h, t, iter_budget(&o), 1e-9).unwrap();
            assert!(err <= 1e-7, "{:?} at t = {t}: {err:e}", o.id());
        }
        let err = two_homogeneity_check(&anchor, &h, 1.0, iter_budget(&o), 1e-9).unwrap();
        assert_eq!(err, 0.0);
    }
}

#[test]
fn penalty_transport_keeps_the_direction_stalled() {
    let o = toy2();
    let anchor = anchor_for(&o, 1.0);
    let p = ToyParams::Toy2 {
        h12: -0.5,
        h22: 0.9,
        h23: 1.4,
    };
    let h = o.direction(&p).unwrap();
    for sigma_new in [0.1, 0.5, 2.0, 10.0] {
        let moved = sigma_rescale(&anchor, &h, sigma_new, 20_000, 1e-9).unwrap();
        assert_eq!(moved.anchor.sigma, sigma_new);
        let report = cone_c_membership(
            &moved.anchor,
            &moved.h_new,
            moved.anchor.membership_tol(&moved.h_new),
        )
        .unwrap();
        assert!(report.member, "sigma' = {sigma_new}");
        // Recomputing the limit at the new anchor matches the prediction.
        let recomputed = limit_map_iterative(&moved.anchor, &moved.h_new, 20_000, 1e-9).unwrap();
        assert_rel_close(&recomputed.psi_x, &moved.psi_x_pred, 1e-7, "primal prediction");
        assert_rel_close(&recomputed.psi_s, &moved.psi_s_pred, 1e-7, "dual prediction");
    }
}

#[test]
fn penalty_transport_at_the_same_weight_is_the_identity() {
    let o = toy1();
    let anchor = anchor_for(&o, 1.0);
    let h = o.direction(&ToyParams::Toy1 { a: 1.2, b: 0.4 }).unwrap();
    let moved = sigma_rescale(&anchor, &h, 1.0, 20_000, 1e-9).unwrap();
    assert_rel_close(&moved.h_new, &h, 1e-12, "direction unchanged");
    let base = limit_map_iterative(&anchor, &h, 20_000, 1e-9).unwrap();
    assert_rel_close(&moved.psi_x_pred, &base.psi_x, 1e-12, "primal unchanged");
    assert_rel_close(&moved.psi_s_pred, &base.psi_s, 1e-12, "dual unchanged");
}

#[test]
fn penalty_transport_matches_the_two_by_two_closed_forms() {
    let o = toy1();
    let sigma = 1.0;
    let anchor = anchor_for(&o, sigma);
    let (a, b) = (1.0, 1.0);
    let h = o.direction(&ToyParams::Toy1 { a, b }).unwrap();
    for sigma_new in [0.5, 3.0] {
        let ratio = sigma_new / sigma;
        let moved = sigma_rescale(&anchor, &h, sigma_new, 20_000, 1e-9).unwrap();
        assert!((moved.psi_x_pred.get(0, 0) - ratio * 2.0 * b * b / sigma).abs() <= 1e-8);
        assert!(
            (moved.psi_s_pred.get(0, 1) - (1.0 / ratio) * 4.0 * a * b / (3.0 * sigma * sigma))
                .abs()
                <= 1e-8
        );
        assert!(
            (moved.psi_s_pred.get(1, 1) + (1.0 / ratio) * 4.0 * a * b / (3.0 * sigma * sigma))
                .abs()
                <= 1e-8
        );
    }
}

#[test]
fn penalty_transport_rejects_bad_weights() {
    let o = toy1();
    let anchor = anchor_for(&o, 1.0);
    let h = o.direction(&ToyParams::Toy1 { a: 1.0, b: 1.0 }).unwrap();
    for bad in [0.0, -2.0, f64::INFINITY] {
        let err = sigma_rescale(&anchor, &h, bad, 100, 1e-8).unwrap_err();
        assert!(matches!(err, LimitDynError::InvalidSigma { .. }));
    }
}

#[test]
fn scale_invariants_of_the_transported_limits() {
    // sigma' * |A psi_s'| and (1/sigma') * |psi_x'| are invariant across
    // penalty weights.
    let o = toy2();
    let anchor = anchor_for(&o, 1.0);
    let p = ToyParams::Toy2 {
        h12: 0.3,
        h22: 0.7,
        h23: -1.2,
    };
    let h = o.direction(&p).unwrap();
    let mut vals: Vec<(f64, f64)> = Vec::new();
    for sigma_new in [0.1, 0.5, 2.0, 10.0] {
        let moved = sigma_rescale(&anchor, &h, sigma_new, 20_000, 1e-9).unwrap();
        let a_psi_s = anchor.problem.apply_a(&moved.psi_s_pred).norm();
        vals.push((sigma_new * a_psi_s, moved.psi_x_pred.norm() / sigma_new));
    }
    for w in vals.windows(2) {
        assert!((w[0].0 - w[1].0).abs() <= 1e-6 * (1.0 + w[0].0));
        assert!((w[0].1 - w[1].1).abs() <= 1e-6 * (1.0 + w[0].1));
    }
}

#[test]
fn limits_stay_in_the_affine_hull_under_uniqueness() {
    // The first two instances have unique dual solutions, so the limit lies
    // in the affine hull of the stalled cone.
    for (o, p) in [
        (toy1(), ToyParams::Toy1 { a: 1.0, b: 1.0 }),
        (
            toy2(),
            ToyParams::Toy2 {
                h12: 0.6,
                h22: 0.8,
                h23: 1.0,
            },
        ),
    ] {
        let anchor = anchor_for(&o, 1.0);
        let h = o.direction(&p).unwrap();
        let report = range_inclusion_check(&anchor, &h, true, iter_budget(&o), 1e-9).unwrap();
        assert!(report.psi_norm > 0.1);
        assert!(
            report.distance <= 1e-8 * (1.0 + report.psi_norm),
            "{:?}: distance {:e}",
            o.id(),
            report.distance
        );
        assert_eq!(report.included, Some(true));
    }
}

#[test]
fn inclusion_fails_without_uniqueness() {
    // On the third instance past the branch threshold the limit leaves the
    // affine hull of the stalled cone.
    let o = toy3();
    let anchor = anchor_for(&o, 1.0);
    let h = o.direction(&ToyParams::Toy3 { h: 2.0, eps: 0.0 }).unwrap();
    let report = range_inclusion_check(&anchor, &h, false, iter_budget(&o), 1e-9).unwrap();
    assert!(
        report.distance > 1e-3,
        "expected a definite exclusion, distance {:e}",
        report.distance
    );
    assert_eq!(report.included, None);
}

#[test]
fn tangent_limits_are_trivially_included() {
    let o = toy1();
    let anchor = anchor_for(&o, 1.0);
    let h = o.direction(&ToyParams::Toy1 { a: 1.0, b: 0.0 }).unwrap();
    let report = range_inclusion_check(&anchor, &h, true, 20_000, 1e-10).unwrap();
    assert!(report.psi_norm <= 1e-9);
    assert!(report.distance <= 1e-9);
    assert_eq!(report.included, Some(true));
}

#[test]
fn grid_limits_respect_the_constraint_geometry() {
    for o in all_toys() {
        let anchor = anchor_for(&o, 1.0);
        for p in cone_grid(&o).into_iter().step_by(3) {
            let h = o.direction(&p).unwrap();
            let r = limit_map_decoupled(&anchor, &h, 100_000, 1e-11).unwrap();
            let scale = 1.0 + r.psi_x.norm() + r.psi_s.norm();
            assert!(anchor.problem.apply_a(&r.psi_x).norm() <= 1e-8 * scale);
            assert!(anchor.problem.project_orth(&r.psi_s).norm() <= 1e-8 * scale);
        }
    }
}
