use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symcore::SymMatrix;
use toysuite::{toy1, toy2, toy3, ToyError, ToyOracle, ToyParams};

#[test]
fn directions_match_their_displayed_entries() {
    let o = toy1();
    let h = o.direction(&ToyParams::Toy1 { a: 0.7, b: -0.2 }).unwrap();
    assert_eq!(h.get(0, 0), 0.7);
    assert_eq!(h.get(0, 1), -0.2);
    assert_eq!(h.get(1, 1), 0.2);

    let o = toy2();
    let h = o
        .direction(&ToyParams::Toy2 {
            h12: 0.4,
            h22: 0.9,
            h23: -1.1,
        })
        .unwrap();
    let expected = [
        [-0.9, 0.4, 0.0],
        [0.4, 0.9, -1.1],
        [0.0, -1.1, 0.0],
    ];
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(h.get(i, j), expected[i][j]);
        }
    }

    let o = toy3();
    let h = o.direction(&ToyParams::Toy3 { h: 2.0, eps: 0.1 }).unwrap();
    let s2 = 2.0f64.sqrt();
    let expected = [
        [-1.0, 0.0, -s2 / 4.0, 1.0, 2.0, 0.0],
        [0.0, 1.0, 0.0, 0.0, 0.0, 1.0],
        [-s2 / 4.0, 0.0, 0.0, 0.0, 0.0, 1.0],
        [1.0, 0.0, 0.0, -0.1, 0.0, 1.0],
        [2.0, 0.0, 0.0, 0.0, -1.0, 1.0],
        [0.0, 1.0, 1.0, 1.0, 1.0, 1.1],
    ];
    for i in 0..6 {
        for j in 0..6 {
            assert!(
                (h.get(i, j) - expected[i][j]).abs() <= 1e-15,
                "entry ({i}, {j})"
            );
        }
    }
}

/// The stalled-cone description splits a direction into a primal-side
/// pattern (interactions with the positive and leading zero coordinates)
/// and a dual-side pattern (interactions with the negative and trailing
/// zero coordinates); membership requires the primal part to be orthogonal
/// to the constraint range and the dual part to lie inside it.
#[test]
fn toy3_family_satisfies_the_cone_pattern_conditions() {
    let o = toy3();
    for (h_val, eps) in [(2.0, 0.0), (1.0, 0.3), (-1.5, 0.05)] {
        let h = o.direction(&ToyParams::Toy3 { h: h_val, eps }).unwrap();
        let mut primal = SymMatrix::zeros(6);
        primal.set(0, 0, h.get(0, 0));
        for j in 1..5 {
            primal.set(0, j, h.get(0, j));
        }
        primal.set(1, 1, h.get(1, 1));
        primal.set(1, 2, h.get(1, 2));
        primal.set(2, 2, h.get(2, 2));

        let mut dual = SymMatrix::zeros(6);
        for i in 1..5 {
            dual.set(i, 5, h.get(i, 5));
        }
        for i in 3..5 {
            for j in i..5 {
                dual.set(i, j, h.get(i, j));
            }
        }
        dual.set(5, 5, h.get(5, 5));

        assert!(
            o.problem.project_range(&primal).norm() <= 1e-12,
            "(h, eps) = ({h_val}, {eps})"
        );
        assert!(
            o.problem.project_orth(&dual).norm() <= 1e-12,
            "(h, eps) = ({h_val}, {eps})"
        );
    }
}

#[test]
fn cone_and_tangent_membership_follow_the_family_constraints() {
    let o1 = toy1();
    assert!(o1.in_cone(&ToyParams::Toy1 { a: 0.0, b: 5.0 }).unwrap());
    assert!(!o1.in_cone(&ToyParams::Toy1 { a: -0.1, b: 0.0 }).unwrap());
    assert!(o1.in_tangent(&ToyParams::Toy1 { a: 1.0, b: 0.0 }).unwrap());
    assert!(!o1.in_tangent(&ToyParams::Toy1 { a: 1.0, b: 0.1 }).unwrap());

    let o2 = toy2();
    assert!(o2
        .in_cone(&ToyParams::Toy2 {
            h12: -3.0,
            h22: 0.2,
            h23: 9.0
        })
        .unwrap());
    assert!(!o2
        .in_cone(&ToyParams::Toy2 {
            h12: 0.0,
            h22: -0.2,
            h23: 0.0
        })
        .unwrap());
    assert!(o2
        .in_tangent(&ToyParams::Toy2 {
            h12: 1.0,
            h22: 1.0,
            h23: 0.0
        })
        .unwrap());

    let o3 = toy3();
    assert!(o3.in_cone(&ToyParams::Toy3 { h: -4.0, eps: 0.0 }).unwrap());
    assert!(!o3.in_cone(&ToyParams::Toy3 { h: 0.0, eps: -0.1 }).unwrap());
    // No member of the family is tangent: the couplings into the negative
    // space are fixed at one.
    assert!(!o3.in_tangent(&ToyParams::Toy3 { h: 0.0, eps: 0.0 }).unwrap());
}

#[test]
fn parameter_validation_rejects_mismatches_and_out_of_family_points() {
    let o = toy1();
    assert!(matches!(
        o.direction(&ToyParams::Toy2 {
            h12: 0.0,
            h22: 0.0,
            h23: 0.0
        }),
        Err(ToyError::ParamsMismatch { .. })
    ));
    assert!(matches!(
        o.psi(&ToyParams::Toy1 { a: -1.0, b: 0.0 }, 1.0),
        Err(ToyError::OutOfFamily { .. })
    ));
    assert!(matches!(
        o.psi(&ToyParams::Toy1 { a: f64::NAN, b: 0.0 }, 1.0),
        Err(ToyError::OutOfFamily { .. })
    ));
    assert!(matches!(
        o.psi(&ToyParams::Toy1 { a: 1.0, b: 0.0 }, -1.0),
        Err(ToyError::InvalidSigma { .. })
    ));
    assert!(matches!(
        toy3().rescaled_params(&ToyParams::Toy3 { h: 0.0, eps: 0.0 }, 1.0, 2.0),
        Err(ToyError::Unsupported { .. })
    ));
}

#[test]
fn samplers_produce_members_with_the_advertised_membership() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for o in [toy1(), toy2(), toy3()] {
        for _ in 0..50 {
            let p = o.sample_cone_complement(&mut rng);
            assert!(o.in_cone(&p).unwrap());
            assert!(!o.in_tangent(&p).unwrap());
            if let Some(t) = o.sample_tangent(&mut rng) {
                assert!(o.in_tangent(&t).unwrap());
            }
        }
    }
    sampled_tangent_exists(&toy1(), &mut rng);
    sampled_tangent_exists(&toy2(), &mut rng);
    assert!(toy3().sample_tangent(&mut rng).is_none());
}

fn sampled_tangent_exists(o: &ToyOracle, rng: &mut ChaCha8Rng) {
    assert!(o.sample_tangent(rng).is_some());
}
