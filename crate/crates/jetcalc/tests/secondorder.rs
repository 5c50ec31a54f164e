use jetcalc::{
    build_three_level, pi_minus_dd2, pi_plus_dd1, pi_plus_dd2, taylor_remainder, JetTols,
};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symcore::{SignClass, SymMatrix};

fn random_sym(n: usize, scale: f64, rng: &mut impl Rng) -> SymMatrix {
    SymMatrix::from_fn(n, |_, _| rng.gen_range(-scale..scale))
}

fn random_orthonormal(n: usize, rng: &mut impl Rng) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0)).qr().q()
}

#[test]
fn second_derivative_is_w_on_the_positive_definite_region() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let z = SymMatrix::from_diag(&[4.0, 2.5, 1.0]);
    let h = random_sym(3, 1.0, &mut rng);
    let w = random_sym(3, 1.0, &mut rng);
    let d2 = pi_plus_dd2(&z, &h, &w).unwrap();
    assert!((&d2 - &w).norm() < 1e-12);
}

#[test]
fn taylor_remainder_shows_o_t_squared_trend() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..50 {
        let n = rng.gen_range(3..7);
        let z = random_sym(n, 2.0, &mut rng);
        let h = random_sym(n, 1.0, &mut rng);
        let w = random_sym(n, 1.0, &mut rng);
        let coarse = taylor_remainder(&z, &h, &w, 1e-2).unwrap() / 1e-4;
        let fine = taylor_remainder(&z, &h, &w, 1e-3).unwrap() / 1e-6;
        // o(t^2) trend: the normalized remainder must not grow as t shrinks,
        // up to a floating-point floor for samples where the expansion is
        // exact.
        assert!(
            fine <= 10.0 * coarse + 1e-9,
            "trial {trial}: normalized remainder grew from {coarse:.3e} to {fine:.3e}"
        );
    }
}

#[test]
fn second_order_jets_are_additive() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..500 {
        let n = rng.gen_range(2..6);
        let z = random_sym(n, 2.0, &mut rng);
        let h = random_sym(n, 1.0, &mut rng);
        let w = random_sym(n, 1.0, &mut rng);
        let plus = pi_plus_dd2(&z, &h, &w).unwrap();
        let minus = pi_minus_dd2(&z, &h, &w).unwrap();
        let scale = 1.0 + w.norm() + h.norm() * h.norm() / z.norm().max(1e-2);
        assert!((&(&plus + &minus) - &w).norm() <= 1e-10 * scale);
    }
}

#[test]
fn rotation_covariance_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..25 {
        let n = rng.gen_range(3..6);
        let z = random_sym(n, 2.0, &mut rng);
        let h = random_sym(n, 1.0, &mut rng);
        let w = random_sym(n, 1.0, &mut rng);
        let q = random_orthonormal(n, &mut rng);
        let direct = pi_plus_dd2(&z, &h, &w).unwrap().conjugate_by(&q);
        let rotated = pi_plus_dd2(
            &z.conjugate_by(&q),
            &h.conjugate_by(&q),
            &w.conjugate_by(&q),
        )
        .unwrap();
        let scale = 1.0 + direct.norm();
        assert!((&direct - &rotated).norm() <= 1e-10 * scale);
    }
}

#[test]
fn zero_block_is_self_similar() {
    // The (0,0) block of Pi_+'' must equal
    // 2 sum_{c in pos} (1/lambda_c) H_0c H_c0 + Pi_+'(H_00; V_0) where V_0 is
    // the drift-corrected W block; recompute that expression from scratch and
    // compare against the assembled jet.
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..20 {
        let z = SymMatrix::from_diag(&[2.0, 0.0, 0.0, -1.5]);
        let h = random_sym(4, 1.0, &mut rng);
        let w = random_sym(4, 1.0, &mut rng);
        let d2 = pi_plus_dd2(&z, &h, &w).unwrap();

        let desc = build_three_level(&z, &h, &w, JetTols::for_matrix(&z)).unwrap();
        let zero_idx = desc
            .level1
            .groups
            .iter()
            .position(|g| g.label == SignClass::Zero)
            .unwrap();
        let zero_range = desc.range(zero_idx);
        let hd = desc.h.to_dense();
        let mut expected = DMatrix::zeros(zero_range.len(), zero_range.len());
        for g in desc.level1.groups_with(SignClass::Pos) {
            let h0c = hd.view((zero_range.start, g.range.start), (zero_range.len(), g.len()));
            expected += (2.0 / g.value) * (h0c * h0c.transpose());
        }
        let h00 = SymMatrix::from_fn(zero_range.len(), |i, j| {
            desc.h.get(zero_range.start + i, zero_range.start + j)
        });
        expected += pi_plus_dd1(&h00, &desc.level2[zero_idx].v).unwrap().to_dense();

        // Compare in the description frame: the eigensolver may rotate within
        // the zero group, and both sides transform covariantly under that
        // rotation.
        let d2_frame = d2.conjugate_by(&desc.q);
        let actual = DMatrix::from_fn(zero_range.len(), zero_range.len(), |i, j| {
            d2_frame.get(zero_range.start + i, zero_range.start + j)
        });
        assert!((actual - expected).norm() <= 1e-10 * (1.0 + w.norm()));
    }
}
