use jetcalc::{
    build_three_level, general_spectral_dd2, pi_plus_dd2, IdentityTable, JetTols, PosPartTable,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symcore::SymMatrix;

fn random_sym(n: usize, scale: f64, rng: &mut impl Rng) -> SymMatrix {
    SymMatrix::from_fn(n, |_, _| rng.gen_range(-scale..scale))
}

#[test]
fn identity_function_returns_w() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..50 {
        let n = rng.gen_range(2..7);
        let z = random_sym(n, 2.0, &mut rng);
        let h = random_sym(n, 1.0, &mut rng);
        let w = random_sym(n, 1.0, &mut rng);
        let desc = build_three_level(&z, &h, &w, JetTols::for_matrix(&z)).unwrap();
        let f2 = general_spectral_dd2(&desc, &IdentityTable).unwrap();
        assert!((&f2 - &w).norm() <= 1e-10 * (1.0 + w.norm()));
    }
}

#[test]
fn pos_part_agrees_with_blockwise_jet_on_random_triplets() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for trial in 0..100 {
        let n = rng.gen_range(3..8);
        let z = random_sym(n, 2.0, &mut rng);
        let h = random_sym(n, 1.0, &mut rng);
        let w = random_sym(n, 1.0, &mut rng);
        let desc = build_three_level(&z, &h, &w, JetTols::for_matrix(&z)).unwrap();
        let oracle = general_spectral_dd2(&desc, &PosPartTable).unwrap();
        let direct = pi_plus_dd2(&z, &h, &w).unwrap();
        let scale = 1.0 + direct.norm();
        assert!(
            (&oracle - &direct).norm() <= 1e-10 * scale,
            "trial {trial}: oracle and blockwise jet disagree"
        );
    }
}

#[test]
fn pos_part_agrees_with_blockwise_jet_on_singular_z() {
    // Zero eigenvalue groups exercise the Gamma_2/Gamma_3 branch structure.
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..50 {
        let z = SymMatrix::from_diag(&[2.0, 0.0, 0.0, 0.0, -1.0]);
        let h = random_sym(5, 1.0, &mut rng);
        let w = random_sym(5, 1.0, &mut rng);
        let desc = build_three_level(&z, &h, &w, JetTols::for_matrix(&z)).unwrap();
        let oracle = general_spectral_dd2(&desc, &PosPartTable).unwrap();
        let direct = pi_plus_dd2(&z, &h, &w).unwrap();
        assert!((&oracle - &direct).norm() <= 1e-10 * (1.0 + direct.norm()));
    }
}

#[test]
fn smooth_indefinite_case_matches_finite_differences() {
    let z = SymMatrix::from_diag(&[1.0, -1.0]);
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let h = random_sym(2, 1.0, &mut rng);
    let w = random_sym(2, 1.0, &mut rng);
    let desc = build_three_level(&z, &h, &w, JetTols::for_matrix(&z)).unwrap();
    let oracle = general_spectral_dd2(&desc, &PosPartTable).unwrap();
    // Parabolic finite-difference quotient of the projection.
    let t = 1e-4;
    let p0 = symcore::psd_project(&z).unwrap();
    let p1 = symcore::psd_project(&z.axpy(t, &h).axpy(0.5 * t * t, &w)).unwrap();
    let d1 = jetcalc::pi_plus_dd1(&z, &h).unwrap();
    let fd = (&(&p1 - &p0) - &d1.scale(t)).scale(2.0 / (t * t));
    assert!((&oracle - &fd).norm() < 1e-3);
}
