use approx::assert_abs_diff_eq;
use symcore::{angle_between, SymError, SymMatrix};

#[test]
fn storage_is_upper_triangle_column_major() {
    // Order 3 upper triangle, column-major: (0,0), (0,1), (1,1), (0,2), (1,2), (2,2).
    let m = SymMatrix::new(3, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
    assert_eq!(m.get(0, 0), 1.0);
    assert_eq!(m.get(0, 1), 2.0);
    assert_eq!(m.get(1, 1), 3.0);
    assert_eq!(m.get(0, 2), 4.0);
    assert_eq!(m.get(1, 2), 5.0);
    assert_eq!(m.get(2, 2), 6.0);
    // Symmetry is structural.
    assert_eq!(m.get(2, 0), 4.0);
    let dense = m.to_dense();
    assert_eq!(dense, dense.transpose());
}

#[test]
fn storage_size_is_validated() {
    assert!(matches!(
        SymMatrix::new(3, vec![0.0; 5]),
        Err(SymError::StorageSize { .. })
    ));
}

#[test]
fn inner_product_counts_off_diagonal_twice() {
    let a = SymMatrix::from_fn(2, |i, j| if i == j { 1.0 } else { 3.0 });
    let b = SymMatrix::from_fn(2, |i, j| if i == j { 2.0 } else { 1.0 });
    // tr(AB) computed densely.
    let expected = (a.to_dense() * b.to_dense()).trace();
    assert_abs_diff_eq!(a.inner(&b), expected, epsilon = 1e-14);
}

#[test]
fn conjugation_matches_dense_congruence() {
    let m = SymMatrix::from_fn(3, |i, j| (i + 2 * j) as f64);
    let q = nalgebra::DMatrix::from_row_slice(
        3,
        3,
        &[0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0],
    );
    let rotated = m.conjugate_by(&q);
    let expected = q.transpose() * m.to_dense() * &q;
    assert!((rotated.to_dense() - expected).norm() < 1e-14);
}

#[test]
fn angle_of_matrix_with_itself_is_zero() {
    let u = SymMatrix::from_fn(3, |i, j| (i + j) as f64 + 1.0);
    assert_abs_diff_eq!(angle_between(&u, &u).unwrap(), 0.0, epsilon = 1e-7);
}

#[test]
fn angle_of_matrix_with_its_negation_is_pi() {
    let u = SymMatrix::from_fn(3, |i, j| (i + j) as f64 + 1.0);
    let v = u.scale(-1.0);
    assert_abs_diff_eq!(
        angle_between(&u, &v).unwrap(),
        std::f64::consts::PI,
        epsilon = 1e-7
    );
}

#[test]
fn orthogonal_diagonal_matrices_meet_at_right_angle() {
    // <diag(1,0), diag(0,1)> = 0, so the angle is pi/2.
    let u = SymMatrix::from_diag(&[1.0, 0.0]);
    let v = SymMatrix::from_diag(&[0.0, 1.0]);
    assert_abs_diff_eq!(
        angle_between(&u, &v).unwrap(),
        std::f64::consts::FRAC_PI_2,
        epsilon = 1e-12
    );
}

#[test]
fn zero_norm_angle_is_an_explicit_error() {
    let u = SymMatrix::zeros(2);
    let v = SymMatrix::identity(2);
    assert!(matches!(angle_between(&u, &v), Err(SymError::ZeroNormAngle)));
}
