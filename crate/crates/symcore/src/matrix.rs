use crate::error::SymError;
use nalgebra::DMatrix;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// Dense real symmetric matrix of order `n`, storing only the upper triangle
/// in column-major order: entry `(i, j)` with `i <= j` lives at index
/// `j * (j + 1) / 2 + i`.
///
/// Symmetry is structural: there is no way to set `(i, j)` and `(j, i)` to
/// different values, so the materialized matrix satisfies `M == M^T` exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    entries: Vec<f64>,
}

#[inline]
fn tri_len(n: usize) -> usize {
    n * (n + 1) / 2
}

#[inline]
fn tri_index(i: usize, j: usize) -> usize {
    debug_assert!(i <= j);
    j * (j + 1) / 2 + i
}

impl SymMatrix {
    /// Builds a matrix from raw upper-triangle storage (column-major).
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self, SymError> {
        if entries.len() != tri_len(n) {
            return Err(SymError::StorageSize {
                n,
                len: entries.len(),
                expected: tri_len(n),
            });
        }
        Ok(Self { n, entries })
    }

    /// The zero matrix of order `n`.
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![0.0; tri_len(n)],
        }
    }

    /// The identity matrix of order `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Diagonal matrix from the given diagonal entries.
    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Builds entry `(i, j)` (with `i <= j`) from a closure.
    pub fn from_fn<F: FnMut(usize, usize) -> f64>(n: usize, mut f: F) -> Self {
        let mut m = Self::zeros(n);
        for j in 0..n {
            for i in 0..=j {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Symmetrizes a dense square matrix: stores `(M + M^T) / 2`.
    pub fn from_dense(m: &DMatrix<f64>) -> Self {
        assert_eq!(m.nrows(), m.ncols(), "from_dense requires a square matrix");
        Self::from_fn(m.nrows(), |i, j| 0.5 * (m[(i, j)] + m[(j, i)]))
    }

    /// The symmetric elementary matrix `E_ij + E_ji` (just `E_ii` on the diagonal).
    pub fn sym_unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m.set(i.min(j), i.max(j), 1.0);
        m
    }

    /// Matrix order.
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Raw upper-triangle storage (column-major).
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Entry `(i, j)` (either triangle).
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.entries[tri_index(i, j)]
    }

    /// Sets entry `(i, j)` (and its mirror).
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.entries[tri_index(i, j)] = value;
    }

    /// Materializes the full dense matrix.
    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    /// Checks that every entry is finite.
    pub fn check_finite(&self) -> Result<(), SymError> {
        for j in 0..self.n {
            for i in 0..=j {
                if !self.entries[tri_index(i, j)].is_finite() {
                    return Err(SymError::NonFinite { i, j });
                }
            }
        }
        Ok(())
    }

    /// Frobenius inner product `<A, B> = tr(A B)`.
    pub fn inner(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n, "inner product requires equal orders");
        let mut diag = 0.0;
        let mut off = 0.0;
        for j in 0..self.n {
            for i in 0..j {
                off += self.entries[tri_index(i, j)] * other.entries[tri_index(i, j)];
            }
            diag += self.entries[tri_index(j, j)] * other.entries[tri_index(j, j)];
        }
        diag + 2.0 * off
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.inner(self).max(0.0).sqrt()
    }

    /// Trace.
    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Entrywise scaling.
    pub fn scale(&self, factor: f64) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    /// `self + factor * other`.
    pub fn axpy(&self, factor: f64, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "axpy requires equal orders");
        Self {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + factor * b)
                .collect(),
        }
    }

    /// Congruence `Q^T M Q` by a square matrix `Q`; the result is
    /// re-symmetrized to absorb rounding.
    pub fn conjugate_by(&self, q: &DMatrix<f64>) -> Self {
        assert_eq!(q.nrows(), self.n, "conjugation dimension mismatch");
        let dense = self.to_dense();
        let rotated = q.transpose() * dense * q;
        Self::from_dense(&rotated)
    }

    /// Symmetrized product `(A B + B A) / 2` of two symmetric matrices.
    pub fn sym_product(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "product requires equal orders");
        let ab = self.to_dense() * other.to_dense();
        Self::from_dense(&ab)
    }
}

impl Add for &SymMatrix {
    type Output = SymMatrix;
    fn add(self, rhs: &SymMatrix) -> SymMatrix {
        self.axpy(1.0, rhs)
    }
}

impl Sub for &SymMatrix {
    type Output = SymMatrix;
    fn sub(self, rhs: &SymMatrix) -> SymMatrix {
        self.axpy(-1.0, rhs)
    }
}

impl Neg for &SymMatrix {
    type Output = SymMatrix;
    fn neg(self) -> SymMatrix {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &SymMatrix {
    type Output = SymMatrix;
    fn mul(self, rhs: f64) -> SymMatrix {
        self.scale(rhs)
    }
}

impl AddAssign<&SymMatrix> for SymMatrix {
    fn add_assign(&mut self, rhs: &SymMatrix) {
        assert_eq!(self.n, rhs.n, "add_assign requires equal orders");
        for (a, b) in self.entries.iter_mut().zip(&rhs.entries) {
            *a += b;
        }
    }
}

impl SubAssign<&SymMatrix> for SymMatrix {
    fn sub_assign(&mut self, rhs: &SymMatrix) {
        assert_eq!(self.n, rhs.n, "sub_assign requires equal orders");
        for (a, b) in self.entries.iter_mut().zip(&rhs.entries) {
            *a -= b;
        }
    }
}

/// Angle in radians between two nonzero matrices under the Frobenius inner
/// product, i.e. `arccos(<u, v> / (||u|| ||v||))` clamped to `[0, pi]`.
///
/// The cosine is clamped into `[-1, 1]` to absorb rounding of magnitude up to
/// about `1e-12`; a zero-norm operand is reported as an error so the caller
/// can skip the sample.
pub fn angle_between(u: &SymMatrix, v: &SymMatrix) -> Result<f64, SymError> {
    if u.order() != v.order() {
        return Err(SymError::DimensionMismatch {
            left: u.order(),
            right: v.order(),
        });
    }
    let nu = u.norm();
    let nv = v.norm();
    if nu == 0.0 || nv == 0.0 {
        return Err(SymError::ZeroNormAngle);
    }
    let cos = (u.inner(v) / (nu * nv)).clamp(-1.0, 1.0);
    Ok(cos.acos())
}
