use crate::error::SdpError;
use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use symcore::SymMatrix;

/// Relative floor on the Gram eigenvalue ratio certifying that the `A_i` are
/// linearly independent (the surjectivity half of the standing assumption).
const GRAM_INDEPENDENCE_FLOOR: f64 = 1e-10;

/// Standard-form SDP data with cached factorization of the Gram matrix
/// `A A*` (entries `<A_i, A_j>`).
#[derive(Clone)]
pub struct SdpProblem {
    n: usize,
    a_mats: Vec<SymMatrix>,
    b: DVector<f64>,
    c: SymMatrix,
    gram_chol: Cholesky<f64, Dyn>,
    x_feas: SymMatrix,
}

impl std::fmt::Debug for SdpProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SdpProblem")
            .field("n", &self.n)
            .field("m", &self.a_mats.len())
            .finish()
    }
}

/// Primal-dual iterate of the three-step ADMM.
#[derive(Debug, Clone)]
pub struct Iterate {
    pub x: SymMatrix,
    pub y: DVector<f64>,
    pub s: SymMatrix,
    pub sigma: f64,
}

/// Relative KKT residuals of a primal-dual triple.
#[derive(Debug, Clone, Copy)]
pub struct KktResiduals {
    pub r_p: f64,
    pub r_d: f64,
    pub r_g: f64,
    pub r_max: f64,
}

impl SdpProblem {
    /// Builds a problem, certifying constraint independence and caching the
    /// Gram factorization plus the minimum-norm feasible point
    /// `x_feas = A* (A A*)^-1 b`.
    pub fn new(a_mats: Vec<SymMatrix>, b: Vec<f64>, c: SymMatrix) -> Result<Self, SdpError> {
        let n = c.order();
        let m = a_mats.len();
        for a in &a_mats {
            if a.order() != n {
                return Err(SdpError::DimensionMismatch {
                    expected: n,
                    got: a.order(),
                });
            }
            a.check_finite()?;
        }
        if b.len() != m {
            return Err(SdpError::ConstraintCountMismatch {
                expected: m,
                got: b.len(),
            });
        }
        c.check_finite()?;

        let gram = DMatrix::from_fn(m, m, |i, j| a_mats[i].inner(&a_mats[j]));
        let eigs = gram.clone().symmetric_eigenvalues();
        let max_eig = eigs.iter().cloned().fold(f64::MIN, f64::max);
        let min_eig = eigs.iter().cloned().fold(f64::MAX, f64::min);
        let ratio = min_eig / max_eig.max(f64::MIN_POSITIVE);
        if !(ratio > GRAM_INDEPENDENCE_FLOOR) {
            return Err(SdpError::DependentConstraints {
                ratio,
                floor: GRAM_INDEPENDENCE_FLOOR,
            });
        }
        let gram_chol = Cholesky::new(gram).ok_or(SdpError::DependentConstraints {
            ratio,
            floor: GRAM_INDEPENDENCE_FLOOR,
        })?;

        let b = DVector::from_vec(b);
        let mut problem = Self {
            n,
            a_mats,
            b: b.clone(),
            c,
            gram_chol,
            x_feas: SymMatrix::zeros(n),
        };
        problem.x_feas = problem.apply_a_adj(&problem.solve_gram(&b));
        let residual = (problem.apply_a(&problem.x_feas) - &b).norm();
        if residual > 1e-10 * (1.0 + b.norm()) {
            return Err(SdpError::FeasiblePointResidual { residual });
        }
        Ok(problem)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn num_constraints(&self) -> usize {
        self.a_mats.len()
    }

    pub fn constraint_matrices(&self) -> &[SymMatrix] {
        &self.a_mats
    }

    pub fn rhs(&self) -> &DVector<f64> {
        &self.b
    }

    pub fn cost(&self) -> &SymMatrix {
        &self.c
    }

    /// The cached minimum-norm feasible point `X~` with `A(X~) = b`.
    pub fn feasible_point(&self) -> &SymMatrix {
        &self.x_feas
    }

    /// Applies the constraint operator: `A(x)_i = <A_i, x>`.
    pub fn apply_a(&self, x: &SymMatrix) -> DVector<f64> {
        DVector::from_iterator(self.a_mats.len(), self.a_mats.iter().map(|a| a.inner(x)))
    }

    /// Applies the adjoint: `A*(y) = sum y_i A_i`.
    pub fn apply_a_adj(&self, y: &DVector<f64>) -> SymMatrix {
        let mut out = SymMatrix::zeros(self.n);
        for (a, &yi) in self.a_mats.iter().zip(y.iter()) {
            out += &a.scale(yi);
        }
        out
    }

    /// Solves `(A A*) z = rhs` through the cached Cholesky factorization.
    pub fn solve_gram(&self, rhs: &DVector<f64>) -> DVector<f64> {
        self.gram_chol.solve(rhs)
    }

    /// Orthogonal projection `P(m) = A* (A A*)^-1 A(m)` onto `span{A_i}`.
    pub fn project_range(&self, m: &SymMatrix) -> SymMatrix {
        self.apply_a_adj(&self.solve_gram(&self.apply_a(m)))
    }

    /// Complementary projection `P_perp(m) = m - P(m)`.
    pub fn project_orth(&self, m: &SymMatrix) -> SymMatrix {
        m - &self.project_range(m)
    }

    /// Relative KKT residuals of `(x, y, s)`:
    /// `r_p = ||A(x) - b|| / (1 + ||b||)`,
    /// `r_d = ||A*(y) + s - C||_F / (1 + ||C||_F)`,
    /// `r_g = |<C, x> - b^T y| / (1 + |<C, x>| + |b^T y|)`.
    pub fn kkt_residuals(&self, it: &Iterate) -> KktResiduals {
        let r_p = (self.apply_a(&it.x) - &self.b).norm() / (1.0 + self.b.norm());
        let dual_gap = &(&self.apply_a_adj(&it.y) + &it.s) - &self.c;
        let r_d = dual_gap.norm() / (1.0 + self.c.norm());
        let primal_obj = self.c.inner(&it.x);
        let dual_obj = self.b.dot(&it.y);
        let r_g = (primal_obj - dual_obj).abs() / (1.0 + primal_obj.abs() + dual_obj.abs());
        KktResiduals {
            r_p,
            r_d,
            r_g,
            r_max: r_p.max(r_d).max(r_g),
        }
    }

    /// Re-expresses the data in the basis `q`: `A_i <- q^T A_i q`,
    /// `C <- q^T C q`, `b` unchanged. Optimal values are invariant.
    pub fn congruence_transform(&self, q: &DMatrix<f64>) -> Result<SdpProblem, SdpError> {
        if q.nrows() != self.n || q.ncols() != self.n {
            return Err(SdpError::DimensionMismatch {
                expected: self.n,
                got: q.nrows(),
            });
        }
        let deviation = (q.transpose() * q - DMatrix::identity(self.n, self.n)).norm();
        if deviation > 1e-10 {
            return Err(SdpError::NotOrthonormal { deviation });
        }
        let a_mats = self.a_mats.iter().map(|a| a.conjugate_by(q)).collect();
        SdpProblem::new(a_mats, self.b.iter().cloned().collect(), self.c.conjugate_by(q))
    }
}
