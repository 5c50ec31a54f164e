use crate::error::SymError;
use crate::matrix::SymMatrix;
use nalgebra::DMatrix;
use std::ops::Range;

/// Maximum cyclic Jacobi sweeps before declaring failure; convergence is
/// quadratic, so well-posed inputs finish in a handful of sweeps.
const MAX_JACOBI_SWEEPS: usize = 100;

/// Full eigendecomposition by cyclic Jacobi rotations: returns unsorted
/// eigenvalues and the accumulated orthogonal `V` with `M = V diag(l) V^T`.
///
/// Jacobi is used instead of a tridiagonalization-based solver because it
/// resolves eigenvector rotations of arbitrarily small angle: an off-diagonal
/// entry of order `sqrt(eps) * ||M||` still produces the correct
/// `O(sqrt(eps))` rotation, which matters when projections are evaluated at
/// points within `O(t)` of a diagonal matrix and `O(t^2)` effects are the
/// signal of interest.
fn jacobi_eigen(m: &SymMatrix) -> Result<(Vec<f64>, DMatrix<f64>), SymError> {
    m.check_finite()?;
    let n = m.order();
    let mut a = m.to_dense();
    let mut v = DMatrix::identity(n, n);
    if n <= 1 {
        return Ok(((0..n).map(|k| a[(k, k)]).collect(), v));
    }
    let stop = f64::EPSILON * m.norm().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_JACOBI_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += 2.0 * a[(p, q)] * a[(p, q)];
            }
        }
        if off.sqrt() <= stop {
            return Ok(((0..n).map(|k| a[(k, k)]).collect(), v));
        }
        for p in 0..(n - 1) {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let tau = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = if tau.abs() > 1e150 {
                    0.5 / tau
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let (app, aqq) = (a[(p, p)], a[(q, q)]);
                a[(p, p)] = app - t * apq;
                a[(q, q)] = aqq + t * apq;
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    if k != p && k != q {
                        let (akp, akq) = (a[(k, p)], a[(k, q)]);
                        a[(k, p)] = c * akp - s * akq;
                        a[(k, q)] = s * akp + c * akq;
                        a[(p, k)] = a[(k, p)];
                        a[(q, k)] = a[(k, q)];
                    }
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    Err(SymError::EigenFailure { n, norm: m.norm() })
}

/// Default cluster tolerance is this factor times `max(1, ||M||_F)`.
///
/// Floating-point eigenvalues of structurally repeated eigenvalues differ at
/// roughly machine-epsilon scale; `1e-8` comfortably covers that while staying
/// far below genuine spectral gaps in the problems handled here.
pub const DEFAULT_CLUSTER_TOL_FACTOR: f64 = 1e-8;

/// Default zero tolerance is this factor times `max(1, ||M||_F)`; applied
/// after clustering, so a cluster is labeled zero only if its representative
/// eigenvalue is within this tolerance of zero.
pub const DEFAULT_ZERO_TOL_FACTOR: f64 = 1e-9;

/// Sign class of a clustered eigenvalue group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignClass {
    Pos,
    Zero,
    Neg,
}

/// One clustered group of eigenvalues: a contiguous index range in the
/// descending eigenvalue ordering, a sign label, and a representative value
/// (the group mean; exactly `0.0` for the zero group).
#[derive(Debug, Clone)]
pub struct EigenGroup {
    pub label: SignClass,
    pub value: f64,
    pub range: Range<usize>,
}

impl EigenGroup {
    /// Number of eigenvalues in the group.
    pub fn len(&self) -> usize {
        self.range.len()
    }

    pub fn is_empty(&self) -> bool {
        self.range.is_empty()
    }
}

/// Eigendecomposition `M = Q diag(lambdas) Q^T` with eigenvalues in
/// descending order.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Orthonormal eigenvector matrix; column `k` pairs with `lambdas[k]`.
    pub q: DMatrix<f64>,
    /// Eigenvalues, descending.
    pub lambdas: Vec<f64>,
    /// Tolerance used to cluster the eigenvalues into groups.
    pub cluster_tol: f64,
}

impl EigenDecomposition {
    /// Rebuilds `Q diag(lambdas) Q^T`; used by reconstruction checks.
    pub fn reconstruct(&self) -> SymMatrix {
        let lambda = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(self.lambdas.clone()));
        SymMatrix::from_dense(&(&self.q * lambda * self.q.transpose()))
    }
}

/// Grouping of the (descending) eigenvalues into sign-labeled clusters.
///
/// Groups are ordered by descending representative eigenvalue: all `Pos`
/// groups first, then at most one `Zero` group, then the `Neg` groups. Index
/// ranges are disjoint and cover `0..n`.
#[derive(Debug, Clone)]
pub struct EigenPartition {
    pub groups: Vec<EigenGroup>,
    pub zero_tol: f64,
}

impl EigenPartition {
    /// The unique zero-labeled group, if any.
    pub fn zero_group(&self) -> Option<&EigenGroup> {
        self.groups.iter().find(|g| g.label == SignClass::Zero)
    }

    /// Groups with the given label, in descending eigenvalue order.
    pub fn groups_with(&self, label: SignClass) -> impl Iterator<Item = &EigenGroup> {
        self.groups.iter().filter(move |g| g.label == label)
    }

    /// Total matrix order covered by the partition.
    pub fn order(&self) -> usize {
        self.groups.last().map_or(0, |g| g.range.end)
    }
}

/// Computes the eigendecomposition of `m` (eigenvalues descending) and the
/// clustered sign partition of its spectrum.
///
/// Clustering is a single-linkage sweep over the sorted eigenvalues: adjacent
/// eigenvalues within `cluster_tol` of each other share a group. After
/// clustering, every group whose representative lies within `zero_tol` of
/// zero is merged into a single zero group with representative exactly `0.0`;
/// remaining groups are labeled by the sign of their representative.
pub fn eigen_decompose(
    m: &SymMatrix,
    cluster_tol: f64,
    zero_tol: f64,
) -> Result<(EigenDecomposition, EigenPartition), SymError> {
    let n = m.order();
    let (vals, vecs) = jacobi_eigen(m)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| vals[b].partial_cmp(&vals[a]).unwrap());
    let lambdas: Vec<f64> = order.iter().map(|&k| vals[k]).collect();
    let mut q = DMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        q.set_column(new_col, &vecs.column(old_col));
    }

    // Single-linkage sweep over the sorted eigenvalues.
    let mut clusters: Vec<Range<usize>> = Vec::new();
    let mut start = 0usize;
    for k in 1..n {
        if lambdas[k - 1] - lambdas[k] > cluster_tol {
            clusters.push(start..k);
            start = k;
        }
    }
    if n > 0 {
        clusters.push(start..n);
    }

    let rep = |r: &Range<usize>| lambdas[r.clone()].iter().sum::<f64>() / r.len() as f64;

    // Merge every zero-labeled cluster (they are adjacent in the ordering)
    // into one zero group; the math treats all zero eigenvalues as a single
    // block.
    let mut groups: Vec<EigenGroup> = Vec::new();
    let mut pending_zero: Option<Range<usize>> = None;
    for r in clusters {
        let v = rep(&r);
        if v.abs() <= zero_tol {
            pending_zero = match pending_zero.take() {
                None => Some(r),
                Some(z) => Some(z.start..r.end),
            };
        } else {
            if let Some(z) = pending_zero.take() {
                groups.push(EigenGroup {
                    label: SignClass::Zero,
                    value: 0.0,
                    range: z,
                });
            }
            groups.push(EigenGroup {
                label: if v > 0.0 { SignClass::Pos } else { SignClass::Neg },
                value: v,
                range: r,
            });
        }
    }
    if let Some(z) = pending_zero.take() {
        groups.push(EigenGroup {
            label: SignClass::Zero,
            value: 0.0,
            range: z,
        });
    }

    Ok((
        EigenDecomposition {
            q,
            lambdas,
            cluster_tol,
        },
        EigenPartition { groups, zero_tol },
    ))
}

fn spectral_threshold(m: &SymMatrix, keep_positive: bool) -> Result<SymMatrix, SymError> {
    let (vals, vecs) = jacobi_eigen(m)?;
    let clipped: Vec<f64> = vals
        .iter()
        .map(|&l| if keep_positive { l.max(0.0) } else { l.min(0.0) })
        .collect();
    let lambda = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(clipped));
    Ok(SymMatrix::from_dense(&(&vecs * lambda * vecs.transpose())))
}

/// Orthogonal projection onto the PSD cone: eigenvalue thresholding at zero
/// keeping the positive part.
pub fn psd_project(m: &SymMatrix) -> Result<SymMatrix, SymError> {
    spectral_threshold(m, true)
}

/// Orthogonal projection onto the NSD cone: keeps the negative part.
pub fn nsd_project(m: &SymMatrix) -> Result<SymMatrix, SymError> {
    spectral_threshold(m, false)
}

/// Default `(cluster_tol, zero_tol)` pair for a matrix, scaled by its norm.
pub fn default_tols(m: &SymMatrix) -> (f64, f64) {
    let scale = m.norm().max(1.0);
    (
        DEFAULT_CLUSTER_TOL_FACTOR * scale,
        DEFAULT_ZERO_TOL_FACTOR * scale,
    )
}
