//! Dense real symmetric matrix kernel.
//!
//! Provides the storage type [`SymMatrix`] (upper triangle, column-major),
//! eigendecomposition with eigenvalue clustering into sign-labeled groups,
//! orthogonal projections onto the PSD/NSD cones, and the angle between two
//! matrices under the Frobenius inner product. Everything downstream (solvers,
//! directional jets, limit maps) is built on these primitives.

mod eigen;
mod error;
mod matrix;
pub mod par;

pub use eigen::{
    default_tols, eigen_decompose, nsd_project, psd_project, EigenDecomposition, EigenGroup,
    EigenPartition, SignClass, DEFAULT_CLUSTER_TOL_FACTOR, DEFAULT_ZERO_TOL_FACTOR,
};
pub use error::SymError;
pub use matrix::{angle_between, SymMatrix};
