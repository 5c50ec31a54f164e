//! Reference SDP instances with closed-form second-order oracles.
//!
//! Three small instances exercise the degeneracy patterns that make
//! first-order SDP solvers stall: a 2x2 instance with a degenerate primal
//! ray, a 3x3 instance with a non-unique primal solution set, and a 6x6
//! instance whose second-order limit map is discontinuous on part of its
//! stalled cone. Each instance carries its problem data, KKT anchors, a
//! parametric family of stalled directions, and exact closed forms for the
//! drift operators and the second-order limit triple, for use as ground
//! truth when testing the numerical machinery.

mod error;
mod oracle;
mod sdpa;
mod toy1;
mod toy2;
mod toy3;

pub use error::ToyError;
pub use oracle::{oracle_psi, PsiTriple, ToyId, ToyOracle, ToyParams};
pub use toy3::BRANCH_GUARD;

/// The 2x2 instance.
pub fn toy1() -> ToyOracle {
    toy1::build()
}

/// The 3x3 instance, in the basis that diagonalizes the rank-one anchor.
pub fn toy2() -> ToyOracle {
    toy2::build()
}

/// The 6x6 instance with a discontinuous second-order limit map.
pub fn toy3() -> ToyOracle {
    toy3::build()
}
