//! Directional jets of the PSD/NSD cone projections.
//!
//! For a symmetric `Z` with eigenvalue groups `alpha_k` (positive, zero,
//! negative), the projection `Pi_+` is directionally differentiable; along the
//! parabolic path `Z + tH + (t^2/2)W` it admits a second-order expansion
//!
//! ```text
//! Pi_+(Z + tH + (t^2/2)W) = Pi_+(Z) + t Pi_+'(Z; H) + (t^2/2) Pi_+''(Z; H, W) + o(t^2).
//! ```
//!
//! This crate evaluates `Pi_+'`, `Pi_+''` and their NSD counterparts from the
//! nested three-level eigen-structure of the triplet `(Z, H, W)`, plus an
//! independent oracle for `Pi_+''` obtained by specializing the general
//! spectral-function second derivative `Gamma_1 + Gamma_2 + Gamma_3` to
//! `f = max(x, 0)`.
//!
//! The NSD jets are computed through the exact symmetry
//! `Pi_-(Z) = -Pi_+(-Z)`, so the additivity identities `Pi_+' + Pi_-' = H`
//! and `Pi_+'' + Pi_-'' = W` are genuine cross-checks rather than
//! definitions.

mod describe;
mod error;
mod firstorder;
mod gamma;
mod secondorder;

pub use describe::{
    build_three_level, JetTols, LevelThree, LevelTwo, ThreeLevelDescription,
    CONDITION_WARNING_FACTOR,
};
pub use error::JetError;
pub use firstorder::{pi_minus_dd1, pi_plus_dd1};
pub use gamma::{general_spectral_dd2, IdentityTable, PosPartTable, SpectralTable};
pub use secondorder::{pi_minus_dd2, pi_plus_dd2, pi_plus_dd2_from, taylor_remainder};
