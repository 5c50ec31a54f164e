//! Local second-order limit dynamics of splitting iterations for SDPs.
//!
//! When a splitting solver stalls near an optimal point, its first-order
//! updates vanish along a convex cone of directions and the per-iteration
//! increments are governed by a second-order limit map. This crate builds
//! validated KKT anchors, evaluates the residual operator and its
//! directional derivatives, tests membership in the stalled cone and the
//! tangent cone, assembles the blockwise drift operators, and computes the
//! second-order limit triple by two independent methods: a fixed-point
//! iteration on the second-order coefficient and a direct projection onto
//! the polar-cone split. Scaling laws in the penalty weight and quadratic
//! homogeneity come with built-in checks.

mod anchor;
mod error;
mod frame;
mod limitmap;
mod membership;
mod ops;
mod props;
mod rescale;
mod sample;
mod span;

pub use anchor::{build_anchor, AnchorTols, KktAnchor};
pub use error::LimitDynError;
pub use frame::{DirectionOps, SecondLevelFrame};
pub use limitmap::{
    limit_map_decoupled, limit_map_iterative, pattern_projection, polar_cone_specs, ConeSide,
    LimitMapResult, LimitMethod, PolarConeSpec,
};
pub use membership::{cone_c_membership, tangent_cone_membership, IndexClass, MembershipReport};
pub use ops::{delta, delta_dd1, delta_dd2, first_order_dynamics_run, FirstOrderRun};
pub use props::{range_inclusion_check, two_homogeneity_check, RangeReport};
pub use rescale::{sigma_rescale, SigmaRescale};
pub use sample::{
    sample_cone_complement_direction, sample_stalled_direction, sample_tangent_direction,
};
