//! Splitting solvers for standard-form SDPs.
//!
//! Two equivalent iterations are provided: the three-step ADMM on a
//! primal-dual triple `(X, y, S)` and the one-step Douglas-Rachford
//! recursion on the splitting variable `Z = X - sigma S`. The [`run`]
//! driver records per-iteration residuals, difference norms, and angles
//! between consecutive splitting-variable steps, and applies a penalty
//! schedule (fixed, residual-balance heuristic, or log-linear sweep).

mod error;
mod run;
mod schedule;
mod step;

pub use error::AdmmError;
pub use run::{run, StartState, TrajectoryRecord, TrajectoryRow, ANGLE_SUPPRESSION_FACTOR};
pub use schedule::SigmaSchedule;
pub use step::{one_step_drs_step, recover_dual, split_z, three_step_admm_step};
