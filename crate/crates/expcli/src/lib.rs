//! Library half of the `expcli` experiment runner.
//!
//! The binary is a thin argument-parsing shell; everything observable —
//! instance resolution, the six commands, deterministic CSV/JSON rendering,
//! and the trajectory statistics (plateau medians, log-log slope fits, the
//! angle-spike detector) — lives here so integration and acceptance tests
//! can call it directly.

mod commands;
mod error;
mod render;
mod setup;
mod stats;

pub use commands::{
    cmd_limitmap, cmd_sigma_sweep, cmd_solve, cmd_spike, cmd_toy, cmd_trajectory, RunConfig,
};
pub use error::CliError;
pub use render::{dense_rows, fmt_float, spike_csv, sweep_csv, trajectory_csv};
pub use setup::{
    parse_schedule, resolve_target, start_state, toy_anchor, toy_params, Target,
};
pub use stats::{
    log_slope, median, relative_drift, spike_diagnostics, SpikeRow, SPIKE_FACTOR, SPIKE_WINDOW,
};
