use crate::error::AdmmError;
use crate::schedule::SigmaSchedule;
use crate::step::{one_step_drs_step, recover_dual, split_z, three_step_admm_step};
use sdpmodel::{Iterate, SdpProblem};
use symcore::{angle_between, SymMatrix};

/// Angle rows are suppressed when either consecutive difference norm falls
/// below `ANGLE_SUPPRESSION_FACTOR * (1 + ||Z||_F)`; double-precision angles
/// are pure noise at that scale.
pub const ANGLE_SUPPRESSION_FACTOR: f64 = 1e-14;

/// Initial state for [`run`]: either a primal-dual triple driving the
/// three-step ADMM, or a splitting variable `Z` driving the one-step DRS
/// recursion.
#[derive(Debug, Clone)]
pub enum StartState {
    Triple(Iterate),
    Splitting { z: SymMatrix, sigma: f64 },
}

/// One recorded iteration.
#[derive(Debug, Clone, Copy)]
pub struct TrajectoryRow {
    pub iter: usize,
    pub r_p: f64,
    pub r_d: f64,
    pub r_g: f64,
    pub r_max: f64,
    pub d_z: f64,
    pub d_x: f64,
    pub d_s: f64,
    /// Angle between the previous and current `Z` steps, in `[0, pi]`;
    /// `None` on the first row and whenever a step norm underflows.
    pub angle: Option<f64>,
    pub sigma: f64,
}

/// Full recorded trajectory plus the final state.
#[derive(Debug, Clone)]
pub struct TrajectoryRecord {
    pub rows: Vec<TrajectoryRow>,
    pub converged: bool,
    pub final_iterate: Iterate,
    pub final_z: SymMatrix,
}

fn angle_or_none(
    prev: Option<&SymMatrix>,
    curr: &SymMatrix,
    z_scale: f64,
) -> Option<f64> {
    let prev = prev?;
    let floor = ANGLE_SUPPRESSION_FACTOR * (1.0 + z_scale);
    if prev.norm() < floor || curr.norm() < floor {
        return None;
    }
    angle_between(prev, curr).ok()
}

/// Iterates the selected solver for up to `max_iters` steps, stopping early
/// once `r_max <= tol_rmax`, and records every iteration. Deterministic
/// given its inputs.
pub fn run(
    p: &SdpProblem,
    schedule: SigmaSchedule,
    start: StartState,
    max_iters: usize,
    tol_rmax: f64,
) -> Result<TrajectoryRecord, AdmmError> {
    match start {
        StartState::Triple(it) => run_three_step(p, schedule, it, max_iters, tol_rmax),
        StartState::Splitting { z, sigma } => run_drs(p, schedule, z, sigma, max_iters, tol_rmax),
    }
}

fn run_three_step(
    p: &SdpProblem,
    schedule: SigmaSchedule,
    mut it: Iterate,
    max_iters: usize,
    tol_rmax: f64,
) -> Result<TrajectoryRecord, AdmmError> {
    let sigma0 = it.sigma;
    schedule.validate(sigma0)?;
    let mut rows = Vec::new();
    let mut converged = false;
    let mut prev_step: Option<SymMatrix> = None;
    let mut last_res: Option<(f64, f64)> = None;

    for k in 1..=max_iters {
        let sigma = schedule.sigma_for(
            k,
            sigma0,
            it.sigma,
            last_res.map(|r| r.0),
            last_res.map(|r| r.1),
        );
        it.sigma = sigma;
        let next = three_step_admm_step(p, &it).map_err(|e| tag_divergence(e, k))?;
        let z_prev = &it.x - &it.s.scale(sigma);
        let z_next = &next.x - &next.s.scale(sigma);
        let step = &z_next - &z_prev;
        let res = p.kkt_residuals(&next);
        rows.push(TrajectoryRow {
            iter: k,
            r_p: res.r_p,
            r_d: res.r_d,
            r_g: res.r_g,
            r_max: res.r_max,
            d_z: step.norm(),
            d_x: (&next.x - &it.x).norm(),
            d_s: (&next.s - &it.s).norm(),
            angle: angle_or_none(prev_step.as_ref(), &step, z_next.norm()),
            sigma,
        });
        prev_step = Some(step);
        last_res = Some((res.r_p, res.r_d));
        it = next;
        if res.r_max <= tol_rmax {
            converged = true;
            break;
        }
    }

    let final_z = &it.x - &it.s.scale(it.sigma);
    Ok(TrajectoryRecord {
        rows,
        converged,
        final_iterate: it,
        final_z,
    })
}

fn run_drs(
    p: &SdpProblem,
    schedule: SigmaSchedule,
    mut z: SymMatrix,
    sigma0: f64,
    max_iters: usize,
    tol_rmax: f64,
) -> Result<TrajectoryRecord, AdmmError> {
    schedule.validate(sigma0)?;
    let mut sigma = sigma0;
    let mut rows = Vec::new();
    let mut converged = false;
    let mut prev_step: Option<SymMatrix> = None;
    let mut last_res: Option<(f64, f64)> = None;
    let (mut x, mut s) = split_z(&z, sigma)?;
    let mut y = recover_dual(p, &x, &s, sigma)?;

    for k in 1..=max_iters {
        let sigma_next = schedule.sigma_for(
            k,
            sigma0,
            sigma,
            last_res.map(|r| r.0),
            last_res.map(|r| r.1),
        );
        if sigma_next != sigma {
            // Rebuild the splitting variable so the recovered pair is
            // preserved across the penalty change: Z' = X - sigma' S.
            z = &x - &s.scale(sigma_next);
            sigma = sigma_next;
        }
        let z_next = one_step_drs_step(p, &z, sigma).map_err(|e| tag_divergence(e, k))?;
        let step = &z_next - &z;
        let (x_next, s_next) = split_z(&z_next, sigma)?;
        y = recover_dual(p, &x_next, &s_next, sigma)?;
        let res = p.kkt_residuals(&Iterate {
            x: x_next.clone(),
            y: y.clone(),
            s: s_next.clone(),
            sigma,
        });
        rows.push(TrajectoryRow {
            iter: k,
            r_p: res.r_p,
            r_d: res.r_d,
            r_g: res.r_g,
            r_max: res.r_max,
            d_z: step.norm(),
            d_x: (&x_next - &x).norm(),
            d_s: (&s_next - &s).norm(),
            angle: angle_or_none(prev_step.as_ref(), &step, z_next.norm()),
            sigma,
        });
        prev_step = Some(step);
        last_res = Some((res.r_p, res.r_d));
        z = z_next;
        x = x_next;
        s = s_next;
        if res.r_max <= tol_rmax {
            converged = true;
            break;
        }
    }

    Ok(TrajectoryRecord {
        rows,
        converged,
        final_iterate: Iterate { x, y, s, sigma },
        final_z: z,
    })
}

fn tag_divergence(e: AdmmError, iteration: usize) -> AdmmError {
    match e {
        AdmmError::Sym(symcore::SymError::NonFinite { .. }) => {
            AdmmError::Divergence { iteration }
        }
        other => other,
    }
}
