//! The six experiment commands. Each takes a fully-resolved [`RunConfig`]
//! (defaults already applied by the binary) and writes CSV/JSON artifacts.

use std::path::PathBuf;

use admm::{SigmaSchedule, TrajectoryRow};
use limitdyn::{
    cone_c_membership, limit_map_decoupled, limit_map_iterative, sample_tangent_direction,
    sigma_rescale, tangent_cone_membership, two_homogeneity_check,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use toysuite::{ToyId, ToyParams};

use crate::error::CliError;
use crate::render::{
    dense_rows, spike_csv, sweep_csv, trajectory_csv, write_json, write_text,
};
use crate::setup::{
    params_as_vec, parse_schedule, resolve_target, start_state, toy_anchor, toy_params, Target,
};
use crate::stats::{median, log_slope, relative_drift, spike_diagnostics, SpikeRow};

/// A resolved invocation: one command's worth of knobs with defaults
/// already filled in.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub instance: Option<PathBuf>,
    pub toy: Option<u8>,
    pub t: Option<f64>,
    pub h_params: Option<String>,
    pub sigma0: f64,
    pub schedule: String,
    pub max_iters: usize,
    pub tol: f64,
    pub out_csv: Option<PathBuf>,
    pub out_json: Option<PathBuf>,
    pub rescale: bool,
    pub jobs: usize,
}

impl RunConfig {
    fn target(&self) -> Result<Target, CliError> {
        resolve_target(self.instance.as_deref(), self.toy)
    }

    fn schedule(&self) -> Result<SigmaSchedule, CliError> {
        parse_schedule(&self.schedule)
    }

    fn check_sigma(&self) -> Result<(), CliError> {
        if !(self.sigma0 > 0.0) || !self.sigma0.is_finite() {
            return Err(CliError::precondition(format!(
                "--sigma0 must be positive and finite, got {}",
                self.sigma0
            )));
        }
        Ok(())
    }
}

fn residual_summary(rows: &[TrajectoryRow]) -> serde_json::Value {
    match rows.last() {
        Some(r) => json!({
            "r_p": r.r_p, "r_d": r.r_d, "r_g": r.r_g, "r_max": r.r_max, "sigma": r.sigma
        }),
        None => serde_json::Value::Null,
    }
}

/// Runs the selected solver to convergence and reports a JSON summary.
/// Exits non-zero (code 3) when the budget runs out first.
pub fn cmd_solve(cfg: &RunConfig) -> Result<(), CliError> {
    cfg.check_sigma()?;
    let target = cfg.target()?;
    let schedule = cfg.schedule()?;
    let start = match (&target.toy, cfg.t) {
        (Some(oracle), Some(t)) => {
            let p = toy_params(oracle, cfg.h_params.as_deref())?;
            start_state(&target, Some(&p), t, cfg.sigma0)?
        }
        _ => start_state(&target, None, 1.0, cfg.sigma0)?,
    };
    let rec = admm::run(&target.problem, schedule, start, cfg.max_iters, cfg.tol)?;
    let objective = target.problem.cost().inner(&rec.final_iterate.x);
    let report = json!({
        "command": "solve",
        "instance": target.label,
        "sigma0": cfg.sigma0,
        "schedule": cfg.schedule,
        "tol": cfg.tol,
        "iterations": rec.rows.len(),
        "converged": rec.converged,
        "objective": objective,
        "final": residual_summary(&rec.rows),
    });
    write_json(cfg.out_json.as_deref(), &report)?;
    if !rec.converged {
        return Err(CliError::non_convergence(format!(
            "r_max did not reach {} within {} iterations",
            cfg.tol, cfg.max_iters
        )));
    }
    Ok(())
}

fn plateau_summary(rows: &[TrajectoryRow]) -> (usize, usize, serde_json::Value) {
    let lo = rows.len() / 2;
    let window = &rows[lo..];
    let dz: Vec<f64> = window.iter().map(|r| r.d_z).collect();
    let dx: Vec<f64> = window.iter().map(|r| r.d_x).collect();
    let ds: Vec<f64> = window.iter().map(|r| r.d_s).collect();
    let angles: Vec<f64> = window.iter().filter_map(|r| r.angle).collect();
    let value = json!({
        "window_start": rows.get(lo).map(|r| r.iter),
        "window_end": rows.last().map(|r| r.iter),
        "median_dz": median(&dz),
        "median_dx": median(&dx),
        "median_ds": median(&ds),
        "median_angle": median(&angles),
        "angles_defined": angles.len(),
    });
    (lo, rows.len(), value)
}

/// Records a full trajectory as CSV plus a JSON plateau summary.
pub fn cmd_trajectory(cfg: &RunConfig) -> Result<(), CliError> {
    cfg.check_sigma()?;
    let target = cfg.target()?;
    let schedule = cfg.schedule()?;
    let t = cfg.t.unwrap_or(1e-4);
    let params = match &target.toy {
        Some(oracle) => Some(toy_params(oracle, cfg.h_params.as_deref())?),
        None => None,
    };
    let start = start_state(&target, params.as_ref(), t, cfg.sigma0)?;
    let rec = admm::run(&target.problem, schedule, start, cfg.max_iters, cfg.tol)?;
    write_text(cfg.out_csv.as_deref(), &trajectory_csv(&rec.rows))?;

    if cfg.out_json.is_some() {
        let (_, _, plateau) = plateau_summary(&rec.rows);
        let oracle_block = match (&target.toy, &params) {
            (Some(oracle), Some(p)) => {
                let psi = oracle.psi(p, cfg.sigma0)?;
                let norm = psi.psi_z.norm();
                let reference = 0.5 * t * t * norm;
                let dz: Vec<f64> = rec.rows[rec.rows.len() / 2..]
                    .iter()
                    .map(|r| r.d_z)
                    .collect();
                json!({
                    "psi_z_norm": norm,
                    "reference_dz": reference,
                    "dz_ratio": median(&dz).map(|m| m / reference),
                })
            }
            _ => serde_json::Value::Null,
        };
        let report = json!({
            "command": "trajectory",
            "instance": target.label,
            "t": t,
            "sigma0": cfg.sigma0,
            "schedule": cfg.schedule,
            "h_params": params.as_ref().map(params_as_vec),
            "iterations": rec.rows.len(),
            "converged": rec.converged,
            "plateau": plateau,
            "final": residual_summary(&rec.rows),
            "oracle": oracle_block,
        });
        write_json(cfg.out_json.as_deref(), &report)?;
    }
    Ok(())
}

/// Sweeps the penalty geometrically while recording per-iteration step
/// norms, then fits the log-log response slopes.
pub fn cmd_sigma_sweep(cfg: &RunConfig) -> Result<(), CliError> {
    cfg.check_sigma()?;
    let target = cfg.target()?;
    let schedule = cfg.schedule()?;
    let t = cfg.t.unwrap_or(1e-5);
    let params = match &target.toy {
        Some(oracle) => Some(toy_params(oracle, cfg.h_params.as_deref())?),
        None => None,
    };
    let start = start_state(&target, params.as_ref(), t, cfg.sigma0)?;
    let rec = admm::run(&target.problem, schedule, start, cfg.max_iters, cfg.tol)?;
    write_text(cfg.out_csv.as_deref(), &sweep_csv(&rec.rows))?;

    // Discard the first quarter as recovery transient, and the held tail
    // when the schedule stops sweeping before the iteration budget runs out.
    let len = rec.rows.len();
    let lo = len / 4;
    let hi = match schedule {
        SigmaSchedule::Sweep { iters, .. } => len.min(iters),
        _ => len,
    };
    let window = if hi > lo { &rec.rows[lo..hi] } else { &[][..] };
    let dx_pts: Vec<(f64, f64)> = window.iter().map(|r| (r.sigma, r.d_x)).collect();
    let ds_pts: Vec<(f64, f64)> = window.iter().map(|r| (r.sigma, r.d_s)).collect();
    let rp: Vec<f64> = window.iter().map(|r| r.r_p).collect();
    let rd: Vec<f64> = window.iter().map(|r| r.r_d).collect();
    let dx: Vec<f64> = window.iter().map(|r| r.d_x).collect();
    let ds: Vec<f64> = window.iter().map(|r| r.d_s).collect();

    if cfg.out_json.is_some() {
        let report = json!({
            "command": "sigma-sweep",
            "instance": target.label,
            "t": t,
            "sigma0": cfg.sigma0,
            "schedule": cfg.schedule,
            "h_params": params.as_ref().map(params_as_vec),
            "iterations": len,
            "window": { "start": window.first().map(|r| r.iter),
                        "end": window.last().map(|r| r.iter) },
            "slopes": { "dx": log_slope(&dx_pts), "ds": log_slope(&ds_pts) },
            "drift": { "r_p": relative_drift(&rp), "r_d": relative_drift(&rd),
                       "dx": relative_drift(&dx), "ds": relative_drift(&ds) },
            "final": residual_summary(&rec.rows),
        });
        write_json(cfg.out_json.as_deref(), &report)?;
    }
    Ok(())
}

/// Evaluates the second-order limit map at a certified anchor and emits a
/// full JSON report with cross-checks.
pub fn cmd_limitmap(cfg: &RunConfig) -> Result<(), CliError> {
    cfg.check_sigma()?;
    let target = cfg.target()?;
    let oracle = target.toy()?;
    let params = toy_params(oracle, cfg.h_params.as_deref())?;
    let anchor = toy_anchor(oracle, cfg.sigma0)?;
    let h = oracle.direction(&params)?;
    let tol = anchor.membership_tol(&h);
    let membership = cone_c_membership(&anchor, &h, tol)?;
    if !membership.member {
        return Err(CliError::precondition(format!(
            "direction is outside the stalled cone: first-order residual {:e} exceeds {:e}",
            membership.residual, tol
        )));
    }
    let tangent = tangent_cone_membership(&anchor, &h, tol)?;

    let it = limit_map_iterative(&anchor, &h, cfg.max_iters, cfg.tol)?;
    let de = limit_map_decoupled(&anchor, &h, 100_000, 1e-11)?;
    let agreement = it.psi_z.axpy(-1.0, &de.psi_z).norm();

    let homogeneity: Vec<serde_json::Value> = [0.5, 2.0]
        .iter()
        .map(|&s| {
            two_homogeneity_check(&anchor, &h, s, cfg.max_iters, cfg.tol)
                .map(|err| json!({ "scale": s, "error": err }))
        })
        .collect::<Result<_, _>>()?;

    let scaling = if cfg.rescale {
        let mut entries = Vec::new();
        for sigma_new in [0.5, 2.0] {
            let moved = sigma_rescale(&anchor, &h, sigma_new, cfg.max_iters, cfg.tol)?;
            let again =
                limit_map_iterative(&moved.anchor, &moved.h_new, cfg.max_iters, cfg.tol)?;
            let gap_x = again.psi_x.axpy(-1.0, &moved.psi_x_pred).norm()
                / (1.0 + moved.psi_x_pred.norm());
            let gap_s = again.psi_s.axpy(-1.0, &moved.psi_s_pred).norm()
                / (1.0 + moved.psi_s_pred.norm());
            entries.push(json!({
                "sigma_new": sigma_new, "primal_gap": gap_x, "dual_gap": gap_s
            }));
        }
        serde_json::Value::Array(entries)
    } else {
        serde_json::Value::Null
    };

    // A seeded spot check of the kernel law when the environment pins the
    // sampling seed.
    let sampled = match std::env::var("LIMITDYN_SEED") {
        Ok(seed) => {
            let seed: u64 = seed.parse().map_err(|_| {
                CliError::precondition(format!("LIMITDYN_SEED must be an integer, got {seed:?}"))
            })?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            match sample_tangent_direction(&anchor, &mut rng)? {
                Some(dir) => {
                    let lim = limit_map_decoupled(&anchor, &dir, 100_000, 1e-11)?;
                    json!({ "seed": seed, "tangent_psi_norm": lim.psi_z.norm() })
                }
                None => json!({ "seed": seed, "tangent_psi_norm": null }),
            }
        }
        Err(_) => serde_json::Value::Null,
    };

    let report = json!({
        "command": "limitmap",
        "instance": target.label,
        "sigma": cfg.sigma0,
        "h_params": params_as_vec(&params),
        "membership": {
            "member": membership.member,
            "structural_ok": membership.structural_ok,
            "residual": membership.residual,
            "cross_norm": membership.cross_norm,
            "tangent": tangent,
        },
        "psi_z": dense_rows(&de.psi_z),
        "psi_x": dense_rows(&de.psi_x),
        "psi_s": dense_rows(&de.psi_s),
        "methods": {
            "iterative": { "iterations": it.iterations_used,
                           "residual": it.residual_estimate,
                           "converged": it.converged },
            "decoupled": { "iterations": de.iterations_used,
                           "residual": de.residual_estimate,
                           "converged": de.converged },
            "agreement": agreement,
        },
        "two_homogeneity": homogeneity,
        "sigma_scaling": scaling,
        "sampled_check": sampled,
    });
    write_json(cfg.out_json.as_deref(), &report)
}

fn spike_run(
    cfg: &RunConfig,
    target: &Target,
    params: &ToyParams,
    t: f64,
) -> Result<(Vec<SpikeRow>, Option<usize>, usize), CliError> {
    let start = start_state(target, Some(params), t, cfg.sigma0)?;
    let rec = admm::run(
        &target.problem,
        cfg.schedule()?,
        start,
        cfg.max_iters,
        cfg.tol,
    )?;
    let (rows, first) = spike_diagnostics(&rec.rows);
    Ok((rows, first, rec.rows.len()))
}

fn suffixed(path: &std::path::Path, index: usize) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("spike");
    let ext = path.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    path.with_file_name(format!("{stem}-{index}.{ext}"))
}

/// Detects angle spikes along perturbed starts of the third toy instance.
/// `--h-params` accepts a semicolon-separated grid of `h,eps` pairs, fanned
/// out over `--jobs` worker threads.
pub fn cmd_spike(cfg: &RunConfig) -> Result<(), CliError> {
    cfg.check_sigma()?;
    let target = cfg.target()?;
    let oracle = target.toy()?;
    if oracle.id() != ToyId::Toy3 {
        return Err(CliError::precondition(
            "spike detection runs on the third toy instance (--toy 3)",
        ));
    }
    let t = cfg.t.unwrap_or(1e-4);
    let grid: Vec<ToyParams> = match cfg.h_params.as_deref() {
        Some(list) => list
            .split(';')
            .map(|pair| toy_params(oracle, Some(pair)))
            .collect::<Result<_, _>>()?,
        None => vec![ToyParams::Toy3 { h: 1.5, eps: 1e-3 }],
    };

    let jobs = cfg.jobs.max(1).min(grid.len().max(1));
    let mut results: Vec<Option<Result<(Vec<SpikeRow>, Option<usize>, usize), CliError>>> =
        (0..grid.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for worker in 0..jobs {
            let grid = &grid;
            let target = &target;
            let cfg = &*cfg;
            handles.push(scope.spawn(move || {
                let mut mine = Vec::new();
                for (i, p) in grid.iter().enumerate() {
                    if i % jobs == worker {
                        mine.push((i, spike_run(cfg, target, p, t)));
                    }
                }
                mine
            }));
        }
        for handle in handles {
            for (i, res) in handle.join().expect("spike worker panicked") {
                results[i] = Some(res);
            }
        }
    });

    let mut runs = Vec::new();
    for (i, (params, slot)) in grid.iter().zip(results).enumerate() {
        let (rows, first, iters) = slot.expect("spike run missing")?;
        if let Some(base) = cfg.out_csv.as_deref() {
            let path = if grid.len() == 1 {
                base.to_path_buf()
            } else {
                suffixed(base, i + 1)
            };
            write_text(Some(&path), &spike_csv(&rows))?;
        } else if grid.len() == 1 {
            write_text(None, &spike_csv(&rows))?;
        }
        let p = params_as_vec(params);
        runs.push(json!({
            "h": p[0], "eps": p[1], "iterations": iters, "first_spike": first
        }));
    }

    if cfg.out_json.is_some() {
        let spikes: Vec<Option<u64>> = runs
            .iter()
            .map(|r| r["first_spike"].as_u64())
            .collect();
        let monotone = if spikes.len() >= 2 && spikes.iter().all(|s| s.is_some()) {
            Some(spikes.windows(2).all(|w| w[1].unwrap() < w[0].unwrap()))
        } else {
            None
        };
        let report = json!({
            "command": "spike",
            "instance": target.label,
            "t": t,
            "sigma0": cfg.sigma0,
            "max_iters": cfg.max_iters,
            "runs": runs,
            "spike_iterations_strictly_decreasing": monotone,
        });
        write_json(cfg.out_json.as_deref(), &report)?;
    }
    Ok(())
}

/// Serializes a toy instance in SDPA sparse format.
pub fn cmd_toy(cfg: &RunConfig) -> Result<(), CliError> {
    let target = cfg.target()?;
    let oracle = target.toy()?;
    write_text(cfg.out_csv.as_deref(), &oracle.sdpa_text())?;
    if cfg.out_json.is_some() {
        let report = json!({
            "command": "toy",
            "instance": target.label,
            "order": target.problem.order(),
            "constraints": target.problem.num_constraints(),
        });
        write_json(cfg.out_json.as_deref(), &report)?;
    }
    Ok(())
}
