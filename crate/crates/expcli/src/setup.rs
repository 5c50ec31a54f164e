//! Resolution of command-line selections into problem data: instance
//! source, direction-family parameters, penalty schedule, and start state.

use std::path::Path;

use admm::{SigmaSchedule, StartState};
use limitdyn::{build_anchor, AnchorTols, KktAnchor};
use sdpmodel::SdpProblem;
use symcore::SymMatrix;
use toysuite::{toy1, toy2, toy3, ToyId, ToyOracle, ToyParams};

use crate::error::CliError;

/// A resolved instance: either one of the three toy instances (with its
/// oracle) or an SDPA file.
pub struct Target {
    pub label: String,
    pub toy: Option<ToyOracle>,
    pub problem: SdpProblem,
}

impl Target {
    pub fn toy(&self) -> Result<&ToyOracle, CliError> {
        self.toy.as_ref().ok_or_else(|| {
            CliError::precondition("this command needs a toy instance (--toy {1,2,3})")
        })
    }
}

/// Exactly one of `--instance` and `--toy` must be given.
pub fn resolve_target(instance: Option<&Path>, toy: Option<u8>) -> Result<Target, CliError> {
    match (instance, toy) {
        (Some(_), Some(_)) => Err(CliError::precondition(
            "--instance and --toy are mutually exclusive",
        )),
        (None, None) => Err(CliError::precondition(
            "select an instance with --instance PATH or --toy {1,2,3}",
        )),
        (Some(path), None) => {
            let problem = sdpmodel::load_sdpa(path)?;
            Ok(Target {
                label: path.display().to_string(),
                toy: None,
                problem,
            })
        }
        (None, Some(k)) => {
            let oracle = match k {
                1 => toy1(),
                2 => toy2(),
                3 => toy3(),
                other => {
                    return Err(CliError::precondition(format!(
                        "--toy must be 1, 2, or 3, got {other}"
                    )))
                }
            };
            Ok(Target {
                label: format!("toy{k}"),
                problem: oracle.problem.clone(),
                toy: Some(oracle),
            })
        }
    }
}

fn parse_floats(list: &str) -> Result<Vec<f64>, CliError> {
    list.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::precondition(format!("bad number {s:?} in --h-params")))
        })
        .collect()
}

/// Direction-family parameters for a toy, either parsed from `--h-params`
/// or the instance's defaults (toy1: `1,1`; toy2: `1,1,1`; toy3: `2,0.1`).
pub fn toy_params(oracle: &ToyOracle, h_params: Option<&str>) -> Result<ToyParams, CliError> {
    let vals = match h_params {
        Some(list) => parse_floats(list)?,
        None => match oracle.id() {
            ToyId::Toy1 => vec![1.0, 1.0],
            ToyId::Toy2 => vec![1.0, 1.0, 1.0],
            ToyId::Toy3 => vec![2.0, 0.1],
        },
    };
    let wrong = |want: usize| {
        CliError::precondition(format!(
            "{:?} takes {want} direction parameters, got {}",
            oracle.id(),
            vals.len()
        ))
    };
    match oracle.id() {
        ToyId::Toy1 => match vals[..] {
            [a, b] => Ok(ToyParams::Toy1 { a, b }),
            _ => Err(wrong(2)),
        },
        ToyId::Toy2 => match vals[..] {
            [h12, h22, h23] => Ok(ToyParams::Toy2 { h12, h22, h23 }),
            _ => Err(wrong(3)),
        },
        ToyId::Toy3 => match vals[..] {
            [h, eps] => Ok(ToyParams::Toy3 { h, eps }),
            _ => Err(wrong(2)),
        },
    }
}

pub fn params_as_vec(p: &ToyParams) -> Vec<f64> {
    match *p {
        ToyParams::Toy1 { a, b } => vec![a, b],
        ToyParams::Toy2 { h12, h22, h23 } => vec![h12, h22, h23],
        ToyParams::Toy3 { h, eps } => vec![h, eps],
    }
}

/// `fixed`, `balance`, or `sweep:END:ITERS`.
pub fn parse_schedule(spec: &str) -> Result<SigmaSchedule, CliError> {
    if spec == "fixed" {
        return Ok(SigmaSchedule::Fixed);
    }
    if spec == "balance" {
        return Ok(SigmaSchedule::balance_default());
    }
    if let Some(rest) = spec.strip_prefix("sweep:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if let [end, iters] = parts[..] {
            let sigma_end: f64 = end
                .parse()
                .map_err(|_| CliError::precondition(format!("bad sweep endpoint {end:?}")))?;
            let iters: usize = iters
                .parse()
                .map_err(|_| CliError::precondition(format!("bad sweep length {iters:?}")))?;
            return Ok(SigmaSchedule::Sweep { sigma_end, iters });
        }
    }
    Err(CliError::precondition(format!(
        "bad --sigma-schedule {spec:?}: expected fixed, balance, or sweep:END:ITERS"
    )))
}

/// Start state of a run: `Z̄ + t·H̄` for a toy with direction parameters,
/// otherwise the zero splitting variable.
pub fn start_state(
    target: &Target,
    params: Option<&ToyParams>,
    t: f64,
    sigma0: f64,
) -> Result<StartState, CliError> {
    let z = match (&target.toy, params) {
        (Some(oracle), Some(p)) => {
            if !(t > 0.0) || !t.is_finite() {
                return Err(CliError::precondition(format!(
                    "--t must be positive and finite, got {t}"
                )));
            }
            let h = oracle.direction(p)?;
            oracle.z_bar(sigma0)?.axpy(t, &h)
        }
        _ => SymMatrix::zeros(target.problem.order()),
    };
    Ok(StartState::Splitting { z, sigma: sigma0 })
}

/// Certified second-order anchor of a toy instance at the given penalty.
pub fn toy_anchor(oracle: &ToyOracle, sigma: f64) -> Result<KktAnchor, CliError> {
    Ok(build_anchor(
        &oracle.problem,
        &oracle.x_bar,
        &oracle.s_bar,
        Some((&oracle.x_sc, &oracle.s_sc)),
        sigma,
        AnchorTols::default(),
    )?)
}
