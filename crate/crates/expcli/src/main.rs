use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use expcli::{
    cmd_limitmap, cmd_sigma_sweep, cmd_solve, cmd_spike, cmd_toy, cmd_trajectory, RunConfig,
};

/// Experiment runner for the splitting-solver limit-dynamics studies.
#[derive(Parser)]
#[command(name = "expcli", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// SDPA sparse file to solve (mutually exclusive with --toy).
    #[arg(long, value_name = "PATH")]
    instance: Option<PathBuf>,
    /// Built-in toy instance (1, 2, or 3).
    #[arg(long)]
    toy: Option<u8>,
    /// Perturbation size for starts of the form Z + t*H.
    #[arg(long)]
    t: Option<f64>,
    /// Direction-family parameters, comma-separated (toy1: a,b; toy2:
    /// h12,h22,h23; toy3: h,eps). The spike command accepts a
    /// semicolon-separated grid of pairs.
    #[arg(long, value_name = "LIST")]
    h_params: Option<String>,
    /// Initial penalty weight.
    #[arg(long, default_value_t = 1.0)]
    sigma0: f64,
    /// Penalty schedule: fixed | balance | sweep:END:ITERS.
    #[arg(long, default_value = "fixed", value_name = "SCHED")]
    sigma_schedule: String,
    /// Iteration budget (per-command default when omitted).
    #[arg(long)]
    max_iters: Option<usize>,
    /// Tolerance (per-command default when omitted).
    #[arg(long)]
    tol: Option<f64>,
    /// CSV/data output path (stdout when omitted).
    #[arg(long, value_name = "PATH")]
    out_csv: Option<PathBuf>,
    /// JSON report output path.
    #[arg(long, value_name = "PATH")]
    out_json: Option<PathBuf>,
    /// Include penalty-rescaling cross-checks in limit-map reports.
    #[arg(long)]
    rescale: bool,
    /// Worker threads for parameter-grid fan-out.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

impl CommonArgs {
    fn config(self, max_iters: usize, tol: f64, t: Option<f64>) -> RunConfig {
        RunConfig {
            instance: self.instance,
            toy: self.toy,
            t: self.t.or(t),
            h_params: self.h_params,
            sigma0: self.sigma0,
            schedule: self.sigma_schedule,
            max_iters: self.max_iters.unwrap_or(max_iters),
            tol: self.tol.unwrap_or(tol),
            out_csv: self.out_csv,
            out_json: self.out_json,
            rescale: self.rescale,
            jobs: self.jobs,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the splitting solver to convergence and summarize the result.
    Solve(CommonArgs),
    /// Record a full per-iteration trajectory as CSV plus a JSON summary.
    Trajectory(CommonArgs),
    /// Sweep the penalty weight and fit the step-norm response slopes.
    #[command(name = "sigma-sweep")]
    SigmaSweep(CommonArgs),
    /// Evaluate the second-order limit map at a certified anchor.
    Limitmap(CommonArgs),
    /// Detect angle spikes along perturbed starts of the third toy.
    Spike(CommonArgs),
    /// Serialize a toy instance in SDPA sparse format.
    Toy(CommonArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(&a.config(20_000, 1e-8, None)),
        Command::Trajectory(a) => cmd_trajectory(&a.config(1_000, 0.0, Some(1e-4))),
        Command::SigmaSweep(a) => cmd_sigma_sweep(&a.config(1_000, 0.0, Some(1e-5))),
        Command::Limitmap(a) => cmd_limitmap(&a.config(60_000, 1e-9, None)),
        Command::Spike(a) => cmd_spike(&a.config(1_000, 0.0, Some(1e-4))),
        Command::Toy(a) => cmd_toy(&a.config(0, 0.0, None)),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.structured());
            ExitCode::from(e.exit_code())
        }
    }
}
