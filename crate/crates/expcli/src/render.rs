//! Deterministic text output: fixed-format floats, CSV tables, and file
//! plumbing. No timestamps or environment-dependent content ever reach the
//! data files, so identical runs produce byte-identical output.

use std::io::Write;
use std::path::Path;

use admm::TrajectoryRow;
use symcore::SymMatrix;

use crate::error::CliError;
use crate::stats::SpikeRow;

/// Fixed scientific rendering with 16 significant digits; `NaN` for
/// undefined values (suppressed angles).
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else {
        format!("{x:.15e}")
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    fmt_float(x.unwrap_or(f64::NAN))
}

/// Trajectory table with the contract header.
pub fn trajectory_csv(rows: &[TrajectoryRow]) -> String {
    let mut out = String::from("iter,r_p,r_d,r_g,r_max,dZ,dX,dS,angle,sigma\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.iter,
            fmt_float(r.r_p),
            fmt_float(r.r_d),
            fmt_float(r.r_g),
            fmt_float(r.r_max),
            fmt_float(r.d_z),
            fmt_float(r.d_x),
            fmt_float(r.d_s),
            fmt_opt(r.angle),
            fmt_float(r.sigma),
        ));
    }
    out
}

/// Penalty-sweep table: one row per iteration of the swept run.
pub fn sweep_csv(rows: &[TrajectoryRow]) -> String {
    let mut out = String::from("sigma,dX,dS,r_p,r_d\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_float(r.sigma),
            fmt_float(r.d_x),
            fmt_float(r.d_s),
            fmt_float(r.r_p),
            fmt_float(r.r_d),
        ));
    }
    out
}

/// Spike-diagnostic table produced by the trailing-median detector.
pub fn spike_csv(rows: &[SpikeRow]) -> String {
    let mut out = String::from("iter,angle,r_max,trailing_median,ratio,spike\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.iter,
            fmt_opt(r.angle),
            fmt_float(r.r_max),
            fmt_opt(r.trailing_median),
            fmt_opt(r.ratio),
            r.spike as u8,
        ));
    }
    out
}

/// Dense row-major copy of a symmetric matrix for JSON reports.
pub fn dense_rows(m: &SymMatrix) -> Vec<Vec<f64>> {
    let n = m.order();
    (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j)).collect())
        .collect()
}

/// Writes `text` to `path`, or to stdout when no path is given.
pub fn write_text(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::io(format!("writing {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|()| out.flush())
                .map_err(|e| CliError::io(format!("writing stdout: {e}")))
        }
    }
}

/// Pretty-printed JSON with a trailing newline, written like [`write_text`].
pub fn write_json(path: Option<&Path>, value: &serde_json::Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::io(format!("serializing report: {e}")))?;
    text.push('\n');
    write_text(path, &text)
}
