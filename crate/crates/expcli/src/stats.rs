//! Small numeric summaries shared by the commands and the acceptance
//! checks: medians, log-log slope fits, drift ratios, and the angle-spike
//! detector.

use admm::TrajectoryRow;

/// Trailing window length of the spike detector.
pub const SPIKE_WINDOW: usize = 50;
/// An angle counts as a spike once it exceeds this multiple of the trailing
/// median.
pub const SPIKE_FACTOR: f64 = 10.0;

/// Median of a slice; `None` when empty or when any entry is not finite.
pub fn median(xs: &[f64]) -> Option<f64> {
    if xs.is_empty() || xs.iter().any(|x| !x.is_finite()) {
        return None;
    }
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    Some(if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    })
}

/// Least-squares slope of `log10 y` against `log10 x`. `None` when fewer
/// than two points survive the positivity filter or the abscissas do not
/// spread.
pub fn log_slope(points: &[(f64, f64)]) -> Option<f64> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0 && x.is_finite() && y.is_finite())
        .map(|(x, y)| (x.log10(), y.log10()))
        .collect();
    if logs.len() < 2 {
        return None;
    }
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx <= 1e-24 {
        return None;
    }
    Some(sxy / sxx)
}

/// Spread of a positive series relative to its median: `(max - min) / med`.
pub fn relative_drift(xs: &[f64]) -> Option<f64> {
    let med = median(xs)?;
    if med <= 0.0 {
        return None;
    }
    let max = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = xs.iter().cloned().fold(f64::INFINITY, f64::min);
    Some((max - min) / med)
}

/// One row of spike diagnostics derived from a recorded trajectory.
#[derive(Debug, Clone, Copy)]
pub struct SpikeRow {
    pub iter: usize,
    pub angle: Option<f64>,
    pub r_max: f64,
    pub trailing_median: Option<f64>,
    pub ratio: Option<f64>,
    pub spike: bool,
}

/// Runs the trailing-median ratio test over the recorded angles and returns
/// the per-row diagnostics plus the first spike iteration, if any. The
/// median is taken over the most recent [`SPIKE_WINDOW`] defined angles
/// strictly before the current row, so early rows never fire.
pub fn spike_diagnostics(rows: &[TrajectoryRow]) -> (Vec<SpikeRow>, Option<usize>) {
    let mut seen: Vec<f64> = Vec::new();
    let mut out = Vec::with_capacity(rows.len());
    let mut first = None;
    for row in rows {
        let mut diag = SpikeRow {
            iter: row.iter,
            angle: row.angle,
            r_max: row.r_max,
            trailing_median: None,
            ratio: None,
            spike: false,
        };
        if let Some(angle) = row.angle {
            if seen.len() >= SPIKE_WINDOW {
                let med = median(&seen[seen.len() - SPIKE_WINDOW..]);
                diag.trailing_median = med;
                if let Some(med) = med {
                    if med > 0.0 {
                        let ratio = angle / med;
                        diag.ratio = Some(ratio);
                        if ratio > SPIKE_FACTOR {
                            diag.spike = true;
                            if first.is_none() {
                                first = Some(row.iter);
                            }
                        }
                    }
                }
            }
            seen.push(angle);
        }
        out.push(diag);
    }
    (out, first)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_handles_both_parities() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), Some(2.5));
        assert_eq!(median(&[]), None);
        assert_eq!(median(&[1.0, f64::NAN]), None);
    }

    #[test]
    fn log_slope_recovers_power_laws() {
        let pts: Vec<(f64, f64)> = (1..=20)
            .map(|k| {
                let x = 1.1f64.powi(k);
                (x, 3.0 * x * x)
            })
            .collect();
        let s = log_slope(&pts).unwrap();
        assert!((s - 2.0).abs() < 1e-12);
        assert_eq!(log_slope(&[(1.0, 1.0)]), None);
        assert_eq!(log_slope(&[(1.0, 1.0), (1.0, 2.0)]), None);
    }

    #[test]
    fn drift_is_range_over_median() {
        let d = relative_drift(&[1.0, 1.1, 0.9]).unwrap();
        assert!((d - 0.2).abs() < 1e-12);
    }
}
