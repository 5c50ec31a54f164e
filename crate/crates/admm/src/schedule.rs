use crate::error::AdmmError;

/// Penalty-parameter policy applied between iterations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SigmaSchedule {
    /// Constant sigma.
    Fixed,
    /// Residual-balance heuristic: at every `cadence`-th iteration (up to
    /// `freeze`), multiply sigma by `gamma` when `r_p / r_d > mu` and divide
    /// by `gamma` when `r_p / r_d < 1 / mu`.
    Balance {
        mu: f64,
        gamma: f64,
        cadence: usize,
        freeze: usize,
    },
    /// Exact geometric interpolation from the initial sigma to `sigma_end`
    /// over `iters` iterations; sigma is held at `sigma_end` afterwards.
    Sweep { sigma_end: f64, iters: usize },
}

impl SigmaSchedule {
    /// The default residual-balance parameters (mu = 10, gamma = 1.5,
    /// cadence 100, frozen after iteration 20000).
    pub fn balance_default() -> Self {
        SigmaSchedule::Balance {
            mu: 10.0,
            gamma: 1.5,
            cadence: 100,
            freeze: 20000,
        }
    }

    pub fn validate(&self, sigma0: f64) -> Result<(), AdmmError> {
        if !(sigma0 > 0.0) || !sigma0.is_finite() {
            return Err(AdmmError::NonPositiveSigma { sigma: sigma0 });
        }
        match *self {
            SigmaSchedule::Sweep { sigma_end, .. } if !(sigma_end > 0.0) => {
                Err(AdmmError::NonPositiveSigma { sigma: sigma_end })
            }
            SigmaSchedule::Balance { mu, gamma, .. } if !(mu > 1.0) || !(gamma > 1.0) => {
                Err(AdmmError::NonPositiveSigma { sigma: -1.0 })
            }
            _ => Ok(()),
        }
    }

    /// The sigma to use for iteration `k` (1-based), given the sigma used at
    /// the previous iteration and the most recent residuals.
    pub fn sigma_for(
        &self,
        k: usize,
        sigma0: f64,
        sigma_prev: f64,
        r_p: Option<f64>,
        r_d: Option<f64>,
    ) -> f64 {
        match *self {
            SigmaSchedule::Fixed => sigma_prev,
            SigmaSchedule::Balance {
                mu,
                gamma,
                cadence,
                freeze,
            } => {
                if k > 1 && (k - 1) % cadence == 0 && k - 1 <= freeze {
                    if let (Some(r_p), Some(r_d)) = (r_p, r_d) {
                        if r_d > 0.0 && r_p / r_d > mu {
                            return sigma_prev * gamma;
                        }
                        if r_p >= 0.0 && r_d > 0.0 && r_p / r_d < 1.0 / mu {
                            return sigma_prev / gamma;
                        }
                    }
                }
                sigma_prev
            }
            SigmaSchedule::Sweep { sigma_end, iters } => {
                if iters == 0 || k >= iters {
                    sigma_end
                } else {
                    let ratio = (sigma_end / sigma0).powf(1.0 / iters as f64);
                    sigma_prev * ratio
                }
            }
        }
    }
}
