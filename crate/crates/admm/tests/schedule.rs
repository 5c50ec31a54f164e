use admm::SigmaSchedule;

#[test]
fn fixed_schedule_never_changes_sigma() {
    let s = SigmaSchedule::Fixed;
    let mut sigma = 0.7;
    for k in 1..=100 {
        sigma = s.sigma_for(k, 0.7, sigma, Some(100.0), Some(1.0));
    }
    assert_eq!(sigma, 0.7);
}

#[test]
fn sweep_produces_an_exact_geometric_sequence() {
    let sigma0 = 0.5;
    let iters = 5000;
    let s = SigmaSchedule::Sweep {
        sigma_end: 10.0 * sigma0,
        iters,
    };
    let mut sigma = sigma0;
    let mut values = Vec::with_capacity(iters);
    for k in 1..=iters {
        sigma = s.sigma_for(k, sigma0, sigma, None, None);
        values.push(sigma);
    }
    let ratio = values[0] / sigma0;
    for w in values.windows(2) {
        if w[1] == 10.0 * sigma0 {
            break;
        }
        let r = w[1] / w[0];
        assert!((r - ratio).abs() <= 1e-15 * ratio);
    }
    assert_eq!(*values.last().unwrap(), 10.0 * sigma0);
    // Log-linear: total multiplicative span reaches the endpoint.
    assert!((values[iters - 1] / sigma0 - 10.0).abs() <= 1e-10);
}

#[test]
fn balance_heuristic_reacts_only_at_the_cadence() {
    let s = SigmaSchedule::Balance {
        mu: 10.0,
        gamma: 1.5,
        cadence: 100,
        freeze: 20000,
    };
    let sigma0 = 1.0;
    // Primal residual dominates: sigma should be multiplied by gamma at
    // cadence points and left alone in between.
    let mut sigma = sigma0;
    for k in 2..=100 {
        sigma = s.sigma_for(k, sigma0, sigma, Some(100.0), Some(1.0));
        assert_eq!(sigma, sigma0, "changed off-cadence at k = {k}");
    }
    sigma = s.sigma_for(101, sigma0, sigma, Some(100.0), Some(1.0));
    assert_eq!(sigma, sigma0 * 1.5);

    // Dual residual dominates: divided by gamma.
    let sigma = s.sigma_for(101, sigma0, sigma0, Some(1.0), Some(100.0));
    assert_eq!(sigma, sigma0 / 1.5);

    // Balanced residuals: unchanged.
    let sigma = s.sigma_for(101, sigma0, sigma0, Some(2.0), Some(1.0));
    assert_eq!(sigma, sigma0);
}

#[test]
fn balance_heuristic_freezes_after_the_cutoff() {
    let s = SigmaSchedule::Balance {
        mu: 10.0,
        gamma: 1.5,
        cadence: 100,
        freeze: 20000,
    };
    let sigma = s.sigma_for(20101, 1.0, 1.0, Some(100.0), Some(1.0));
    assert_eq!(sigma, 1.0);
    let sigma = s.sigma_for(20001, 1.0, 1.0, Some(100.0), Some(1.0));
    assert_eq!(sigma, 1.5);
}

#[test]
fn defaults_match_the_documented_heuristic() {
    assert_eq!(
        SigmaSchedule::balance_default(),
        SigmaSchedule::Balance {
            mu: 10.0,
            gamma: 1.5,
            cadence: 100,
            freeze: 20000,
        }
    );
}
