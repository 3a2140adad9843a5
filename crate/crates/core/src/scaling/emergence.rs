//! Holdout extrapolation diagnostics for spotting better-than-predicted
//! scaling behavior.

use serde::{Deserialize, Serialize};

use super::fit::ols_loglog;
use super::ScalingSeries;
use crate::{Error, Result};

/// Conventional two-sigma flag threshold.
pub const DEFAULT_EMERGENCE_THRESHOLD_SIGMA: f64 = 2.0;

/// In-fit residual deviations below this are treated as exactly zero, so
/// that noiseless series do not produce spurious sigma ratios.
const SIGMA_FLOOR: f64 = 1e-12;
/// Holdout log-residuals below this are treated as exactly zero.
const RESIDUAL_FLOOR: f64 = 1e-9;

/// One held-out point judged against the prefix fit.
///
/// `residual_sigma` is the log-space residual in units of the in-fit
/// residual standard deviation, signed so that positive means the
/// observed metric beat (fell below) the prediction. When the prefix fit
/// is exact and the holdout still deviates, the ratio is reported as an
/// infinite sentinel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmergenceReport {
    pub holdout_x: f64,
    pub predicted_y: f64,
    pub observed_y: f64,
    pub residual_sigma: f64,
    pub flagged: bool,
}

/// Fit the first `n - holdout_count` points, then score each held-out
/// point's deviation. A point is flagged when it beats the prediction by
/// more than `threshold_sigma` in-fit standard deviations.
pub fn emergence_score(
    series: &ScalingSeries,
    holdout_count: usize,
    threshold_sigma: f64,
) -> Result<Vec<EmergenceReport>> {
    if holdout_count < 1 {
        return Err(Error::DomainError(
            "holdout_count must be at least 1".into(),
        ));
    }
    if !threshold_sigma.is_finite() || threshold_sigma <= 0.0 {
        return Err(Error::DomainError(format!(
            "threshold_sigma must be finite and positive, got {threshold_sigma}"
        )));
    }
    let points = series.points();
    let n = points.len();
    if n < holdout_count || n - holdout_count < 3 {
        return Err(Error::InsufficientData(format!(
            "need at least 3 in-fit points, got {} of {n} after holding out {holdout_count}",
            n.saturating_sub(holdout_count)
        )));
    }

    let prefix = &points[..n - holdout_count];
    let ols = ols_loglog(prefix);
    // residual standard error with 2 fitted parameters
    let sigma = (ols.ssr / (prefix.len() - 2) as f64).sqrt();

    let reports = points[n - holdout_count..]
        .iter()
        .map(|&(x, y)| {
            let predicted = (ols.ln_beta + ols.alpha * x.ln()).exp();
            let log_resid = predicted.ln() - y.ln();
            let (residual_sigma, flagged) = if sigma < SIGMA_FLOOR {
                if log_resid.abs() < RESIDUAL_FLOOR {
                    (0.0, false)
                } else if log_resid > 0.0 {
                    (f64::INFINITY, true)
                } else {
                    (f64::NEG_INFINITY, false)
                }
            } else {
                let s = log_resid / sigma;
                (s, s > threshold_sigma)
            };
            EmergenceReport {
                holdout_x: x,
                predicted_y: predicted,
                observed_y: y,
                residual_sigma,
                flagged,
            }
        })
        .collect();
    Ok(reports)
}
