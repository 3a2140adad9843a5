//! Percentile bootstrap intervals for power-law fit parameters.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::fit::ols_loglog;
use super::ScalingSeries;
use crate::{Error, Result};

/// The statistic an interval is computed for.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum BootstrapTarget {
    /// The fitted exponent.
    Alpha,
    /// The fitted coefficient.
    Beta,
    /// The fitted curve evaluated at the given x.
    Prediction(f64),
}

/// A percentile confidence interval, reproducible from (series, level,
/// n_resamples, seed).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfidenceInterval {
    pub lo: f64,
    pub hi: f64,
    pub level: f64,
    pub n_resamples: usize,
    pub seed: u64,
}

/// Percentile bootstrap over resamples-with-replacement of the series
/// points. Resamples with fewer than 2 distinct x values cannot be fit
/// and are discarded; if more than half are discarded the series is
/// reported unstable.
pub fn bootstrap_ci(
    series: &ScalingSeries,
    target: BootstrapTarget,
    level: f64,
    n_resamples: usize,
    seed: u64,
) -> Result<ConfidenceInterval> {
    if n_resamples < 100 {
        return Err(Error::DomainError(format!(
            "bootstrap needs at least 100 resamples, got {n_resamples}"
        )));
    }
    if !(0.0..1.0).contains(&level) || level <= 0.0 {
        return Err(Error::DomainError(format!(
            "confidence level must be in (0, 1), got {level}"
        )));
    }
    if let BootstrapTarget::Prediction(x) = target {
        if !x.is_finite() || x <= 0.0 {
            return Err(Error::DomainError(format!(
                "prediction point must be finite and positive, got {x}"
            )));
        }
    }

    let points = series.points();
    let n = points.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = Vec::with_capacity(n_resamples);
    let mut discarded = 0usize;
    let mut sample = vec![(0.0, 0.0); n];
    for _ in 0..n_resamples {
        for slot in sample.iter_mut() {
            *slot = points[rng.gen_range(0..n)];
        }
        let first_x = sample[0].0;
        if sample.iter().all(|p| p.0 == first_x) {
            discarded += 1;
            continue;
        }
        let ols = ols_loglog(&sample);
        stats.push(match target {
            BootstrapTarget::Alpha => ols.alpha,
            BootstrapTarget::Beta => ols.beta(),
            BootstrapTarget::Prediction(x) => ols.beta() * x.powf(ols.alpha),
        });
    }
    if discarded * 2 > n_resamples {
        return Err(Error::UnstableSeries(discarded, n_resamples));
    }

    stats.sort_by(|a, b| a.total_cmp(b));
    let m = stats.len();
    let tail = (1.0 - level) / 2.0;
    let lo_idx = ((tail * m as f64) as usize).min(m - 1);
    let hi_idx = (((1.0 - tail) * m as f64) as usize).min(m - 1);
    Ok(ConfidenceInterval {
        lo: stats[lo_idx],
        hi: stats[hi_idx],
        level,
        n_resamples,
        seed,
    })
}
