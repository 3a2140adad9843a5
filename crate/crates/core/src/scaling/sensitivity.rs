//! Cross-language data-sensitivity analysis.
//!
//! Contrasts how well training-data volume predicts error rates across
//! languages against how well model size predicts them within each
//! language.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::fit::{fit_power_law, PowerLawFit};
use super::{ScaleAxis, ScalingSeries};
use crate::{Error, Result};

/// Output of [`data_sensitivity_report`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensitivityReport {
    /// Power-law regression of the per-language metric on training hours,
    /// pooled across languages.
    pub cross_fit: PowerLawFit,
    /// Per-language model-size fit r², restricted to the languages that
    /// entered the cross fit.
    pub per_language_r2: BTreeMap<String, f64>,
    pub median_per_language_r2: f64,
    /// `median_per_language_r2 - cross_fit.r_squared`; positive when
    /// within-language size scaling is the better predictor.
    pub ordering_margin: f64,
}

/// Regress the metric on training hours across languages and compare the
/// result against the supplied per-language model-size fit quality.
///
/// Only languages present in all three maps participate; at least 5 are
/// required.
pub fn data_sensitivity_report(
    hours: &BTreeMap<String, f64>,
    metric_at_size: &BTreeMap<String, f64>,
    per_language_r2: &BTreeMap<String, f64>,
) -> Result<SensitivityReport> {
    let mut points = Vec::new();
    let mut restricted = BTreeMap::new();
    for (lang, &h) in hours {
        let (Some(&m), Some(&r2)) = (metric_at_size.get(lang), per_language_r2.get(lang)) else {
            continue;
        };
        if !h.is_finite() || h <= 0.0 {
            return Err(Error::DomainError(format!(
                "training hours for {lang} must be positive, got {h}"
            )));
        }
        points.push((h, m));
        restricted.insert(lang.clone(), r2);
    }
    if restricted.len() < 5 {
        return Err(Error::InsufficientData(format!(
            "cross-language regression needs at least 5 languages, got {}",
            restricted.len()
        )));
    }

    let series = ScalingSeries::new(ScaleAxis::DataHours, "WER", "cross-language", points)?;
    let cross_fit = fit_power_law(&series)?;

    let mut r2s: Vec<f64> = restricted.values().copied().collect();
    r2s.sort_by(|a, b| a.total_cmp(b));
    let mid = r2s.len() / 2;
    let median = if r2s.len() % 2 == 1 {
        r2s[mid]
    } else {
        0.5 * (r2s[mid - 1] + r2s[mid])
    };

    Ok(SensitivityReport {
        ordering_margin: median - cross_fit.r_squared,
        cross_fit,
        per_language_r2: restricted,
        median_per_language_r2: median,
    })
}
