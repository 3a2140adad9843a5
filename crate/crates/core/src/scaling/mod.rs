//! Power-law scaling analysis over (scale, metric) observation series.
//!
//! A [`ScalingSeries`] holds ordered observations of one metric along a
//! single [`ScaleAxis`]. Fitting is always done by ordinary least squares
//! in log-log space; the saturating three-parameter variant
//! ([`fit_loss_curve`]) additionally searches for the irreducible floor
//! by grid search plus golden-section refinement.

mod bootstrap;
mod emergence;
mod fit;
mod sensitivity;

pub use bootstrap::{bootstrap_ci, BootstrapTarget, ConfidenceInterval};
pub use emergence::{emergence_score, EmergenceReport, DEFAULT_EMERGENCE_THRESHOLD_SIGMA};
pub use fit::{fit_loss_curve, fit_loss_curve_at, fit_power_law, LossCurveFit, PowerLawFit};
pub use sensitivity::{data_sensitivity_report, SensitivityReport};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The scale variable a series is observed along.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScaleAxis {
    /// Model size, in raw parameters.
    ModelParams,
    /// Training data size, in hours.
    DataHours,
    /// Compute budget, in FLOPS.
    ComputeFlops,
}

impl ScaleAxis {
    /// Unit string for display.
    pub fn unit(&self) -> &'static str {
        match self {
            ScaleAxis::ModelParams => "parameters",
            ScaleAxis::DataHours => "hours",
            ScaleAxis::ComputeFlops => "FLOPS",
        }
    }
}

impl std::fmt::Display for ScaleAxis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScaleAxis::ModelParams => write!(f, "model_params"),
            ScaleAxis::DataHours => write!(f, "data_hours"),
            ScaleAxis::ComputeFlops => write!(f, "compute_flops"),
        }
    }
}

/// Ordered (x, y) observations of a metric along one scale axis.
///
/// Construction sorts by x and averages y over duplicate x values, so the
/// stored points are strictly increasing in x. All coordinates must be
/// finite and positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingSeries {
    axis: ScaleAxis,
    metric_name: String,
    label: String,
    points: Vec<(f64, f64)>,
}

impl ScalingSeries {
    /// Build a validated series. Duplicate x values are merged by
    /// averaging their y values.
    pub fn new(
        axis: ScaleAxis,
        metric_name: impl Into<String>,
        label: impl Into<String>,
        points: Vec<(f64, f64)>,
    ) -> Result<Self> {
        for &(x, y) in &points {
            if !x.is_finite() || x <= 0.0 {
                return Err(Error::DomainError(format!(
                    "series x values must be finite and positive, got {x}"
                )));
            }
            if !y.is_finite() || y <= 0.0 {
                return Err(Error::DomainError(format!(
                    "series y values must be finite and positive, got {y}"
                )));
            }
        }
        let mut sorted = points;
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(sorted.len());
        let mut i = 0;
        while i < sorted.len() {
            let x = sorted[i].0;
            let mut sum = 0.0;
            let mut count = 0usize;
            while i < sorted.len() && sorted[i].0 == x {
                sum += sorted[i].1;
                count += 1;
                i += 1;
            }
            merged.push((x, sum / count as f64));
        }
        if merged.len() < 2 {
            return Err(Error::InsufficientData(format!(
                "series needs at least 2 distinct x values, got {}",
                merged.len()
            )));
        }
        Ok(ScalingSeries {
            axis,
            metric_name: metric_name.into(),
            label: label.into(),
            points: merged,
        })
    }

    pub fn axis(&self) -> ScaleAxis {
        self.axis
    }

    pub fn metric_name(&self) -> &str {
        &self.metric_name
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Strictly increasing (x, y) points.
    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub(crate) fn min_y(&self) -> f64 {
        self.points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min)
    }
}

/// Task capability bands implied by a BLEU score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CapabilityClass {
    /// Output is not intelligible (BLEU below [`BLEU_NON_FUNCTIONAL_MAX`]).
    NonFunctional,
    /// Between the two thresholds.
    Marginal,
    /// Task works reasonably well (BLEU above [`BLEU_FUNCTIONAL_MIN`]).
    Functional,
}

impl std::fmt::Display for CapabilityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CapabilityClass::NonFunctional => write!(f, "non-functional"),
            CapabilityClass::Marginal => write!(f, "marginal"),
            CapabilityClass::Functional => write!(f, "functional"),
        }
    }
}

/// BLEU below this means the system cannot produce intelligible output.
pub const BLEU_NON_FUNCTIONAL_MAX: f64 = 5.0;
/// BLEU above this means the system functions reasonably well.
pub const BLEU_FUNCTIONAL_MIN: f64 = 15.0;

/// Classify a BLEU score (0-100 scale) into a capability band.
///
/// Scores exactly on a threshold are Marginal.
pub fn classify_capability(bleu: f64) -> Result<CapabilityClass> {
    if !bleu.is_finite() || bleu < 0.0 {
        return Err(Error::DomainError(format!(
            "BLEU must be a nonnegative finite value, got {bleu}"
        )));
    }
    Ok(if bleu < BLEU_NON_FUNCTIONAL_MAX {
        CapabilityClass::NonFunctional
    } else if bleu > BLEU_FUNCTIONAL_MIN {
        CapabilityClass::Functional
    } else {
        CapabilityClass::Marginal
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_rejects_nonpositive_coordinates() {
        let err = ScalingSeries::new(ScaleAxis::ModelParams, "WER", "t", vec![(1.0, 0.0)]);
        assert!(matches!(err, Err(Error::DomainError(_))));
        let err = ScalingSeries::new(ScaleAxis::ModelParams, "WER", "t", vec![(-1.0, 2.0)]);
        assert!(matches!(err, Err(Error::DomainError(_))));
    }

    #[test]
    fn series_requires_two_distinct_x() {
        let err = ScalingSeries::new(ScaleAxis::DataHours, "WER", "t", vec![(1.0, 2.0)]);
        assert!(matches!(err, Err(Error::InsufficientData(_))));
        // two points that collapse into one after duplicate merging
        let err = ScalingSeries::new(
            ScaleAxis::DataHours,
            "WER",
            "t",
            vec![(1.0, 2.0), (1.0, 4.0)],
        );
        assert!(matches!(err, Err(Error::InsufficientData(_))));
    }

    #[test]
    fn series_sorts_and_averages_duplicates() {
        let s = ScalingSeries::new(
            ScaleAxis::ModelParams,
            "WER",
            "t",
            vec![(4.0, 1.0), (1.0, 2.0), (4.0, 3.0)],
        )
        .unwrap();
        assert_eq!(s.points(), &[(1.0, 2.0), (4.0, 2.0)]);
    }

    #[test]
    fn capability_thresholds() {
        assert_eq!(classify_capability(4.0).unwrap(), CapabilityClass::NonFunctional);
        assert_eq!(classify_capability(16.0).unwrap(), CapabilityClass::Functional);
        assert_eq!(classify_capability(10.0).unwrap(), CapabilityClass::Marginal);
        assert_eq!(classify_capability(5.0).unwrap(), CapabilityClass::Marginal);
        assert_eq!(classify_capability(15.0).unwrap(), CapabilityClass::Marginal);
        assert!(classify_capability(-1.0).is_err());
    }
}
