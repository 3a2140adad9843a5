//! Closed-form transformer parameter and FLOPS accounting, plus
//! compute-balanced decode planning.

mod balance;
mod flops;
mod params;

pub use balance::{balance_budget, calibrate, cost_table_from_estimator, DecodePlan, PlanOutcome};
pub use flops::{estimate_decode_flops, estimate_train_flops, DecodeOptions, FlopsEstimate};
pub use params::{count_params, encoder_frames, ParamBreakdown};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Transformer encoder-decoder shape plus audio front-end constants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArchConfig {
    pub enc_layers: u64,
    pub dec_layers: u64,
    /// Model width d.
    pub hidden: u64,
    pub ffn: u64,
    pub heads: u64,
    pub vocab: u64,
    pub feature_dim: u64,
    pub frame_shift_ms: f64,
    pub downsample: u64,
    pub max_audio_s: f64,
    /// The size the configuration is labeled as, in parameters.
    pub nominal_params: f64,
}

/// Default subword vocabulary size.
pub const DEFAULT_VOCAB: u64 = 50_000;
/// Default log-Mel feature dimension.
pub const DEFAULT_FEATURE_DIM: u64 = 80;
/// Default feature frame shift in milliseconds.
pub const DEFAULT_FRAME_SHIFT_MS: f64 = 10.0;
/// Default convolutional down-sampling factor.
pub const DEFAULT_DOWNSAMPLE: u64 = 4;
/// Default padded utterance length in seconds.
pub const DEFAULT_MAX_AUDIO_S: f64 = 30.0;

impl ArchConfig {
    /// Build a config with the standard front-end defaults.
    pub fn new(
        enc_layers: u64,
        dec_layers: u64,
        hidden: u64,
        ffn: u64,
        heads: u64,
        nominal_params: f64,
    ) -> Result<Self> {
        let config = ArchConfig {
            enc_layers,
            dec_layers,
            hidden,
            ffn,
            heads,
            vocab: DEFAULT_VOCAB,
            feature_dim: DEFAULT_FEATURE_DIM,
            frame_shift_ms: DEFAULT_FRAME_SHIFT_MS,
            downsample: DEFAULT_DOWNSAMPLE,
            max_audio_s: DEFAULT_MAX_AUDIO_S,
            nominal_params,
        };
        config.validate()?;
        Ok(config)
    }

    /// Check dimension invariants. Layer counts may be zero (an
    /// embeddings-only degenerate model); every width must be positive
    /// and the hidden size must split evenly across heads.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("hidden", self.hidden),
            ("ffn", self.ffn),
            ("heads", self.heads),
            ("vocab", self.vocab),
            ("feature_dim", self.feature_dim),
            ("downsample", self.downsample),
        ] {
            if v == 0 {
                return Err(Error::DomainError(format!("{name} must be positive")));
            }
        }
        if self.hidden % self.heads != 0 {
            return Err(Error::DomainError(format!(
                "hidden size {} not divisible by {} heads",
                self.hidden, self.heads
            )));
        }
        if !(self.frame_shift_ms.is_finite() && self.frame_shift_ms > 0.0) {
            return Err(Error::DomainError("frame_shift_ms must be positive".into()));
        }
        if !(self.max_audio_s.is_finite() && self.max_audio_s > 0.0) {
            return Err(Error::DomainError("max_audio_s must be positive".into()));
        }
        if !(self.nominal_params.is_finite() && self.nominal_params > 0.0) {
            return Err(Error::DomainError("nominal_params must be positive".into()));
        }
        Ok(())
    }
}

/// The seven standard model shapes, smallest to largest, keyed by their
/// size label.
pub fn paper_configs() -> Vec<(String, ArchConfig)> {
    let mk = |layers, hidden, ffn, heads, nominal: f64| {
        let mut c = ArchConfig::new(layers, layers, hidden, ffn, heads, nominal)
            .expect("builtin config is valid");
        c.validate().expect("builtin config is valid");
        c
    };
    vec![
        ("0.25B".to_string(), mk(8, 768, 3072, 16, 0.25e9)),
        ("0.5B".to_string(), mk(16, 1024, 4096, 16, 0.5e9)),
        ("1B".to_string(), mk(32, 1024, 4096, 16, 1e9)),
        ("2B".to_string(), mk(16, 2048, 8192, 64, 2e9)),
        ("4B".to_string(), mk(36, 2048, 8192, 64, 4e9)),
        ("9B".to_string(), mk(39, 2816, 11264, 64, 9e9)),
        ("18B".to_string(), mk(64, 3072, 12288, 64, 18e9)),
    ]
}

/// Look up one of the built-in configs by its size label
/// (case-insensitive; "0.50B" and "0.5B" both match).
pub fn paper_config(label: &str) -> Option<ArchConfig> {
    let norm = |s: &str| s.trim().to_ascii_uppercase().replace("0.50B", "0.5B");
    let wanted = norm(label);
    paper_configs()
        .into_iter()
        .find(|(name, _)| norm(name) == wanted)
        .map(|(_, c)| c)
}

/// Measured decode cost rows: one (model, beam) pair with its cost and
/// optionally the accuracy observed at that setting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostRow {
    pub model_label: String,
    pub beam: u32,
    pub tflops: f64,
    pub wer: Option<f64>,
}

/// A set of (model, beam) decode cost measurements.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostTable {
    rows: Vec<CostRow>,
}

impl CostTable {
    /// Build a table, enforcing unique (model, beam) pairs and positive
    /// costs.
    pub fn new(rows: Vec<CostRow>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for row in &rows {
            if !(row.tflops.is_finite() && row.tflops > 0.0) {
                return Err(Error::DomainError(format!(
                    "cost for ({}, beam {}) must be positive, got {}",
                    row.model_label, row.beam, row.tflops
                )));
            }
            if !seen.insert((row.model_label.clone(), row.beam)) {
                return Err(Error::DomainError(format!(
                    "duplicate cost row for ({}, beam {})",
                    row.model_label, row.beam
                )));
            }
        }
        Ok(CostTable { rows })
    }

    pub fn rows(&self) -> &[CostRow] {
        &self.rows
    }

    /// Labels present in the table, in first-appearance order.
    pub fn model_labels(&self) -> Vec<String> {
        let mut labels = Vec::new();
        for row in &self.rows {
            if !labels.contains(&row.model_label) {
                labels.push(row.model_label.clone());
            }
        }
        labels
    }
}

/// The measured equal-budget decode cost table: beam size, cost, and WER
/// per model when every model spends roughly the same test-time compute.
pub fn measured_cost_table() -> CostTable {
    CostTable::new(vec![
        CostRow {
            model_label: "0.25B".into(),
            beam: 10,
            tflops: 48.7,
            wer: Some(8.33),
        },
        CostRow {
            model_label: "2B".into(),
            beam: 4,
            tflops: 36.2,
            wer: Some(4.69),
        },
        CostRow {
            model_label: "4B".into(),
            beam: 2,
            tflops: 42.3,
            wer: Some(4.52),
        },
        CostRow {
            model_label: "9B".into(),
            beam: 1,
            tflops: 47.7,
            wer: Some(4.52),
        },
    ])
    .expect("builtin cost table is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_configs_are_seven_and_valid() {
        let configs = paper_configs();
        assert_eq!(configs.len(), 7);
        for (_, c) in &configs {
            c.validate().unwrap();
            assert_eq!(c.vocab, 50_000);
            assert_eq!(c.feature_dim, 80);
            assert_eq!(c.downsample, 4);
        }
        assert!(paper_config("9b").is_some());
        assert!(paper_config("0.50B").is_some());
        assert!(paper_config("3B").is_none());
    }

    #[test]
    fn config_validation_catches_bad_shapes() {
        assert!(ArchConfig::new(8, 8, 770, 3072, 16, 0.25e9).is_err()); // 770 % 16 != 0
        assert!(ArchConfig::new(8, 8, 0, 3072, 16, 0.25e9).is_err());
        // zero layers are allowed
        assert!(ArchConfig::new(0, 0, 768, 3072, 16, 0.25e9).is_ok());
    }

    #[test]
    fn cost_table_rejects_duplicates() {
        let row = CostRow {
            model_label: "2B".into(),
            beam: 4,
            tflops: 36.2,
            wer: None,
        };
        assert!(CostTable::new(vec![row.clone(), row]).is_err());
    }
}
