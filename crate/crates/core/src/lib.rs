//! Scaling-law fitting, transformer compute accounting, and speech
//! evaluation metrics.
//!
//! The crate is organized around five subsystems:
//!
//! * [`scaling`] — power-law and saturating-loss curve fits over
//!   (scale, metric) series, bootstrap confidence intervals, capability
//!   classification, and extrapolation diagnostics.
//! * [`compute`] — closed-form transformer parameter counts, analytic
//!   inference/training FLOPS, and compute-balanced beam planning.
//! * [`metrics`] — WER/CER/N-CER/B-WER edit-distance scoring with
//!   configurable text normalization, and corpus BLEU.
//! * [`icl`] — embedding store with exact k-NN retrieval and in-context
//!   prompt/audio assembly over PCM16 WAV clips.
//! * [`ingest`] — manifest and table parsing, bundled fixtures, and fit
//!   report persistence.

pub mod compute;
pub mod error;
pub mod icl;
pub mod ingest;
pub mod metrics;
pub mod scaling;

pub use error::Error;

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
