//! Analytic inference and training FLOPS.
//!
//! Convention: one multiply-accumulate counts as 2 FLOPS, so a weight
//! matrix of `P` parameters applied once costs `2P`. These estimates are
//! a relative-cost model; absolute agreement with any measured numbers
//! goes through [`super::calibrate`].

use serde::{Deserialize, Serialize};

use super::params::{count_params, encoder_frames};
use super::ArchConfig;
use crate::{Error, Result};

/// Per-component FLOPS for decoding one utterance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlopsEstimate {
    pub encoder_flops: f64,
    pub decoder_flops: f64,
    pub attention_flops: f64,
    pub total: f64,
}

/// Knobs for the decode cost model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecodeOptions {
    pub beam: u64,
    pub out_len: u64,
    pub audio_seconds: f64,
    /// With the cache each output token is processed once; without it
    /// every prefix is recomputed.
    pub kv_cache: bool,
    /// Include the sequence-length-quadratic attention score terms.
    pub include_attention: bool,
}

impl Default for DecodeOptions {
    fn default() -> Self {
        DecodeOptions {
            beam: 1,
            out_len: 30,
            audio_seconds: 30.0,
            kv_cache: true,
            include_attention: true,
        }
    }
}

/// Estimate the FLOPS to decode one utterance.
///
/// * encoder: `2 * encoder_params * T_enc`
/// * decoder: `2 * (decoder_params + embedding + output_projection) *
///   tokens_processed * beam`, where `tokens_processed` is `out_len`
///   with the kv cache and `out_len * (out_len + 1) / 2` without
/// * attention scores (optional): `4d * (enc_layers * T_enc^2 +
///   beam * dec_layers * (out_len^2 + out_len * T_enc))`
///
/// The CTC head is excluded from the decoder term: it is not used in
/// attention-based beam decoding.
pub fn estimate_decode_flops(config: &ArchConfig, opts: &DecodeOptions) -> Result<FlopsEstimate> {
    if opts.beam < 1 {
        return Err(Error::DomainError("beam must be at least 1".into()));
    }
    if opts.out_len < 1 {
        return Err(Error::DomainError("out_len must be at least 1".into()));
    }
    let params = count_params(config)?;
    let t_enc = encoder_frames(config, opts.audio_seconds)? as f64;
    let beam = opts.beam as f64;
    let out_len = opts.out_len as f64;

    let encoder_flops = 2.0 * params.encoder as f64 * t_enc;

    let tokens_processed = if opts.kv_cache {
        out_len
    } else {
        out_len * (out_len + 1.0) / 2.0
    };
    let decoder_side = (params.decoder + params.embedding + params.output_projection) as f64;
    let decoder_flops = 2.0 * decoder_side * tokens_processed * beam;

    let attention_flops = if opts.include_attention {
        let d = config.hidden as f64;
        4.0 * d
            * (config.enc_layers as f64 * t_enc * t_enc
                + beam * config.dec_layers as f64 * (out_len * out_len + out_len * t_enc))
    } else {
        0.0
    };

    Ok(FlopsEstimate {
        encoder_flops,
        decoder_flops,
        attention_flops,
        total: encoder_flops + decoder_flops + attention_flops,
    })
}

/// Training FLOPS by the standard forward-plus-backward heuristic:
/// `6 * total_params * tokens`.
pub fn estimate_train_flops(config: &ArchConfig, tokens: f64) -> Result<f64> {
    if !(tokens.is_finite() && tokens > 0.0) {
        return Err(Error::DomainError(format!(
            "token count must be positive, got {tokens}"
        )));
    }
    let params = count_params(config)?;
    Ok(6.0 * params.total as f64 * tokens)
}
