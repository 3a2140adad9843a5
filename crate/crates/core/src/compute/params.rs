//! Exact closed-form parameter counting.
//!
//! The count covers the attention and feed-forward weight matrices plus
//! the three vocab-by-hidden blocks (input embedding, decoder output
//! projection, and CTC head, all untied). Biases, layer norms, and the
//! convolutional front-end are excluded; they contribute well under 1%
//! at these widths and would break the closed form.

use serde::{Deserialize, Serialize};

use super::ArchConfig;
use crate::{Error, Result};

/// Exact per-component parameter counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamBreakdown {
    pub encoder: u64,
    pub decoder: u64,
    pub embedding: u64,
    pub output_projection: u64,
    pub ctc_head: u64,
    pub total: u64,
}

fn mul(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b)
        .ok_or_else(|| Error::ArithmeticError(format!("{a} * {b} exceeds u64")))
}

fn add(a: u64, b: u64) -> Result<u64> {
    a.checked_add(b)
        .ok_or_else(|| Error::ArithmeticError(format!("{a} + {b} exceeds u64")))
}

/// Count parameters exactly.
///
/// Per layer: an encoder block holds `4d^2` attention weights plus
/// `2*d*ffn` feed-forward weights; a decoder block holds `8d^2` (self-
/// plus cross-attention) and the same feed-forward. Overflow is reported
/// as an error rather than wrapping.
pub fn count_params(config: &ArchConfig) -> Result<ParamBreakdown> {
    config.validate()?;
    let d = config.hidden;
    let attn = mul(4, mul(d, d)?)?;
    let ff = mul(2, mul(d, config.ffn)?)?;
    let encoder = mul(config.enc_layers, add(attn, ff)?)?;
    let decoder = mul(config.dec_layers, add(mul(2, attn)?, ff)?)?;
    let vocab_block = mul(config.vocab, d)?;

    let mut total = encoder;
    total = add(total, decoder)?;
    total = add(total, vocab_block)?; // embedding
    total = add(total, vocab_block)?; // output projection
    total = add(total, vocab_block)?; // ctc head

    Ok(ParamBreakdown {
        encoder,
        decoder,
        embedding: vocab_block,
        output_projection: vocab_block,
        ctc_head: vocab_block,
        total,
    })
}

/// Number of encoder frames produced for a clip of the given length:
/// `floor(audio_seconds * 1000 / frame_shift_ms / downsample)`.
pub fn encoder_frames(config: &ArchConfig, audio_seconds: f64) -> Result<u64> {
    if !(audio_seconds.is_finite() && audio_seconds > 0.0) {
        return Err(Error::DomainError(format!(
            "audio length must be positive, got {audio_seconds}"
        )));
    }
    Ok((audio_seconds * 1000.0 / config.frame_shift_ms / config.downsample as f64).floor() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compute::{paper_config, paper_configs};

    #[test]
    fn smallest_config_exact_total() {
        let c = paper_config("0.25B").unwrap();
        let p = count_params(&c).unwrap();
        assert_eq!(p.encoder, 56_623_104);
        assert_eq!(p.decoder, 75_497_472);
        assert_eq!(p.embedding, 38_400_000);
        assert_eq!(p.total, 247_320_576);
        assert_eq!(
            p.total,
            p.encoder + p.decoder + p.embedding + p.output_projection + p.ctc_head
        );
    }

    #[test]
    fn largest_config_near_nominal() {
        let c = paper_config("18B").unwrap();
        let p = count_params(&c).unwrap();
        assert_eq!(p.total, 17_372_233_728);
        let ratio = p.total as f64 / c.nominal_params;
        assert!((0.65..=1.35).contains(&ratio));
    }

    #[test]
    fn embeddings_only_degenerate_case() {
        let c = ArchConfig::new(0, 0, 768, 3072, 16, 1.0).unwrap();
        let p = count_params(&c).unwrap();
        assert_eq!(p.encoder, 0);
        assert_eq!(p.decoder, 0);
        assert_eq!(p.total, 3 * 50_000 * 768);
    }

    #[test]
    fn overflow_is_detected() {
        let mut c = ArchConfig::new(1, 1, 1 << 31, 1 << 31, 1, 1.0).unwrap();
        c.heads = 1;
        let err = count_params(&c);
        assert!(matches!(err, Err(Error::ArithmeticError(_))), "{err:?}");
    }

    #[test]
    fn successive_sizes_roughly_double() {
        let totals: Vec<u64> = paper_configs()
            .iter()
            .map(|(_, c)| count_params(c).unwrap().total)
            .collect();
        for pair in totals.windows(2) {
            let ratio = pair[1] as f64 / pair[0] as f64;
            assert!((1.6..=2.6).contains(&ratio), "ratio {ratio}");
        }
    }

    #[test]
    fn frame_counts() {
        let c = paper_config("0.25B").unwrap();
        assert_eq!(encoder_frames(&c, 30.0).unwrap(), 750);
        assert_eq!(encoder_frames(&c, 1.0).unwrap(), 25);
        let mut c2 = c.clone();
        c2.frame_shift_ms = 20.0;
        c2.downsample = 2;
        assert_eq!(encoder_frames(&c2, 30.0).unwrap(), 750);
        assert!(encoder_frames(&c, 0.0).is_err());
    }
}
