//! BPSK over AWGN, the binary symmetric channel, and per-trial random streams.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rm::Codeword;

/// Magnitude at which channel LLRs are clipped.
pub const DEFAULT_LLR_CAP: f64 = 40.0;

/// Channel log-likelihood ratios, `L(z) = ln W(y|0)/W(y|1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LlrVector {
    pub values: Vec<f64>,
}

impl LlrVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if !values.len().is_power_of_two() {
            return Err(Error::param(format!("LLR length {} is not a power of two", values.len())));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::param(format!("non-finite LLR {v}")));
        }
        Ok(LlrVector { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Noiseless BPSK image of `word`: `+cap` for 0, `−cap` for 1.
    pub fn noiseless(word: &Codeword, cap: f64) -> Self {
        LlrVector { values: word.bits.iter().map(|&b| if b == 0 { cap } else { -cap }).collect() }
    }

    /// Hard decisions, `L = 0` deciding 0.
    pub fn hard_decision(&self) -> Codeword {
        Codeword { bits: self.values.iter().map(|&l| u8::from(l < 0.0)).collect() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChannelKind {
    AwgnBpsk { ebn0_db: f64 },
    Bsc { crossover: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelConfig {
    pub kind: ChannelKind,
    /// Code rate `k/n`, used for the Eb/N0 to noise-variance conversion.
    pub rate: f64,
    pub llr_cap: f64,
}

impl ChannelConfig {
    pub fn awgn(ebn0_db: f64, rate: f64) -> Self {
        ChannelConfig { kind: ChannelKind::AwgnBpsk { ebn0_db }, rate, llr_cap: DEFAULT_LLR_CAP }
    }

    pub fn bsc(crossover: f64) -> Self {
        ChannelConfig { kind: ChannelKind::Bsc { crossover }, rate: 1.0, llr_cap: DEFAULT_LLR_CAP }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.llr_cap > 0.0 && self.llr_cap.is_finite()) {
            return Err(Error::param(format!("LLR cap must be positive and finite, got {}", self.llr_cap)));
        }
        match self.kind {
            ChannelKind::AwgnBpsk { ebn0_db } => {
                if ebn0_db.is_nan() || !(self.rate > 0.0 && self.rate <= 1.0) {
                    return Err(Error::param(format!(
                        "invalid AWGN config: Eb/N0 {ebn0_db} dB, rate {}",
                        self.rate
                    )));
                }
            }
            ChannelKind::Bsc { crossover } => {
                if !(crossover > 0.0 && crossover < 0.5) {
                    return Err(Error::param(format!("BSC crossover {crossover} not in (0, 0.5)")));
                }
            }
        }
        Ok(())
    }

    /// LLR magnitude a BSC observation carries, `ln((1−ε)/ε)`.
    pub fn bsc_llr_magnitude(crossover: f64) -> f64 {
        ((1.0 - crossover) / crossover).ln()
    }
}

/// Noise standard deviation for unit-energy BPSK:
/// `σ² = 1 / (2 · rate · 10^(Eb/N0 / 10))`.
pub fn noise_sigma(cfg: &ChannelConfig) -> Result<f64> {
    match cfg.kind {
        ChannelKind::AwgnBpsk { ebn0_db } => {
            let ebn0 = 10f64.powf(ebn0_db / 10.0);
            Ok((1.0 / (2.0 * cfg.rate * ebn0)).sqrt())
        }
        ChannelKind::Bsc { .. } => Err(Error::param("noise sigma is only defined for AWGN")),
    }
}

/// Independent purposes drawn from one trial's stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u64)]
pub enum Lane {
    Message = 1,
    Channel = 2,
    Decoder = 3,
}

/// Counter-based random stream keyed on `(master_seed, stream_id)`.
///
/// The generator for a given key and [`Lane`] is a pure function of those
/// values, so trials can run on any worker in any order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngStream {
    pub master_seed: u64,
    pub stream_id: u64,
}

impl RngStream {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        RngStream { master_seed, stream_id }
    }

    pub fn rng(&self, lane: Lane) -> ChaCha8Rng {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.master_seed.to_le_bytes());
        key[8..16].copy_from_slice(&(lane as u64).to_le_bytes());
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(self.stream_id);
        rng
    }
}

/// Sends `word` through the channel and returns the capped LLRs.
pub fn transmit(word: &Codeword, cfg: &ChannelConfig, stream: &RngStream) -> Result<LlrVector> {
    transmit_with(word, cfg, &mut stream.rng(Lane::Channel))
}

pub fn transmit_with<R: Rng + ?Sized>(
    word: &Codeword,
    cfg: &ChannelConfig,
    rng: &mut R,
) -> Result<LlrVector> {
    cfg.validate()?;
    let cap = cfg.llr_cap;
    let values = match cfg.kind {
        ChannelKind::AwgnBpsk { .. } => {
            let sigma = noise_sigma(cfg)?;
            let scale = 2.0 / (sigma * sigma);
            word.bits
                .iter()
                .map(|&b| {
                    let s = if b == 0 { 1.0 } else { -1.0 };
                    let noise: f64 = rng.sample(StandardNormal);
                    let l = scale * (s + sigma * noise);
                    if l.is_nan() {
                        // σ = 0 gives ∞·0; the noiseless limit is ±cap.
                        s * cap
                    } else {
                        l.clamp(-cap, cap)
                    }
                })
                .collect()
        }
        ChannelKind::Bsc { crossover } => {
            let mag = ChannelConfig::bsc_llr_magnitude(crossover).min(cap);
            word.bits
                .iter()
                .map(|&b| {
                    let received = b ^ u8::from(rng.random::<f64>() < crossover);
                    if received == 0 { mag } else { -mag }
                })
                .collect()
        }
    };
    Ok(LlrVector { values })
}
