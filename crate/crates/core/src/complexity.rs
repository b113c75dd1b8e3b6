//! FHT-count bounds and the complexity reduction gain.

use serde::{Deserialize, Serialize};

use crate::decoders::{DecoderConfig, Schedule};
use crate::error::{Error, Result};
use crate::rm::RmCode;

/// Worst-case and measured FHT decodings per codeword.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FhtBudget {
    pub bound: u64,
    pub measured_mean: f64,
}

impl FhtBudget {
    pub fn within_bound(&self) -> bool {
        self.measured_mean > 0.0 && self.measured_mean <= self.bound as f64
    }

    /// `1 − measured/reference`, comparing against another decoder's bound.
    pub fn gain_against(&self, reference_bound: u64) -> f64 {
        complexity_gain(self.measured_mean, reference_bound)
    }
}

/// Maximum number of first-order FHT decodings for one codeword.
///
/// Level `ℓ = 0 … r−2` works on length `2^(m−ℓ)` and uses
/// `⌈r_p·(2^(m−ℓ) − 1)⌉` projections per iteration, iterating up to
/// `⌈(m−ℓ)/2⌉` times. Under [`Schedule::TopOnly`] only the top level carries
/// the iteration factor.
pub fn count_fht_bound(code: &RmCode, cfg: &DecoderConfig) -> Result<u64> {
    if code.r() < 2 {
        return Err(Error::param("FHT bound is defined for order r ≥ 2"));
    }
    let m = code.m();
    let mut total = 1u64;
    for level in 0..code.r() - 1 {
        let len_log = m - level;
        let iterations = match cfg.schedule {
            Schedule::TopOnly if level > 0 => 1,
            _ => u64::from(len_log.div_ceil(2)),
        };
        total = total
            .checked_mul(iterations * cfg.projections_at(len_log))
            .ok_or_else(|| Error::Resource("FHT bound overflows u64".into()))?;
    }
    Ok(total)
}

/// `G_C = 1 − N̄_SDSS / N_SRPA`.
pub fn complexity_gain(n_sdss_mean: f64, n_srpa_bound: u64) -> f64 {
    1.0 - n_sdss_mean / n_srpa_bound as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoders::Variant;
    use crate::Factor;
    use approx::assert_abs_diff_eq;

    fn cfg(variant: Variant, rp: &str) -> DecoderConfig {
        DecoderConfig::for_variant(variant, rp.parse().unwrap(), Factor::ZERO)
    }

    #[test]
    fn bound_examples() {
        let rm73 = RmCode::new(7, 3).unwrap();
        let rm83 = RmCode::new(8, 3).unwrap();
        assert_eq!(count_fht_bound(&rm73, &cfg(Variant::Srpa, "1/2")).unwrap(), 24576);
        assert_eq!(count_fht_bound(&rm83, &cfg(Variant::Srpa, "1/16")).unwrap(), 2048);
        assert_eq!(count_fht_bound(&rm73, &cfg(Variant::Sdss, "1/4")).unwrap(), 2048);
        assert_eq!(count_fht_bound(&rm73, &cfg(Variant::Sdss, "1/16")).unwrap(), 128);
    }

    #[test]
    fn rpa_bound() {
        // RM(6,3): 3·63 · 3·31 = 17577
        let code = RmCode::new(6, 3).unwrap();
        assert_eq!(count_fht_bound(&code, &DecoderConfig::rpa()).unwrap(), 3 * 63 * 3 * 31);
    }

    #[test]
    fn needs_order_two() {
        assert!(count_fht_bound(&RmCode::new(5, 1).unwrap(), &DecoderConfig::rpa()).is_err());
    }

    #[test]
    fn gain_examples() {
        assert_abs_diff_eq!(complexity_gain(25046.0, 131072), 0.8089, epsilon = 1e-4);
        assert_abs_diff_eq!(complexity_gain(128.0, 384), 0.6667, epsilon = 1e-4);
        assert_eq!(complexity_gain(500.0, 500), 0.0);
        let b = FhtBudget { bound: 8192, measured_mean: 6267.0 };
        assert!(b.within_bound());
        assert_abs_diff_eq!(b.gain_against(24576), 1.0 - 6267.0 / 24576.0);
    }
}
