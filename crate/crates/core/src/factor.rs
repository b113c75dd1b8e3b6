use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::CheckedAdd;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A non-negative exact fraction used for the pruning factor r_p and the DSS
/// factor r_q.
///
/// Counts such as `p = ⌈r_p·(n−1)⌉` are evaluated in integer arithmetic so a
/// decimal like `0.1` never rounds up to an extra subspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factor(Ratio<u64>);

impl Factor {
    pub const ZERO: Factor = Factor(Ratio::new_raw(0, 1));
    pub const ONE: Factor = Factor(Ratio::new_raw(1, 1));

    pub fn new(numer: u64, denom: u64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::param("fraction with zero denominator"));
        }
        Ok(Factor(Ratio::new(numer, denom)))
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn to_f64(self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    pub fn is_zero(&self) -> bool {
        self.numer() == 0
    }

    /// `⌈self · count⌉`, exact.
    pub fn ceil_mul(self, count: u64) -> u64 {
        let num = self.numer() as u128 * count as u128;
        let den = self.denom() as u128;
        num.div_ceil(den) as u64
    }

    /// Candidate pool size `⌈(1 − r_q + r_q·r_p)·count⌉`, exact.
    pub fn pool_size(r_q: Factor, r_p: Factor, count: u64) -> u64 {
        let (a, b) = (r_q.numer() as u128, r_q.denom() as u128);
        let (c, d) = (r_p.numer() as u128, r_p.denom() as u128);
        // (b·d − a·d + a·c) / (b·d); a ≤ b so the subtraction is safe.
        let num = (b * d - a * d + a * c) * count as u128;
        num.div_ceil(b * d) as u64
    }

    /// Adds `other`, reducing the result.
    pub fn checked_add(self, other: Factor) -> Option<Factor> {
        self.0.checked_add(&other.0).map(Factor)
    }

    fn has_terminating_decimal(&self) -> bool {
        let mut d = self.denom();
        while d.is_multiple_of(2) {
            d /= 2;
        }
        while d.is_multiple_of(5) {
            d /= 5;
        }
        d == 1
    }

    /// Exact decimal rendering when the denominator allows it, `a/b` otherwise.
    pub fn to_decimal_string(&self) -> String {
        if !self.has_terminating_decimal() {
            return self.to_string();
        }
        let int = self.numer() / self.denom();
        let den = self.denom() as u128;
        let mut rem = (self.numer() % self.denom()) as u128;
        if rem == 0 {
            return int.to_string();
        }
        let mut out = format!("{int}.");
        while rem != 0 {
            rem *= 10;
            out.push(char::from(b'0' + (rem / den) as u8));
            rem %= den;
        }
        out
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Factor {
    type Err = Error;

    /// Accepts `a/b`, integers and plain decimals such as `0.85`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::param(format!("cannot parse {s:?} as a fraction"));
        if let Some((n, d)) = s.split_once('/') {
            let n: u64 = n.trim().parse().map_err(|_| bad())?;
            let d: u64 = d.trim().parse().map_err(|_| bad())?;
            return Factor::new(n, d);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if (int.is_empty() && frac.is_empty())
            || !int.chars().all(|c| c.is_ascii_digit())
            || !frac.chars().all(|c| c.is_ascii_digit())
            || frac.len() > 18
        {
            return Err(bad());
        }
        let denom = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let numer = int
            .checked_mul(denom)
            .and_then(|v| v.checked_add(frac))
            .ok_or_else(bad)?;
        Factor::new(numer, denom)
    }
}

impl Serialize for Factor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_decimal_string())
    }
}

impl<'de> Deserialize<'de> for Factor {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!("1/32".parse::<Factor>().unwrap(), Factor::new(1, 32).unwrap());
        assert_eq!("0.85".parse::<Factor>().unwrap(), Factor::new(17, 20).unwrap());
        assert_eq!("1".parse::<Factor>().unwrap(), Factor::ONE);
        assert_eq!(".5".parse::<Factor>().unwrap(), Factor::new(1, 2).unwrap());
        assert!("1/0".parse::<Factor>().is_err());
        assert!("abc".parse::<Factor>().is_err());
        assert!("-0.5".parse::<Factor>().is_err());
        assert!(".".parse::<Factor>().is_err());
    }

    #[test]
    fn ceil_mul_is_exact() {
        assert_eq!(Factor::new(1, 32).unwrap().ceil_mul(127), 4);
        assert_eq!(Factor::new(1, 2).unwrap().ceil_mul(255), 128);
        // 0.1·10 must stay 1, no float round-up.
        assert_eq!("0.1".parse::<Factor>().unwrap().ceil_mul(10), 1);
    }

    #[test]
    fn pool_size_limits() {
        let rp = Factor::new(1, 32).unwrap();
        assert_eq!(Factor::pool_size(Factor::ZERO, rp, 127), 127);
        assert_eq!(Factor::pool_size(Factor::ONE, rp, 127), 4);
        assert_eq!(Factor::pool_size("0.85".parse().unwrap(), rp, 127), 23);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Factor::new(17, 20).unwrap().to_decimal_string(), "0.85");
        assert_eq!(Factor::new(1, 32).unwrap().to_decimal_string(), "0.03125");
        assert_eq!(Factor::new(1, 3).unwrap().to_decimal_string(), "1/3");
        assert_eq!(Factor::ONE.to_decimal_string(), "1");
    }

    proptest! {
        #[test]
        fn string_forms_reload(n in 0u64..10_000, d in 1u64..10_000) {
            let f = Factor::new(n, d).unwrap();
            prop_assert_eq!(f.to_string().parse::<Factor>().unwrap(), f);
            prop_assert_eq!(f.to_decimal_string().parse::<Factor>().unwrap(), f);
        }
    }
}
