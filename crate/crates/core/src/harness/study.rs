use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::with_pool;
use crate::channel::{ChannelConfig, ChannelKind, Lane, LlrVector, RngStream};
use crate::decoders::{decode_with_rng, DecoderConfig, Schedule};
use crate::error::{Error, Result};
use crate::factor::Factor;
use crate::rm::{enumerate_subspaces, RmCode, SubspaceId};

/// Longest code the exhaustive study accepts.
pub const MAX_STUDY_LEN: usize = 16;
/// Most fixed subsets the study will evaluate.
pub const MAX_STUDY_SUBSETS: u64 = 1000;

/// Word-error counts of every fixed-subset SRPA decoder over all received
/// hard words, with the all-zero codeword transmitted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubsetStudy {
    pub m: u32,
    pub r: u32,
    pub p: usize,
    pub llr_magnitude: f64,
    /// Received words decoded per subset (`2^n`).
    pub inputs: u64,
    pub subsets: Vec<(Vec<SubspaceId>, u64)>,
    /// Word-error count → number of subsets with that count.
    pub histogram: BTreeMap<u64, u64>,
}

impl SubsetStudy {
    pub fn mean_errors(&self) -> f64 {
        self.subsets.iter().map(|(_, e)| *e as f64).sum::<f64>() / self.subsets.len() as f64
    }

    /// Largest `|count − mean| / mean` over all subsets.
    pub fn max_relative_deviation(&self) -> f64 {
        let mean = self.mean_errors();
        if mean == 0.0 {
            return 0.0;
        }
        self.subsets.iter().map(|(_, e)| (*e as f64 - mean).abs() / mean).fold(0.0, f64::max)
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All `p`-subsets of `items` in lexicographic order.
fn combinations<T: Copy>(items: &[T], p: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..p).collect();
    if p == 0 || p > items.len() {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let Some(i) = (0..p).rev().find(|&i| idx[i] != i + items.len() - p) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..p {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Decodes every `y ∈ F₂^n`, mapped to BSC LLRs, with each of the
/// `C(n−1, p)` fixed-subset SRPA decoders and counts word errors against the
/// all-zero codeword.
pub fn subset_study(m: u32, r: u32, p: usize, channel: &ChannelConfig, workers: usize) -> Result<SubsetStudy> {
    let code = RmCode::new(m, r)?;
    if code.r() < 2 {
        return Err(Error::param("the subset study needs order r ≥ 2"));
    }
    let ChannelKind::Bsc { crossover } = channel.kind else {
        return Err(Error::param("the subset study runs on a BSC"));
    };
    channel.validate()?;
    let n = code.n();
    let total = n as u64 - 1;
    if n > MAX_STUDY_LEN || p == 0 || p as u64 > total || binomial(total, p as u64) > MAX_STUDY_SUBSETS {
        return Err(Error::Resource(format!(
            "study of RM({m},{r}) with p = {p} exceeds n ≤ {MAX_STUDY_LEN}, C(n−1,p) ≤ {MAX_STUDY_SUBSETS}"
        )));
    }
    let magnitude = ChannelConfig::bsc_llr_magnitude(crossover).min(channel.llr_cap);
    let subsets = combinations(&enumerate_subspaces(m), p);
    let mut base = DecoderConfig::srpa(Factor::new(p as u64, total)?);
    base.schedule = Schedule::Full;
    base.llr_cap = channel.llr_cap;

    let counts: Result<Vec<u64>> = with_pool(workers, || {
        subsets
            .par_iter()
            .enumerate()
            .map(|(i, subset)| {
                let mut cfg = base.clone();
                cfg.top_subset = Some(subset.clone());
                let mut rng = RngStream::new(0, i as u64).rng(Lane::Decoder);
                let mut llr = LlrVector { values: vec![magnitude; n] };
                let mut errors = 0u64;
                for y in 0u64..1 << n {
                    for (z, l) in llr.values.iter_mut().enumerate() {
                        *l = if y >> z & 1 == 1 { -magnitude } else { magnitude };
                    }
                    let out = decode_with_rng(&llr, &code, &cfg, &mut rng)?;
                    errors += u64::from(out.codeword.bits.iter().any(|&b| b != 0));
                }
                Ok(errors)
            })
            .collect()
    })?;
    let counts = counts?;

    let mut histogram = BTreeMap::new();
    for &c in &counts {
        *histogram.entry(c).or_insert(0) += 1;
    }
    Ok(SubsetStudy {
        m,
        r,
        p,
        llr_magnitude: magnitude,
        inputs: 1 << n,
        subsets: subsets.into_iter().zip(counts).collect(),
        histogram,
    })
}
