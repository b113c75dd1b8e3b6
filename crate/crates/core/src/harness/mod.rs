//! Monte Carlo estimation of word and bit error rates.
//!
//! Trial `i` of a grid point draws its message, noise and decoder randomness
//! from `RngStream::new(master_seed, i)`, so results depend only on the job,
//! never on the worker count or scheduling. Trials run in fixed-size batches
//! and the stop rule is evaluated between batches.

mod persist;
pub mod stats;
mod study;

use std::ops::Add;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use persist::{persist, reload, sidecar_path};
pub use stats::{disjoint, wilson_interval, Z95};
pub use study::{subset_study, SubsetStudy, MAX_STUDY_LEN, MAX_STUDY_SUBSETS};

use crate::channel::{transmit_with, ChannelConfig, Lane, RngStream};
use crate::decoders::{decode_with_rng, DecoderConfig, Variant};
use crate::error::{Error, Result};
use crate::factor::Factor;
use crate::rm::{Codeword, RmCode};

/// Trials per batch; also the granularity of the stop rule.
pub const BATCH: u64 = 1000;

pub const DEFAULT_MIN_WORDS: u64 = 100_000;
pub const DEFAULT_MIN_WORD_ERRORS: u64 = 400;
pub const DEFAULT_MAX_WORDS: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChannelGrid {
    Awgn { ebn0_db: Vec<f64> },
    Bsc { crossover: Vec<f64> },
}

impl ChannelGrid {
    pub fn len(&self) -> usize {
        match self {
            ChannelGrid::Awgn { ebn0_db } => ebn0_db.len(),
            ChannelGrid::Bsc { crossover } => crossover.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn point(&self, i: usize, rate: f64, cap: f64) -> ChannelConfig {
        let mut cfg = match self {
            ChannelGrid::Awgn { ebn0_db } => ChannelConfig::awgn(ebn0_db[i], rate),
            ChannelGrid::Bsc { crossover } => ChannelConfig::bsc(crossover[i]),
        };
        cfg.llr_cap = cap;
        cfg
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimJob {
    pub m: u32,
    pub r: u32,
    pub decoder: DecoderConfig,
    pub channel: ChannelGrid,
    pub min_words: u64,
    pub min_word_errors: u64,
    /// Hard cap on words per grid point.
    pub max_words: u64,
    pub master_seed: u64,
    /// Transmit the all-zero codeword instead of random messages.
    #[serde(default)]
    pub all_zero: bool,
}

impl SimJob {
    pub fn new(m: u32, r: u32, decoder: DecoderConfig, channel: ChannelGrid) -> Self {
        SimJob {
            m,
            r,
            decoder,
            channel,
            min_words: DEFAULT_MIN_WORDS,
            min_word_errors: DEFAULT_MIN_WORD_ERRORS,
            max_words: DEFAULT_MAX_WORDS,
            master_seed: 0,
            all_zero: false,
        }
    }

    pub fn validate(&self) -> Result<RmCode> {
        let code = RmCode::new(self.m, self.r)?;
        if code.r() == 0 {
            return Err(Error::param("order-0 codes are not supported"));
        }
        self.decoder.validate()?;
        if self.channel.is_empty() {
            return Err(Error::param("channel grid is empty"));
        }
        if self.min_words == 0 || self.max_words < self.min_words {
            return Err(Error::param(format!(
                "need 0 < min_words ≤ max_words, got {} and {}",
                self.min_words, self.max_words
            )));
        }
        for i in 0..self.channel.len() {
            self.channel.point(i, code.rate(), self.decoder.llr_cap).validate()?;
        }
        Ok(code)
    }
}

/// Statistics for one channel grid point.
///
/// Field order is the CSV column order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialBatchResult {
    pub code: String,
    pub decoder: String,
    pub r_p: Factor,
    pub r_q: Factor,
    pub ebn0_db: Option<f64>,
    pub words: u64,
    pub word_errors: u64,
    pub wer: f64,
    pub wer_ci_lo: f64,
    pub wer_ci_hi: f64,
    /// Information-bit error rate.
    pub ber: f64,
    pub mean_fht: f64,
    /// Mean top-level iterations per word.
    pub mean_iters: f64,
    pub seed: u64,
    pub bit_errors: u64,
    /// Hit `max_words` before `min_word_errors` was reached.
    pub truncated: bool,
    pub crossover: Option<f64>,
}

impl TrialBatchResult {
    pub fn wer_ci95(&self) -> (f64, f64) {
        (self.wer_ci_lo, self.wer_ci_hi)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Tally {
    words: u64,
    word_errors: u64,
    bit_errors: u64,
    fht: u64,
    iterations: u64,
}

impl Add for Tally {
    type Output = Tally;

    fn add(self, o: Tally) -> Tally {
        Tally {
            words: self.words + o.words,
            word_errors: self.word_errors + o.word_errors,
            bit_errors: self.bit_errors + o.bit_errors,
            fht: self.fht + o.fht,
            iterations: self.iterations + o.iterations,
        }
    }
}

fn run_trial(
    code: &RmCode,
    decoder: &DecoderConfig,
    channel: &ChannelConfig,
    stream: RngStream,
    all_zero: bool,
) -> Result<Tally> {
    let message: Vec<u8> = if all_zero {
        vec![0; code.k()]
    } else {
        let mut rng = stream.rng(Lane::Message);
        (0..code.k()).map(|_| rng.random_range(0..2u8)).collect()
    };
    let word = if all_zero { Codeword::zeros(code.n()) } else { code.encode(&message)? };
    let llr = transmit_with(&word, channel, &mut stream.rng(Lane::Channel))?;
    let out = decode_with_rng(&llr, code, decoder, &mut stream.rng(Lane::Decoder))?;
    let bit_errors = out.message.iter().zip(&message).filter(|(a, b)| a != b).count() as u64;
    Ok(Tally {
        words: 1,
        word_errors: u64::from(out.codeword != word),
        bit_errors,
        fht: out.fht_count,
        iterations: u64::from(out.top_iterations),
    })
}

fn run_point(job: &SimJob, code: &RmCode, channel: &ChannelConfig) -> Result<Tally> {
    let mut total = Tally::default();
    loop {
        let done = total.words >= job.min_words && total.word_errors >= job.min_word_errors;
        if done || total.words >= job.max_words {
            return Ok(total);
        }
        let limit = if total.words < job.min_words { job.min_words } else { job.max_words };
        let end = (total.words + BATCH).min(limit);
        let batch = (total.words..end)
            .into_par_iter()
            .map(|i| run_trial(code, &job.decoder, channel, RngStream::new(job.master_seed, i), job.all_zero))
            .try_reduce(Tally::default, |a, b| Ok(a + b))?;
        total = total + batch;
    }
}

fn summarize(job: &SimJob, code: &RmCode, channel: &ChannelConfig, t: Tally) -> TrialBatchResult {
    let words = t.words.max(1) as f64;
    let (lo, hi) = wilson_interval(t.word_errors, t.words, Z95);
    let (ebn0_db, crossover) = match channel.kind {
        crate::channel::ChannelKind::AwgnBpsk { ebn0_db } => (Some(ebn0_db), None),
        crate::channel::ChannelKind::Bsc { crossover } => (None, Some(crossover)),
    };
    TrialBatchResult {
        code: format!("RM({},{})", code.m(), code.r()),
        decoder: job.decoder.variant.name().to_string(),
        r_p: job.decoder.effective_r_p(),
        r_q: job.decoder.r_q,
        ebn0_db,
        words: t.words,
        word_errors: t.word_errors,
        wer: t.word_errors as f64 / words,
        wer_ci_lo: lo,
        wer_ci_hi: hi,
        ber: t.bit_errors as f64 / (words * code.k() as f64),
        mean_fht: t.fht as f64 / words,
        mean_iters: t.iterations as f64 / words,
        seed: job.master_seed,
        bit_errors: t.bit_errors,
        truncated: t.word_errors < job.min_word_errors,
        crossover,
    }
}

fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Resource(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

/// Simulates every grid point of `job` on `workers` threads.
pub fn run_job(job: &SimJob, workers: usize) -> Result<Vec<TrialBatchResult>> {
    let code = job.validate()?;
    with_pool(workers, || {
        (0..job.channel.len())
            .map(|i| {
                let channel = job.channel.point(i, code.rate(), job.decoder.llr_cap);
                run_point(job, &code, &channel).map(|t| summarize(job, &code, &channel, t))
            })
            .collect()
    })?
}

/// Runs an SDSS job once per `r_q`, reusing the same per-trial streams so
/// every value sees identical messages and noise.
pub fn sweep_rq(job: &SimJob, rq_grid: &[Factor], workers: usize) -> Result<Vec<(Factor, TrialBatchResult)>> {
    if rq_grid.is_empty() {
        return Err(Error::param("r_q grid is empty"));
    }
    if job.channel.len() != 1 {
        return Err(Error::param("an r_q sweep needs exactly one channel point"));
    }
    if job.decoder.variant != Variant::Sdss {
        return Err(Error::param("an r_q sweep needs the SDSS decoder"));
    }
    rq_grid
        .iter()
        .map(|&r_q| {
            let mut point = job.clone();
            point.decoder.r_q = r_q;
            let result = run_job(&point, workers)?.remove(0);
            Ok((r_q, result))
        })
        .collect()
}

/// `r_q` with the lowest WER; the smaller `r_q` wins ties.
pub fn argmin_wer(sweep: &[(Factor, TrialBatchResult)]) -> Option<&(Factor, TrialBatchResult)> {
    sweep.iter().min_by(|a, b| a.1.wer.total_cmp(&b.1.wer).then(a.0.cmp(&b.0)))
}

/// `start, start+step, …` up to and including `end`, exact.
pub fn factor_range(start: Factor, step: Factor, end: Factor) -> Result<Vec<Factor>> {
    if step.is_zero() || start > end {
        return Err(Error::param(format!("bad range {start}:{step}:{end}")));
    }
    let mut out = Vec::new();
    let mut x = start;
    while x <= end {
        out.push(x);
        x = x.checked_add(step).ok_or_else(|| Error::param("range overflow"))?;
    }
    Ok(out)
}
