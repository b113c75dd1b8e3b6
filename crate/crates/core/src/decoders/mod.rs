//! Recursive projection-aggregation decoding.
//!
//! A level decodes RM(m, r) with `r ≥ 2` by repeating three steps: project the
//! LLRs onto a set of one-dimensional subspaces, decode every projection (a
//! half-length RM(m−1, r−1) word) recursively, and aggregate the decoded
//! projections back into a new LLR estimate. First-order projections are
//! decoded with the fast Hadamard transform. The top-level estimate is sliced
//! and projected onto the code with Reed's majority-logic decoder.
//!
//! The variants differ only in which subspaces a level uses:
//!
//! * RPA: all `n − 1`.
//! * SRPA: a uniform random `p = ⌈r_p(n−1)⌉`-subset.
//! * SDSS: `p` drawn uniformly from the `q` subspaces whose cosets pair the
//!   most similarly reliable LLRs, recomputed from the current LLRs every
//!   iteration.

pub mod aggregate;
pub mod fht;
pub mod projection;
pub mod reed;
pub mod selection;

use rand::Rng;
use serde::{Deserialize, Serialize};

pub use aggregate::{aggregate, is_converged};
pub use fht::fht_decode_order1;
pub use projection::{boxplus, project};
pub use reed::reed_decode;
pub use selection::{
    sdss_select, select_random, subspace_distances, DistanceMetric, SubsetSelection,
};

use crate::channel::{Lane, LlrVector, RngStream, DEFAULT_LLR_CAP};
use crate::error::{Error, Result};
use crate::factor::Factor;
use crate::rm::{enumerate_subspaces, Codeword, RmCode, SubspaceId};

pub const DEFAULT_THETA: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Rpa,
    Srpa,
    Sdss,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Rpa => "rpa",
            Variant::Srpa => "srpa",
            Variant::Sdss => "sdss",
        }
    }
}

/// How many iterations the recursion levels run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Schedule {
    /// Every level iterates up to `⌈m'/2⌉` times with early stopping.
    Full,
    /// Only the top level iterates; deeper levels run a single pass.
    TopOnly,
}

/// When SRPA draws its random subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetRedraw {
    /// A fresh subset every iteration of every level.
    PerIteration,
    /// One subset per level invocation, reused across its iterations.
    PerCodeword,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecoderConfig {
    pub variant: Variant,
    /// Pruning factor; forced to 1 for RPA.
    pub r_p: Factor,
    /// DSS factor, only used by SDSS.
    pub r_q: Factor,
    /// Convergence threshold θ.
    pub theta: f64,
    pub schedule: Schedule,
    pub redraw: SubsetRedraw,
    pub llr_cap: f64,
    /// Fixed top-level subspace set, bypassing selection (SRPA only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top_subset: Option<Vec<SubspaceId>>,
}

impl DecoderConfig {
    pub fn rpa() -> Self {
        DecoderConfig {
            variant: Variant::Rpa,
            r_p: Factor::ONE,
            r_q: Factor::ZERO,
            theta: DEFAULT_THETA,
            schedule: Schedule::Full,
            redraw: SubsetRedraw::PerIteration,
            llr_cap: DEFAULT_LLR_CAP,
            top_subset: None,
        }
    }

    pub fn srpa(r_p: Factor) -> Self {
        DecoderConfig { variant: Variant::Srpa, r_p, ..Self::rpa() }
    }

    pub fn sdss(r_p: Factor, r_q: Factor) -> Self {
        DecoderConfig { variant: Variant::Sdss, r_p, r_q, schedule: Schedule::TopOnly, ..Self::rpa() }
    }

    /// Defaults for `variant`: RPA and SRPA iterate on every level, SDSS only on
    /// the top level.
    pub fn for_variant(variant: Variant, r_p: Factor, r_q: Factor) -> Self {
        match variant {
            Variant::Rpa => Self::rpa(),
            Variant::Srpa => Self::srpa(r_p),
            Variant::Sdss => Self::sdss(r_p, r_q),
        }
    }

    /// Pruning factor actually in effect.
    pub fn effective_r_p(&self) -> Factor {
        match self.variant {
            Variant::Rpa => Factor::ONE,
            _ => self.r_p,
        }
    }

    /// Subspaces used per iteration at a level of length `2^m`.
    pub fn projections_at(&self, m: u32) -> u64 {
        self.effective_r_p().ceil_mul((1u64 << m) - 1)
    }

    pub fn validate(&self) -> Result<()> {
        let r_p = self.effective_r_p();
        if r_p.is_zero() || r_p > Factor::ONE {
            return Err(Error::param(format!("pruning factor {r_p} not in (0, 1]")));
        }
        if self.r_q > Factor::ONE {
            return Err(Error::param(format!("DSS factor {} not in [0, 1]", self.r_q)));
        }
        if self.theta.is_nan() || self.theta < 0.0 {
            return Err(Error::param(format!("theta {} must be non-negative", self.theta)));
        }
        if !(self.llr_cap > 0.0 && self.llr_cap.is_finite()) {
            return Err(Error::param(format!("LLR cap {} must be positive", self.llr_cap)));
        }
        if self.top_subset.is_some() && self.variant != Variant::Srpa {
            return Err(Error::param("a fixed top-level subset requires the SRPA variant"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecodeOutcome {
    pub codeword: Codeword,
    /// Coefficients of the decoded codeword in generator row order.
    pub message: Vec<u8>,
    /// Top-level LLR estimate before slicing.
    pub final_llr: LlrVector,
    pub top_iterations: u32,
    /// Iterations summed over all invocations at each recursion depth.
    pub level_iterations: Vec<u64>,
    pub fht_count: u64,
    /// Whether the top level stopped on the θ criterion.
    pub converged: bool,
}

/// Decodes `llr` using randomness from the decoder lane of `stream`.
pub fn decode(
    llr: &LlrVector,
    code: &RmCode,
    cfg: &DecoderConfig,
    stream: &RngStream,
) -> Result<DecodeOutcome> {
    decode_with_rng(llr, code, cfg, &mut stream.rng(Lane::Decoder))
}

pub fn decode_with_rng<R: Rng + ?Sized>(
    llr: &LlrVector,
    code: &RmCode,
    cfg: &DecoderConfig,
    rng: &mut R,
) -> Result<DecodeOutcome> {
    Error::check_len(code.n(), llr.len())?;
    if code.r() == 0 {
        return Err(Error::param("order-0 (repetition) codes are not supported"));
    }
    cfg.validate()?;
    if let Some(subset) = &cfg.top_subset {
        check_subset(subset, code.m())?;
    }
    let cap = cfg.llr_cap;
    let input: Vec<f64> = llr.values.iter().map(|l| l.clamp(-cap, cap)).collect();

    let mut run = Run {
        cfg,
        rng,
        fht_count: 0,
        level_iterations: vec![0; code.r().saturating_sub(1).max(1) as usize],
        top_iterations: 0,
        top_converged: false,
    };
    let final_llr = if code.r() == 1 {
        let (bits, _) = fht::fht_decode_order1(&input);
        run.fht_count += 1;
        run.top_iterations = 1;
        run.level_iterations[0] = 1;
        run.top_converged = true;
        bits.iter().zip(&input).map(|(&b, l)| if b == 0 { l.abs() } else { -l.abs() }).collect()
    } else {
        run.level(input, code.m(), code.r(), 0)
    };
    let final_llr = LlrVector { values: final_llr };
    let (message, codeword) = reed::reed_decode(&final_llr.hard_decision(), code)?;
    Ok(DecodeOutcome {
        codeword,
        message,
        final_llr,
        top_iterations: run.top_iterations,
        level_iterations: run.level_iterations,
        fht_count: run.fht_count,
        converged: run.top_converged,
    })
}

fn check_subset(subset: &[SubspaceId], m: u32) -> Result<()> {
    if subset.is_empty() {
        return Err(Error::param("fixed subset is empty"));
    }
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != subset.len() || sorted.iter().any(|s| s.get() >= 1 << m) {
        return Err(Error::param("fixed subset must hold distinct subspaces of F2^m"));
    }
    Ok(())
}

struct Run<'a, R: ?Sized> {
    cfg: &'a DecoderConfig,
    rng: &'a mut R,
    fht_count: u64,
    level_iterations: Vec<u64>,
    top_iterations: u32,
    top_converged: bool,
}

impl<R: Rng + ?Sized> Run<'_, R> {
    /// Iterates projection-decoding-aggregation on RM(m, r), `r ≥ 2`, and
    /// returns the final LLR estimate.
    fn level(&mut self, mut current: Vec<f64>, m: u32, r: u32, depth: usize) -> Vec<f64> {
        let top = depth == 0;
        let max_iters = if top || self.cfg.schedule == Schedule::Full { m.div_ceil(2) } else { 1 };
        let n = current.len();
        let mut fixed: Option<Vec<SubspaceId>> = None;
        let mut projected = vec![0.0; n / 2];
        let mut next = vec![0.0; n];
        let mut converged = false;
        let mut iterations = 0;

        while iterations < max_iters {
            iterations += 1;
            let subset = self.select(&current, m, top, &mut fixed);
            next.iter_mut().for_each(|v| *v = 0.0);
            for &sub in &subset {
                projection::project_into(&current, sub, &mut projected);
                let rec = self.reconstruct(&projected, m - 1, r - 1, depth + 1);
                aggregate::accumulate(&current, sub, &rec, &mut next);
            }
            let scale = 1.0 / subset.len() as f64;
            next.iter_mut().for_each(|v| *v *= scale);
            converged = aggregate::is_converged(&current, &next, self.cfg.theta);
            std::mem::swap(&mut current, &mut next);
            if converged {
                break;
            }
        }

        self.level_iterations[depth] += u64::from(iterations);
        if top {
            self.top_iterations = iterations;
            self.top_converged = converged;
        }
        current
    }

    /// Hard reconstruction of a projection of RM(m, r).
    fn reconstruct(&mut self, llr: &[f64], m: u32, r: u32, depth: usize) -> Vec<u8> {
        if r == 1 {
            self.fht_count += 1;
            fht::fht_decode_order1(llr).0
        } else {
            self.level(llr.to_vec(), m, r, depth)
                .iter()
                .map(|&l| u8::from(l < 0.0))
                .collect()
        }
    }

    fn select(
        &mut self,
        llr: &[f64],
        m: u32,
        top: bool,
        fixed: &mut Option<Vec<SubspaceId>>,
    ) -> Vec<SubspaceId> {
        let cfg = self.cfg;
        if top {
            if let Some(subset) = &cfg.top_subset {
                return subset.clone();
            }
        }
        if let Some(subset) = fixed {
            return subset.clone();
        }
        let p = cfg.projections_at(m) as usize;
        // Inputs were validated, so selection cannot fail.
        match cfg.variant {
            Variant::Rpa => enumerate_subspaces(m),
            Variant::Srpa => {
                let chosen = select_random(&enumerate_subspaces(m), p, self.rng)
                    .expect("p within range")
                    .chosen;
                if cfg.redraw == SubsetRedraw::PerCodeword {
                    *fixed = Some(chosen.clone());
                }
                chosen
            }
            Variant::Sdss => {
                sdss_select(llr, m, cfg.r_p, cfg.r_q, self.rng).expect("validated factors").chosen
            }
        }
    }
}
