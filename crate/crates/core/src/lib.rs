//! Reed-Muller codes and their recursive projection-aggregation decoders.
//!
//! The crate is organised bottom-up:
//!
//! * [`rm`] holds the F₂^m index algebra, one-dimensional subspaces, cosets
//!   and the code itself (generator, encoder, small-instance oracles).
//! * [`channel`] maps codewords to LLR vectors over BPSK-AWGN or a BSC and
//!   provides the counter-based random streams every other layer uses.
//! * [`decoders`] contains projection, FHT decoding of first-order codes,
//!   aggregation, subspace selection (random and semi-deterministic) and the
//!   recursive RPA / SRPA / SDSS decoders with Reed's majority-logic
//!   post-decoder.
//! * [`complexity`] gives closed-form FHT-count bounds and the complexity
//!   reduction gain.
//! * [`harness`] runs Monte Carlo WER/BER estimation, r_q sweeps and the
//!   exhaustive fixed-subset study, and persists results as CSV + JSON.

pub mod channel;
pub mod complexity;
pub mod decoders;
mod error;
mod factor;
pub mod harness;
pub mod rm;

pub use channel::{ChannelConfig, ChannelKind, LlrVector, RngStream};
pub use complexity::{complexity_gain, count_fht_bound, FhtBudget};
pub use decoders::{decode, DecodeOutcome, DecoderConfig, Schedule, SubsetRedraw, Variant};
pub use error::{Error, Result};
pub use factor::Factor;
pub use rm::{Codeword, Coset, RmCode, SubspaceId};
