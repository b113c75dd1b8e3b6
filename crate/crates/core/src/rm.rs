//! F₂^m index algebra and binary Reed-Muller codes.
//!
//! Coordinates are indexed by `z ∈ F₂^m` stored as an integer with `v₁` in the
//! least-significant bit, so coordinate `z` of a codeword is `f(z)` for the
//! Boolean function `f` it evaluates.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `m` accepted by [`RmCode::new`].
pub const MAX_M: u32 = 20;

/// Largest dimension for which [`RmCode::codebook`] will enumerate.
pub const MAX_CODEBOOK_K: usize = 26;

/// A nonzero `z_i ∈ F₂^m` naming the one-dimensional subspace `{0, z_i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct SubspaceId(u32);

impl SubspaceId {
    pub fn new(z: u32) -> Result<Self> {
        if z == 0 {
            Err(Error::param("subspace generator must be nonzero"))
        } else {
            Ok(SubspaceId(z))
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// Position of the lowest set bit; the coordinate deleted by the quotient map.
    #[inline]
    pub fn pivot(self) -> u32 {
        self.0.trailing_zeros()
    }
}

impl TryFrom<u32> for SubspaceId {
    type Error = Error;

    fn try_from(z: u32) -> Result<Self> {
        SubspaceId::new(z)
    }
}

impl From<SubspaceId> for u32 {
    fn from(s: SubspaceId) -> u32 {
        s.0
    }
}

impl fmt::Display for SubspaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A coset `{rep, rep ⊕ z_i}` of a one-dimensional subspace.
///
/// `rep` is canonical: its bit at the pivot position of `z_i` is clear.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Coset {
    pub rep: u32,
    pub subspace: SubspaceId,
}

impl Coset {
    pub fn of(z: u32, subspace: SubspaceId) -> Self {
        let rep = if z >> subspace.pivot() & 1 == 1 { z ^ subspace.get() } else { z };
        Coset { rep, subspace }
    }

    pub fn elements(&self) -> [u32; 2] {
        [self.rep, self.rep ^ self.subspace.get()]
    }

    /// Index of this coset in `F₂^(m−1)`.
    pub fn quotient_index(&self) -> u32 {
        delete_bit(self.rep, self.subspace.pivot())
    }
}

/// Removes bit `pos` from `z`, shifting the higher bits down by one.
#[inline]
pub fn delete_bit(z: u32, pos: u32) -> u32 {
    let low = z & ((1 << pos) - 1);
    let high = (z >> (pos + 1)) << pos;
    high | low
}

/// Inverse of [`delete_bit`] with the inserted bit clear.
#[inline]
pub fn insert_zero_bit(q: u32, pos: u32) -> u32 {
    let low = q & ((1 << pos) - 1);
    let high = (q >> pos) << (pos + 1);
    high | low
}

/// All `n − 1` one-dimensional subspaces of `F₂^m`, ascending.
pub fn enumerate_subspaces(m: u32) -> Vec<SubspaceId> {
    (1..1u32 << m).map(SubspaceId).collect()
}

/// The `n/2` cosets of `{0, z_i}` in `F₂^m`, ordered by representative.
pub fn cosets_of(subspace: SubspaceId, m: u32) -> Result<Vec<Coset>> {
    if m > 31 || subspace.get() >= 1 << m {
        return Err(Error::param(format!("subspace {subspace} not in F2^{m}")));
    }
    let pivot = subspace.pivot();
    Ok((0..1u32 << (m - 1))
        .map(|q| Coset { rep: insert_zero_bit(q, pivot), subspace })
        .collect())
}

/// Linear bijection `E/B → F₂^(m−1)` for a canonical coset.
pub fn quotient_map(coset: &Coset) -> u32 {
    coset.quotient_index()
}

/// A binary vector of length `n`, one byte (0 or 1) per coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Codeword {
    pub bits: Vec<u8>,
}

impl Codeword {
    pub fn zeros(n: usize) -> Self {
        Codeword { bits: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b != 0).count()
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b != 0 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// The binary Reed-Muller code RM(m, r).
///
/// Generator rows are the evaluation vectors of all monomials of degree at
/// most `r`, ordered by degree and then lexicographically by variable index
/// (`1, v₁, …, v_m, v₁v₂, v₁v₃, …`). Message bit `i` is the coefficient of
/// `monomials()[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RmCode {
    m: u32,
    r: u32,
    n: usize,
    k: usize,
    monomials: Vec<u32>,
    generator: Vec<Vec<u8>>,
}

impl RmCode {
    pub fn new(m: u32, r: u32) -> Result<Self> {
        if m == 0 || m > MAX_M {
            return Err(Error::param(format!("m must be in 1..={MAX_M}, got {m}")));
        }
        if r > m {
            return Err(Error::param(format!("order r = {r} exceeds m = {m}")));
        }
        let n = 1usize << m;
        let monomials: Vec<u32> = (0..=r).flat_map(|d| monomials_of_degree(m, d)).collect();
        let generator = monomials
            .iter()
            .map(|&mask| (0..n as u32).map(|z| u8::from(z & mask == mask)).collect())
            .collect();
        Ok(RmCode { m, r, n, k: monomials.len(), monomials, generator })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    /// Variable masks of the generator rows, in row order.
    pub fn monomials(&self) -> &[u32] {
        &self.monomials
    }

    pub fn generator(&self) -> &[Vec<u8>] {
        &self.generator
    }

    pub fn encode(&self, message: &[u8]) -> Result<Codeword> {
        Error::check_len(self.k, message.len())?;
        let mut bits = vec![0u8; self.n];
        for (row, _) in self.generator.iter().zip(message).filter(|(_, &b)| b != 0) {
            for (c, &g) in bits.iter_mut().zip(row) {
                *c ^= g;
            }
        }
        Ok(Codeword { bits })
    }

    /// Every codeword, indexed by message integer (bit `i` = message bit `i`).
    pub fn codebook(&self) -> Result<Vec<Codeword>> {
        if self.k > MAX_CODEBOOK_K {
            return Err(Error::Resource(format!(
                "codebook of 2^{} words exceeds the 2^{MAX_CODEBOOK_K} limit",
                self.k
            )));
        }
        let mut words = Vec::with_capacity(1 << self.k);
        let mut message = vec![0u8; self.k];
        for idx in 0u64..1 << self.k {
            for (i, b) in message.iter_mut().enumerate() {
                *b = (idx >> i & 1) as u8;
            }
            words.push(self.encode(&message)?);
        }
        Ok(words)
    }

    /// Minimum nonzero weight by exhaustive enumeration.
    pub fn min_distance(&self) -> Result<usize> {
        Ok(self
            .codebook()?
            .iter()
            .map(Codeword::weight)
            .filter(|&w| w > 0)
            .min()
            .unwrap_or(0))
    }

    pub fn contains(&self, word: &Codeword) -> bool {
        word.len() == self.n
            && crate::decoders::reed::reed_decode(word, self)
                .map(|(_, c)| c == *word)
                .unwrap_or(false)
    }
}

/// Monomials of degree `d` in `m` variables as bit masks, lexicographic in the
/// sorted variable indices.
fn monomials_of_degree(m: u32, d: u32) -> Vec<u32> {
    fn rec(start: u32, m: u32, left: u32, mask: u32, out: &mut Vec<u32>) {
        if left == 0 {
            out.push(mask);
            return;
        }
        for v in start..m {
            rec(v + 1, m, left - 1, mask | 1 << v, out);
        }
    }
    let mut out = Vec::new();
    rec(0, m, d, 0, &mut out);
    out
}

/// Binary projection of a hard word onto `E/B`: `c(z) ⊕ c(z ⊕ z_i)` per coset,
/// indexed by the quotient map.
pub fn binary_projection(word: &Codeword, subspace: SubspaceId) -> Codeword {
    let half = word.len() / 2;
    let pivot = subspace.pivot();
    let bits = (0..half as u32)
        .map(|q| {
            let z = insert_zero_bit(q, pivot) as usize;
            word.bits[z] ^ word.bits[z ^ subspace.get() as usize]
        })
        .collect();
    Codeword { bits }
}
