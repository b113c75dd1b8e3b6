//! Choosing which one-dimensional subspaces to project onto.

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::Factor;
use crate::rm::{enumerate_subspaces, insert_zero_bit, SubspaceId};

/// Per-coset reliability mismatch used to rank subspaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMetric {
    /// `||L(z⁰)| − |L(z¹)||`
    Raw,
    /// `|exp(−|L(z⁰)|) − exp(−|L(z¹)|)|`, each term in `[0, 1)`.
    Weighted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetSelection {
    /// Chosen subspaces, ascending.
    pub chosen: Vec<SubspaceId>,
    /// Size of the deterministic shortlist the subset was drawn from.
    pub pool_size: usize,
}

/// Summed per-coset distances for every subspace `1..n`, ascending by id.
pub fn subspace_distances(llr: &[f64], metric: DistanceMetric) -> Vec<f64> {
    let n = llr.len();
    let weights: Vec<f64> = match metric {
        DistanceMetric::Raw => llr.iter().map(|l| l.abs()).collect(),
        DistanceMetric::Weighted => llr.iter().map(|l| (-l.abs()).exp()).collect(),
    };
    (1..n as u32)
        .map(|zi| {
            let pivot = zi.trailing_zeros();
            (0..n as u32 / 2)
                .map(|q| {
                    let z0 = insert_zero_bit(q, pivot) as usize;
                    (weights[z0] - weights[z0 ^ zi as usize]).abs()
                })
                .sum()
        })
        .collect()
}

/// Uniform `p`-subset of `pool` without replacement.
pub fn select_random<R: Rng + ?Sized>(
    pool: &[SubspaceId],
    p: usize,
    rng: &mut R,
) -> Result<SubsetSelection> {
    if p == 0 || p > pool.len() {
        return Err(Error::param(format!("cannot pick {p} of {} subspaces", pool.len())));
    }
    let mut chosen: Vec<SubspaceId> = if p == pool.len() {
        pool.to_vec()
    } else {
        index::sample(rng, pool.len(), p).into_iter().map(|i| pool[i]).collect()
    };
    chosen.sort_unstable();
    Ok(SubsetSelection { chosen, pool_size: pool.len() })
}

/// Semi-deterministic selection: shortlist the `q` subspaces with the
/// smallest weighted distance, then draw `p` of them uniformly.
///
/// `p = ⌈r_p(n−1)⌉` and `q = ⌈(1 − r_q + r_q·r_p)(n−1)⌉`. With `q = n−1` no
/// ranking is needed and the draw is exactly [`select_random`] over all
/// subspaces; with `q = p` the result is the `p` smallest distances.
pub fn sdss_select<R: Rng + ?Sized>(
    llr: &[f64],
    m: u32,
    r_p: Factor,
    r_q: Factor,
    rng: &mut R,
) -> Result<SubsetSelection> {
    Error::check_len(1 << m, llr.len())?;
    if r_p.is_zero() || r_p > Factor::ONE || r_q > Factor::ONE {
        return Err(Error::param(format!("need 0 < r_p ≤ 1 and 0 ≤ r_q ≤ 1, got {r_p}, {r_q}")));
    }
    let total = (1u64 << m) - 1;
    let p = r_p.ceil_mul(total) as usize;
    let q = Factor::pool_size(r_q, r_p, total) as usize;
    debug_assert!(p <= q && q <= total as usize);
    if q == total as usize {
        return select_random(&enumerate_subspaces(m), p, rng);
    }
    let pool = shortlist(&subspace_distances(llr, DistanceMetric::Weighted), q);
    select_random(&pool, p, rng)
}

/// The `q` subspaces with the smallest distances, ties broken by id.
pub fn shortlist(distances: &[f64], q: usize) -> Vec<SubspaceId> {
    let mut order: Vec<u32> = (1..=distances.len() as u32).collect();
    order.sort_by(|&a, &b| {
        distances[a as usize - 1].total_cmp(&distances[b as usize - 1]).then(a.cmp(&b))
    });
    order.truncate(q);
    order.into_iter().map(|z| SubspaceId::new(z).expect("ids start at 1")).collect()
}
