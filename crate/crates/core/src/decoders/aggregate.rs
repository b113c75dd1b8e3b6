use crate::error::{Error, Result};
use crate::rm::{insert_zero_bit, SubspaceId};

/// Aggregates decoded projections back onto the full-length LLR vector:
/// `L̂(z) = (1/p) Σ_j (−1)^(ŷ_j([z + B_j])) · L(z ⊕ z_j)`.
///
/// Each reconstruction is indexed by the quotient map of its subspace.
pub fn aggregate(llr: &[f64], selections: &[(SubspaceId, Vec<u8>)]) -> Result<Vec<f64>> {
    if selections.is_empty() {
        return Err(Error::param("aggregation needs at least one reconstruction"));
    }
    let mut acc = vec![0.0; llr.len()];
    for (subspace, rec) in selections {
        Error::check_len(llr.len() / 2, rec.len())?;
        accumulate(llr, *subspace, rec, &mut acc);
    }
    let scale = 1.0 / selections.len() as f64;
    acc.iter_mut().for_each(|v| *v *= scale);
    Ok(acc)
}

/// Adds one subspace's sign-corrected neighbour terms into `acc`.
#[inline]
pub(crate) fn accumulate(llr: &[f64], subspace: SubspaceId, rec: &[u8], acc: &mut [f64]) {
    let pivot = subspace.pivot();
    let zi = subspace.get() as usize;
    for (q, &bit) in rec.iter().enumerate() {
        let z0 = insert_zero_bit(q as u32, pivot) as usize;
        let z1 = z0 ^ zi;
        if bit == 0 {
            acc[z0] += llr[z1];
            acc[z1] += llr[z0];
        } else {
            acc[z0] -= llr[z1];
            acc[z1] -= llr[z0];
        }
    }
}

/// `|new(z) − old(z)| ≤ θ·|old(z)|` for every coordinate.
pub fn is_converged(old: &[f64], new: &[f64], theta: f64) -> bool {
    old.len() == new.len() && old.iter().zip(new).all(|(&o, &n)| (n - o).abs() <= theta * o.abs())
}
