use crate::rm::{insert_zero_bit, SubspaceId};

/// `ln(e^x + e^y)` without overflow.
#[inline]
fn log_add_exp(x: f64, y: f64) -> f64 {
    let (hi, lo) = if x >= y { (x, y) } else { (y, x) };
    hi + (lo - hi).exp().ln_1p()
}

/// Projection of an LLR pair onto its coset:
/// `ln(e^(a+b) + 1) − ln(e^a + e^b)`.
///
/// Identical to the boxplus `2·atanh(tanh(a/2)·tanh(b/2))`.
#[inline]
pub fn boxplus(a: f64, b: f64) -> f64 {
    log_add_exp(a + b, 0.0) - log_add_exp(a, b)
}

/// Projects `llr` onto the quotient space of `{0, z_i}`; output coordinate `q`
/// belongs to the coset whose canonical representative maps to `q`.
pub fn project(llr: &[f64], subspace: SubspaceId) -> Vec<f64> {
    let mut out = vec![0.0; llr.len() / 2];
    project_into(llr, subspace, &mut out);
    out
}

pub(crate) fn project_into(llr: &[f64], subspace: SubspaceId, out: &mut [f64]) {
    let pivot = subspace.pivot();
    let zi = subspace.get() as usize;
    for (q, o) in out.iter_mut().enumerate() {
        let z0 = insert_zero_bit(q as u32, pivot) as usize;
        *o = boxplus(llr[z0], llr[z0 ^ zi]);
    }
}
