/// In-place Walsh-Hadamard transform, `H_j = Σ_z x(z)·(−1)^⟨j,z⟩`.
pub fn walsh_hadamard(x: &mut [f64]) {
    let n = x.len();
    debug_assert!(n.is_power_of_two());
    let mut h = 1;
    while h < n {
        for block in x.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (u, v) = (*a, *b);
                *a = u + v;
                *b = u - v;
            }
        }
        h *= 2;
    }
}

/// Soft-decision ML decoding of the first-order RM code of length `llr.len()`.
///
/// Returns the codeword `⟨j*, z⟩ ⊕ s` with `j* = argmax |H_j|` (smallest `j`
/// on ties) and `s = 1` iff `H_{j*} < 0`, together with the metric `|H_{j*}|`.
pub fn fht_decode_order1(llr: &[f64]) -> (Vec<u8>, f64) {
    let mut spectrum = llr.to_vec();
    walsh_hadamard(&mut spectrum);
    let (mut best, mut metric) = (0usize, spectrum[0].abs());
    for (j, h) in spectrum.iter().enumerate().skip(1) {
        if h.abs() > metric {
            best = j;
            metric = h.abs();
        }
    }
    let flip = u8::from(spectrum[best] < 0.0);
    let bits = (0..llr.len()).map(|z| ((z & best).count_ones() & 1) as u8 ^ flip).collect();
    (bits, metric)
}
