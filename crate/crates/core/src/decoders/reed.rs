//! Reed's majority-logic decoder.

use crate::error::{Error, Result};
use crate::rm::{Codeword, RmCode};

/// Hard-decision majority-logic decoding onto RM(m, r).
///
/// Monomial coefficients are recovered from degree `r` down to 0. A degree-`d`
/// coefficient is the majority vote of its `2^(m−d)` characteristic sums (the
/// XOR of the received word over each coset of the subcube spanned by the
/// monomial's variables); ties vote 0. Each decoded layer is subtracted before
/// the next degree. Corrects every pattern of fewer than `2^(m−r−1)` errors.
///
/// Returns the message (generator row order) and its codeword.
pub fn reed_decode(word: &Codeword, code: &RmCode) -> Result<(Vec<u8>, Codeword)> {
    Error::check_len(code.n(), word.len())?;
    let n = code.n() as u32;
    let mut y = word.bits.clone();
    let mut message = vec![0u8; code.k()];
    let monomials = code.monomials();
    for degree in (0..=code.r()).rev() {
        let layer: Vec<usize> =
            (0..monomials.len()).filter(|&i| monomials[i].count_ones() == degree).collect();
        for &i in &layer {
            let mask = monomials[i];
            let mut ones = 0u32;
            for base in (0..n).filter(|b| b & mask == 0) {
                let mut parity = 0u8;
                let mut sub = mask;
                loop {
                    parity ^= y[(base | sub) as usize];
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & mask;
                }
                ones += u32::from(parity);
            }
            let votes = n >> degree;
            message[i] = u8::from(2 * ones > votes);
        }
        for &i in layer.iter().filter(|&&i| message[i] == 1) {
            for (b, &g) in y.iter_mut().zip(&code.generator()[i]) {
                *b ^= g;
            }
        }
    }
    let codeword = code.encode(&message)?;
    Ok((message, codeword))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn codewords_are_fixed_points() {
        for (m, r) in [(3, 1), (4, 2), (5, 2), (4, 3)] {
            let code = RmCode::new(m, r).unwrap();
            for (idx, c) in code.codebook().unwrap().iter().enumerate().step_by(7) {
                let (msg, out) = reed_decode(c, &code).unwrap();
                assert_eq!(&out, c);
                let expected: Vec<u8> = (0..code.k()).map(|i| (idx >> i & 1) as u8).collect();
                assert_eq!(msg, expected);
            }
        }
    }

    #[test]
    fn single_flip_on_zero_word() {
        let code = RmCode::new(3, 1).unwrap();
        for pos in 0..8 {
            let mut w = Codeword::zeros(8);
            w.bits[pos] = 1;
            assert_eq!(reed_decode(&w, &code).unwrap().1, Codeword::zeros(8));
        }
    }

    #[test]
    fn single_flip_rm42() {
        let code = RmCode::new(4, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let msg: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2)).collect();
            let c = code.encode(&msg).unwrap();
            for pos in 0..16 {
                let mut w = c.clone();
                w.bits[pos] ^= 1;
                let (m, out) = reed_decode(&w, &code).unwrap();
                assert_eq!(out, c);
                assert_eq!(m, msg);
            }
        }
    }

    #[test]
    fn corrects_up_to_radius_rm51() {
        // d = 16 → all patterns of up to 7 errors; spot check weight-7 patterns.
        let code = RmCode::new(5, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let msg: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2)).collect();
            let c = code.encode(&msg).unwrap();
            let mut w = c.clone();
            for pos in rand::seq::index::sample(&mut rng, 32, 7) {
                w.bits[pos] ^= 1;
            }
            assert_eq!(reed_decode(&w, &code).unwrap().1, c);
        }
    }

    #[test]
    fn output_always_a_codeword() {
        let code = RmCode::new(4, 2).unwrap();
        let book: std::collections::HashSet<_> = code.codebook().unwrap().into_iter().collect();
        for pattern in (0u32..1 << 16).step_by(97) {
            let w = Codeword { bits: (0..16).map(|i| (pattern >> i & 1) as u8).collect() };
            assert!(book.contains(&reed_decode(&w, &code).unwrap().1));
        }
    }

    #[test]
    fn length_mismatch() {
        let code = RmCode::new(3, 1).unwrap();
        assert!(reed_decode(&Codeword::zeros(4), &code).is_err());
    }
}
