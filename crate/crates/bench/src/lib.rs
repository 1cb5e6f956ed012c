//! Fixtures shared by the benchmarks.

use nfcodes::harness::corrupt;
use nfcodes::{encode, CodeSpec, IntMatrix, ReceivedWord};

/// A deterministic full-rank `n × n` integer matrix with entries in `[-50, 50]`.
pub fn dense_matrix(n: usize, seed: u64) -> IntMatrix {
    let mut state = seed.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1);
    let mut next = || {
        state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
        ((state >> 33) % 101) as i64 - 50
    };
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| next() + if i == j { 200 } else { 0 }).collect())
        .collect();
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    IntMatrix::from_i64(&refs)
}

/// The reference code and the encoding of `3 + 2θ` with `errors` corruptions.
pub fn reference_word(errors: usize) -> (CodeSpec, ReceivedWord) {
    let code = CodeSpec::gauss_6_2();
    let clean = encode(&code.field().element(&[3, 2]), &code).expect("message is integral");
    let word = corrupt(&clean, &code, errors, 1).expect("errors ≤ n");
    (code, word)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures() {
        assert_ne!(dense_matrix(6, 3).det(), 0.into());
        let (code, w) = reference_word(2);
        assert_eq!(w.distance(&encode(&code.field().element(&[3, 2]), &code).unwrap()), 2);
    }
}
