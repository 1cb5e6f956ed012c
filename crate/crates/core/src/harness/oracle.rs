use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::codec::{CodeSpec, ReceivedWord, WeightVector};
use crate::error::{Error, Result};
use crate::nfcore::FieldElement;

/// A message found by exhaustive search.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleHit {
    pub message: FieldElement,
    pub agreement: f64,
    pub matches: usize,
}

/// Brute-force decoder over the whole message ball. Residues are computed
/// by Horner evaluation at the prime's root, independently of the encoder.
#[derive(Clone, Debug)]
pub struct Oracle {
    ln_norms: Vec<f64>,
    table: Vec<(FieldElement, Vec<u64>)>,
}

impl Oracle {
    pub fn new(code: &CodeSpec) -> Self {
        Self::with_ball(code, code.message_ball())
    }

    pub fn with_ball(code: &CodeSpec, ball: Vec<FieldElement>) -> Self {
        let table = ball
            .into_iter()
            .map(|m| {
                let r = code.primes().iter().map(|p| residue(&m, p.p, p.root)).collect();
                (m, r)
            })
            .collect();
        Self { ln_norms: code.ln_norms(), table }
    }

    pub fn ball_size(&self) -> usize {
        self.table.len()
    }

    pub fn messages(&self) -> impl Iterator<Item = &FieldElement> {
        self.table.iter().map(|(m, _)| m)
    }

    /// Every message with `Σ aᵢ·zᵢ·ln 𝒩(𝔭ᵢ) > threshold`, sorted by
    /// decreasing agreement and then by coordinates.
    pub fn decode(&self, word: &ReceivedWord, z: &[f64], threshold: f64) -> Result<Vec<OracleHit>> {
        if z.len() != self.ln_norms.len() {
            return Err(Error::InvalidWeights(format!("expected {} weights, got {}", self.ln_norms.len(), z.len())));
        }
        if word.residues.len() != self.ln_norms.len() {
            return Err(Error::InvalidWord(format!(
                "expected {} residues, got {}",
                self.ln_norms.len(),
                word.residues.len()
            )));
        }
        let mut hits = Vec::new();
        for (m, res) in &self.table {
            let mut agreement = 0.0;
            let mut matches = 0;
            for i in 0..res.len() {
                if res[i] == word.residues[i] {
                    agreement += z[i] * self.ln_norms[i];
                    matches += 1;
                }
            }
            if agreement > threshold {
                hits.push(OracleHit { message: m.clone(), agreement, matches });
            }
        }
        hits.sort_by(|a, b| {
            b.agreement.total_cmp(&a.agreement).then_with(|| a.message.coords().cmp(b.message.coords()))
        });
        Ok(hits)
    }
}

pub(crate) fn residue(m: &FieldElement, p: u64, root: u64) -> u64 {
    let p = BigInt::from(p);
    let mut acc = BigInt::from(0);
    for c in m.coords().iter().rev() {
        acc = (acc * root + c).mod_floor(&p);
    }
    u64::try_from(acc).expect("residue below p")
}

/// Exhaustive list decoding at weights `z.z` (not integerized).
pub fn oracle_decode(word: &ReceivedWord, code: &CodeSpec, z: &WeightVector, threshold: f64) -> Result<Vec<OracleHit>> {
    word.validate(code)?;
    Oracle::new(code).decode(word, &z.z, threshold)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::encode;
    use crate::real::ln_bigint;

    #[test]
    fn residues_match_encoder() {
        let code = CodeSpec::gauss_6_2();
        let m = code.field().element(&[3, 2]);
        let r: Vec<u64> = code.primes().iter().map(|p| residue(&m, p.p, p.root)).collect();
        assert_eq!(r, encode(&m, &code).unwrap().residues);
        let neg = code.field().element(&[-64, -1]);
        let r: Vec<u64> = code.primes().iter().map(|p| residue(&neg, p.p, p.root)).collect();
        assert_eq!(r, encode(&neg, &code).unwrap().residues);
    }

    #[test]
    fn threshold_extremes() {
        let code = CodeSpec::gauss_6_2();
        let k = code.field();
        let oracle = Oracle::new(&code);
        let m = k.element(&[3, 2]);
        let w = encode(&m, &code).unwrap();
        let z = vec![1.0; 6];
        let ln_n = ln_bigint(code.big_n());
        let top = oracle.decode(&w, &z, ln_n - 1e-9).unwrap();
        assert_eq!(top.len(), 1);
        assert_eq!(top[0].message, m);
        assert!(oracle.decode(&w, &z, ln_n + 1e-9).unwrap().is_empty());
        assert_eq!(oracle.decode(&w, &z, -1.0).unwrap().len(), oracle.ball_size());
    }

    #[test]
    fn one_corruption_keeps_message() {
        let code = CodeSpec::gauss_6_2();
        let m = code.field().element(&[3, 2]);
        let mut w = encode(&m, &code).unwrap();
        w.residues[5] = (w.residues[5] + 3) % 41;
        let t = ln_bigint(code.big_n()) - 41f64.ln() - 0.01;
        let hits = oracle_decode(&w, &code, &WeightVector::uniform(6), t).unwrap();
        assert!(hits.iter().any(|h| h.message == m && h.matches == 5));
    }
}
