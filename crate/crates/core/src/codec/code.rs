use log::warn;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideals::PrimeIdealData;
use crate::nfcore::{FieldElement, NumberField};
use crate::real::ln_bigint;

/// The code `m ↦ (m mod 𝔭₁, …, m mod 𝔭ₙ)` on `{m ∈ O_K : ‖m‖ ≤ B}` with
/// `B = ∏_{i≤k} 𝒩(𝔭ᵢ)`.
#[derive(Clone, Debug)]
pub struct CodeSpec {
    field: NumberField,
    primes: Vec<PrimeIdealData>,
    k: usize,
    b: BigInt,
    n_total: BigInt,
}

impl CodeSpec {
    /// Primes must be unramified, of degree one and listed by strictly
    /// increasing norm; `0 < k < n`.
    pub fn new(field: NumberField, primes: Vec<PrimeIdealData>, k: usize) -> Result<Self> {
        let n = primes.len();
        if k == 0 || k >= n {
            return Err(Error::DegenerateCode(format!("need 0 < k < n, got k = {k}, n = {n}")));
        }
        for w in primes.windows(2) {
            if w[0].p >= w[1].p {
                return Err(Error::DegenerateCode(format!(
                    "prime norms must increase strictly ({} then {})",
                    w[0].p, w[1].p
                )));
            }
        }
        if let Some(p) = primes.iter().find(|p| p.ramified) {
            return Err(Error::Ramified(p.p));
        }
        let b = primes[..k].iter().map(|p| BigInt::from(p.p)).product();
        let n_total = primes.iter().map(|p| BigInt::from(p.p)).product();
        Ok(Self { field, primes, k, b, n_total })
    }

    /// Builds the code from `(p, root)` pairs.
    pub fn from_pairs(field: NumberField, pairs: &[(u64, u64)], k: usize) -> Result<Self> {
        let primes = pairs.iter().map(|&(p, r)| PrimeIdealData::new(&field, p, r)).collect::<Result<_>>()?;
        Self::new(field, primes, k)
    }

    /// The reference code over `Z[i]` with primes of norms 5, 13, 17, 29,
    /// 37, 41 and `k = 2`, so `B = 65`.
    pub fn gauss_6_2() -> Self {
        let k = NumberField::from_i64(&[1, 0, 1]).expect("x² + 1 defines a field");
        Self::from_pairs(k, &[(5, 2), (13, 5), (17, 4), (29, 12), (37, 6), (41, 9)], 2)
            .expect("reference code is valid")
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn primes(&self) -> &[PrimeIdealData] {
        &self.primes
    }

    pub fn n(&self) -> usize {
        self.primes.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `B = ∏_{i≤k} 𝒩(𝔭ᵢ)`.
    pub fn b(&self) -> &BigInt {
        &self.b
    }

    /// `N = ∏ 𝒩(𝔭ᵢ)`.
    pub fn big_n(&self) -> &BigInt {
        &self.n_total
    }

    pub fn b_squared(&self) -> BigRational {
        BigRational::from_integer(&self.b * &self.b)
    }

    /// `ln 𝒩(𝔭ᵢ)` for every position.
    pub fn ln_norms(&self) -> Vec<f64> {
        self.primes.iter().map(|p| (p.p as f64).ln()).collect()
    }

    /// All messages: integral `m` with `‖m‖ ≤ B`.
    pub fn message_ball(&self) -> Vec<FieldElement> {
        self.field.elements_in_ball(&self.b_squared())
    }

    /// Per-position agreement flags of `m` with a received word.
    pub fn agreements(&self, m: &FieldElement, word: &ReceivedWord) -> Result<Vec<bool>> {
        let enc = encode_unchecked(m, self)?;
        Ok(enc.residues.iter().zip(&word.residues).map(|(a, b)| a == b).collect())
    }

    /// `Σ aᵢ·zᵢ·ln 𝒩(𝔭ᵢ)`.
    pub fn weighted_agreement(&self, m: &FieldElement, word: &ReceivedWord, z: &[f64]) -> Result<f64> {
        let a = self.agreements(m, word)?;
        Ok(a.iter().zip(z).zip(self.ln_norms()).filter(|((&ai, _), _)| ai).map(|((_, zi), ln)| zi * ln).sum())
    }
}

/// A received word: one residue per position, `residues[i] ∈ [0, pᵢ)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReceivedWord {
    pub residues: Vec<u64>,
}

impl ReceivedWord {
    pub fn new(residues: Vec<u64>) -> Self {
        Self { residues }
    }

    pub fn validate(&self, code: &CodeSpec) -> Result<()> {
        if self.residues.len() != code.n() {
            return Err(Error::InvalidWord(format!(
                "expected {} residues, got {}",
                code.n(),
                self.residues.len()
            )));
        }
        for (i, (r, p)) in self.residues.iter().zip(code.primes()).enumerate() {
            if *r >= p.p {
                return Err(Error::InvalidWord(format!("residue {r} at position {i} is not below {}", p.p)));
            }
        }
        Ok(())
    }

    /// Positions where two words differ.
    pub fn distance(&self, other: &ReceivedWord) -> usize {
        self.residues.iter().zip(&other.residues).filter(|(a, b)| a != b).count()
    }
}

/// Residues of an integral `m` at every prime of the code.
pub fn encode(m: &FieldElement, code: &CodeSpec) -> Result<ReceivedWord> {
    if !m.is_integral() {
        return Err(Error::NonIntegral);
    }
    if !code.field.in_ball(m, &code.b_squared()) {
        warn!("encoding {m}, which lies outside the message ball");
    }
    encode_unchecked(m, code)
}

fn encode_unchecked(m: &FieldElement, code: &CodeSpec) -> Result<ReceivedWord> {
    let residues = code.primes.iter().map(|p| p.residue(m)).collect::<Result<_>>()?;
    Ok(ReceivedWord { residues })
}

/// Parameters of the Johnson-type analysis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JohnsonParams {
    /// Least `t` with `∏_{i≤t} 𝒩(𝔭ᵢ) > (2B/d)^d`.
    pub t: usize,
    /// `∏_{i≤t} 𝒩(𝔭ᵢ)`.
    pub big_t: BigInt,
    /// `n − t + 1`.
    pub d_min_lb: usize,
    /// `√((t + ε)·n)`.
    pub radius: f64,
    /// `√((ln T + ε)·ln N)`.
    pub log_radius: f64,
}

pub fn johnson_params(code: &CodeSpec, epsilon: f64) -> Result<JohnsonParams> {
    let d = code.field.degree();
    // ∏ > (2B/d)^d  ⟺  d^d·∏ > (2B)^d
    let rhs = num_traits::pow(BigInt::from(2) * &code.b, d);
    let dd = num_traits::pow(BigInt::from(d), d);
    let mut prod = BigInt::one();
    for (i, p) in code.primes.iter().enumerate() {
        prod *= p.p;
        if &dd * &prod > rhs {
            let t = i + 1;
            let n = code.n();
            return Ok(JohnsonParams {
                t,
                big_t: prod.clone(),
                d_min_lb: n - t + 1,
                radius: ((t as f64 + epsilon) * n as f64).sqrt(),
                log_radius: ((ln_bigint(&prod) + epsilon) * ln_bigint(&code.n_total)).sqrt(),
            });
        }
    }
    Err(Error::DegenerateCode("the product of all prime norms never exceeds (2B/d)^d".into()))
}
