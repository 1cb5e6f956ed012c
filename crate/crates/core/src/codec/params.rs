use std::f64::consts::{LN_2, PI};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::CodeSpec;
use crate::error::{Error, Result};
use crate::nfcore::NumberField;
use crate::real::{down, ln_bigint, ln_rational, up, Interval, REL_SLACK};

pub const DEFAULT_GAMMA: f64 = 0.5;

/// Multiplicative headroom `1 + 2⁻²⁰` applied to `F`.
const F_HEADROOM_LN: f64 = 9.536_738_616_591_883e-7;

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma < 1.0 {
        Ok(())
    } else {
        Err(Error::GammaOutOfRange(gamma))
    }
}

/// Rounds a sum of terms up, with slack proportional to the terms' magnitudes
/// rather than to the (possibly cancelled) result.
fn sum_up(terms: &[f64]) -> f64 {
    let s: f64 = terms.iter().sum();
    let mag: f64 = terms.iter().map(|t| t.abs()).sum();
    up(s + mag * REL_SLACK)
}

fn sum_down(terms: &[f64]) -> f64 {
    let s: f64 = terms.iter().sum();
    let mag: f64 = terms.iter().map(|t| t.abs()).sum();
    down(s - mag * REL_SLACK)
}

/// `ln Γ(d/2)` for a positive integer `d`.
fn ln_gamma_half(d: usize) -> f64 {
    let ln_fact = |n: usize| (2..=n).map(|i| (i as f64).ln()).sum::<f64>();
    if d.is_multiple_of(2) {
        ln_fact(d / 2 - 1)
    } else {
        // Γ(n + 1/2) = (2n)!·√π / (4ⁿ·n!)
        let n = (d - 1) / 2;
        ln_fact(2 * n) + 0.5 * PI.ln() - n as f64 * 2.0 * LN_2 - ln_fact(n)
    }
}

fn ln_alpha_terms(k: &NumberField, gamma: f64) -> Result<Vec<f64>> {
    check_gamma(gamma)?;
    let d = k.degree();
    let (r1, r2) = k.signature();
    Ok(vec![
        d as f64 / 2.0 * PI.ln(),
        -((r1 + r2) as f64 - 1.0 + gamma) * LN_2,
        -0.5 * ln_bigint(&k.disc().magnitude().clone().into()),
        -ln_gamma_half(d),
    ])
}

/// Enclosure of `ln α_{d,Δ,γ}`, where
/// `α = π^{d/2} / (2^{r₁+r₂−1+γ}·√|Δ|·Γ(d/2))`.
pub fn ln_alpha(k: &NumberField, gamma: f64) -> Result<Interval> {
    let t = ln_alpha_terms(k, gamma)?;
    Ok(Interval { lo: sum_down(&t), hi: sum_up(&t) })
}

pub fn alpha_constant(k: &NumberField, gamma: f64) -> Result<Interval> {
    let l = ln_alpha(k, gamma)?;
    Ok(Interval { lo: Interval::around(l.lo.exp()).lo, hi: Interval::around(l.hi.exp()).hi })
}

/// Enclosure of `ln β_{d,Δ,γ}`, where
/// `β = d^{3−d/2}·2^{3(1+d(2+d))}·|Δ|^{2+11/(2d)} / α^{1/d}`.
pub fn ln_beta(k: &NumberField, gamma: f64) -> Result<Interval> {
    let d = k.degree() as f64;
    let la = ln_alpha(k, gamma)?;
    let ln_disc = ln_bigint(&k.disc().magnitude().clone().into());
    let base = [
        (3.0 - d / 2.0) * d.ln(),
        3.0 * (1.0 + d * (2.0 + d)) * LN_2,
        (2.0 + 11.0 / (2.0 * d)) * ln_disc,
    ];
    let hi = sum_up(&[base[0], base[1], base[2], -la.lo / d]);
    let lo = sum_down(&[base[0], base[1], base[2], -la.hi / d]);
    Ok(Interval { lo, hi })
}

pub fn beta_constant(k: &NumberField, gamma: f64) -> Result<Interval> {
    let l = ln_beta(k, gamma)?;
    Ok(Interval { lo: Interval::around(l.lo.exp()).lo, hi: Interval::around(l.hi.exp()).hi })
}

/// `⌊α·F′^d⌋` from the lower enclosure of `α`: a lower bound on the number
/// of `x ∈ O_K` with `‖x‖ ≤ F′`.
pub fn minkowski_count_lb(k: &NumberField, f_prime: f64, gamma: f64) -> Result<BigInt> {
    let alpha = alpha_constant(k, gamma)?;
    if f_prime <= 0.0 {
        return Ok(BigInt::zero());
    }
    let v = down(down(alpha.lo * Interval::around(f_prime.powi(k.degree() as i32)).lo));
    Ok(BigInt::from_f64(v.max(0.0).floor()).unwrap_or_default())
}

/// Position weights `zᵢ`, optionally integerized to `z*ᵢ = ⌈A·zᵢ⌉` with an
/// accompanying degree `l`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightVector {
    pub z: Vec<f64>,
    pub z_star: Option<Vec<u64>>,
    pub a: Option<u64>,
    pub l: Option<usize>,
}

impl WeightVector {
    pub fn new(z: Vec<f64>) -> Result<Self> {
        if z.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::InvalidWeights("weights must be finite and non-negative".into()));
        }
        if z.iter().all(|x| *x == 0.0) {
            return Err(Error::InvalidWeights("weights are all zero".into()));
        }
        Ok(Self { z, z_star: None, a: None, l: None })
    }

    pub fn uniform(n: usize) -> Self {
        Self { z: vec![1.0; n], z_star: None, a: None, l: None }
    }

    /// Integer weights used as real weights, `zᵢ = z*ᵢ`.
    pub fn from_integers(z_star: Vec<u64>, l: usize) -> Result<Self> {
        let mut w = Self::new(z_star.iter().map(|&x| x as f64).collect())?;
        w.z_star = Some(z_star);
        w.l = Some(l);
        Ok(w)
    }
}

/// Weights `zᵢ = 1/ln 𝒩(𝔭_{k+1})` for `i ≤ k` and `zᵢ = 1/ln 𝒩(𝔭ᵢ)` beyond,
/// with a flag for whether `ln 𝒩(𝔭_{k+1}) ≥ max(2dk·ln 𝒩(𝔭_k), 2d²)`.
pub fn norm_weights(code: &CodeSpec) -> (WeightVector, bool) {
    let ln = code.ln_norms();
    let k = code.k();
    let d = code.field().degree() as f64;
    let z = (0..code.n()).map(|i| if i < k { 1.0 / ln[k] } else { 1.0 / ln[i] }).collect();
    let holds = ln[k] >= (2.0 * d * k as f64 * ln[k - 1]).max(2.0 * d * d);
    (WeightVector { z, z_star: None, a: None, l: None }, holds)
}

pub fn integerize_weights(z: &WeightVector, code: &CodeSpec, epsilon: f64) -> Result<WeightVector> {
    integerize_weights_with_gamma(z, code, epsilon, DEFAULT_GAMMA)
}

/// Scales `z` to maximum 1 and picks
/// `A = ⌈max(ln(2^{d²}Bᵈ), 10·ln N/ε, ln β/ln N)⌉`, `z*ᵢ = ⌈A·zᵢ⌉` and
/// `l = ⌈A·√(Σ Zᵢ·ln 𝒩(𝔭ᵢ) / ln(2^{d²}Bᵈ))⌉ − 1` with
/// `Zᵢ = zᵢ² + 3zᵢ/A + 2/A²`.
pub fn integerize_weights_with_gamma(
    z: &WeightVector,
    code: &CodeSpec,
    epsilon: f64,
    gamma: f64,
) -> Result<WeightVector> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::InvalidWeights("epsilon must be positive".into()));
    }
    let w = WeightVector::new(z.z.clone())?;
    if w.z.len() != code.n() {
        return Err(Error::InvalidWeights(format!("expected {} weights, got {}", code.n(), w.z.len())));
    }
    let zmax = w.z.iter().cloned().fold(0.0, f64::max);
    let zn: Vec<f64> = w.z.iter().map(|x| x / zmax).collect();
    let d = code.field().degree() as f64;
    let ln_n = ln_bigint(code.big_n());
    let l0 = d * d * LN_2 + d * ln_bigint(code.b());
    let lb = ln_beta(code.field(), gamma)?.hi;
    let a = l0.max(10.0 * ln_n / epsilon).max(lb / ln_n).ceil();
    let z_star = zn.iter().map(|x| ceil_robust(a * x) as u64).collect();
    let s: f64 = zn.iter().zip(code.ln_norms()).map(|(x, ln)| (x * x + 3.0 * x / a + 2.0 / (a * a)) * ln).sum();
    let l = (a * (s / l0).sqrt()).ceil() as usize - 1;
    Ok(WeightVector { z: zn, z_star: Some(z_star), a: Some(a as u64), l: Some(l) })
}

/// `⌈x⌉`, treating values within 1e-9 of an integer as that integer.
fn ceil_robust(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r
    } else {
        x.ceil()
    }
}

/// Upper bounds on `ln F` and `ln F′`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FBound {
    pub ln_f: f64,
    pub ln_f_prime: f64,
}

impl FBound {
    pub fn f(&self) -> f64 {
        up(self.ln_f.exp())
    }
}

pub fn f_bound(code: &CodeSpec, z_star: &[u64], l: usize, gamma: f64) -> Result<FBound> {
    let norms: Vec<u64> = code.primes().iter().map(|p| p.p).collect();
    f_bound_parts(code.field(), code.b(), &norms, z_star, l, gamma)
}

/// `F` just above `2(l+1)·B^{l/2}·α^{−1/d}·(∏ᵢ 𝒩(𝔭ᵢ)^{C(z*ᵢ+1,2)})^{1/(d(l+1))}`
/// and `F′ = 2^{dl/2}·√(l+1)·2^{2+d(6+3d)}·d³·|Δ|^{2+11/(2d)}·F`, as logs.
pub fn f_bound_parts(
    k: &NumberField,
    b: &BigInt,
    norms: &[u64],
    z_star: &[u64],
    l: usize,
    gamma: f64,
) -> Result<FBound> {
    if l == 0 {
        return Err(Error::InvalidWeights("l must be at least 1".into()));
    }
    if norms.len() != z_star.len() {
        return Err(Error::InvalidWeights(format!("expected {} weights, got {}", norms.len(), z_star.len())));
    }
    let d = k.degree() as f64;
    let lf = l as f64;
    let la = ln_alpha(k, gamma)?;
    let prod: f64 = norms
        .iter()
        .zip(z_star)
        .map(|(&p, &z)| (z as f64) * (z as f64 + 1.0) / 2.0 * (p as f64).ln())
        .sum();
    let ln_f = sum_up(&[
        (2.0 * (lf + 1.0)).ln(),
        lf / 2.0 * ln_bigint(b),
        -la.lo / d,
        prod / (d * (lf + 1.0)),
        F_HEADROOM_LN,
    ]);
    let ln_disc = ln_bigint(&k.disc().magnitude().clone().into());
    let ln_f_prime = sum_up(&[
        d * lf / 2.0 * LN_2,
        0.5 * (lf + 1.0).ln(),
        (2.0 + d * (6.0 + 3.0 * d)) * LN_2,
        3.0 * d.ln(),
        (2.0 + 11.0 / (2.0 * d)) * ln_disc,
        ln_f,
    ]);
    Ok(FBound { ln_f, ln_f_prime })
}

/// `−(d/2)·ln d + d·ln F`, rounded up.
pub fn threshold_from_ln_f(ln_f: f64, d: usize) -> f64 {
    let d = d as f64;
    sum_up(&[-(d / 2.0) * d.ln(), d * ln_f])
}

/// Agreement level above which every message in the ball is a root of a
/// decoding polynomial with coefficient bound `F_actual`.
pub fn guaranteed_threshold(f_actual: &BigRational, d: usize) -> f64 {
    assert!(f_actual > &BigRational::zero(), "F_actual must be positive");
    let ln_f = up(ln_rational(f_actual) + ln_rational(f_actual).abs() * REL_SLACK + 1e-300);
    threshold_from_ln_f(ln_f, d)
}

/// Exact form of the guarantee: `dᵈ·∏ 𝒩(𝔭ᵢ)^{2aᵢz*ᵢ} > F^{2d}`.
pub fn exceeds_threshold_exact(d: usize, f_actual: &BigRational, norms: &[u64], z_star: &[u64], agree: &[bool]) -> bool {
    let mut lhs = num_traits::pow(BigInt::from(d), d);
    for ((&p, &z), &a) in norms.iter().zip(z_star).zip(agree) {
        if a {
            lhs *= num_traits::pow(BigInt::from(p), 2 * z as usize);
        }
    }
    let num = num_traits::pow(f_actual.numer().clone(), 2 * d);
    let den = num_traits::pow(f_actual.denom().clone(), 2 * d);
    lhs * den > num
}

/// `√(k(n+ε)) ≥ √((k−δ)(n−δ+ε))` for `0 ≤ δ ≤ k ≤ n`, compared on the squares
/// with a relative tolerance of 1e-12.
pub fn cauchy_schwarz_step(k: f64, n: f64, epsilon: f64, delta: f64) -> bool {
    let lhs = k * (n + epsilon);
    let rhs = (k - delta) * (n - delta + epsilon);
    lhs >= rhs * (1.0 - 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss() -> NumberField {
        NumberField::from_i64(&[1, 0, 1]).unwrap()
    }

    #[test]
    fn alpha_beta_gaussian() {
        let k = gauss();
        let a = alpha_constant(&k, 0.5).unwrap();
        let want = PI / (2.0 * 2f64.sqrt());
        assert!(a.contains(want));
        assert!(a.hi - a.lo < 1e-10);
        let lb = ln_beta(&k, 0.5).unwrap();
        assert!(lb.contains(38.5 * LN_2 - 0.5 * want.ln()));
        assert!((lb.mid() - 26.63).abs() < 0.01);
        assert!(matches!(alpha_constant(&k, 1.0), Err(Error::GammaOutOfRange(_))));
        assert!(matches!(alpha_constant(&k, 0.0), Err(Error::GammaOutOfRange(_))));
    }

    #[test]
    fn alpha_decreases_in_gamma() {
        let k = gauss();
        let mut last = f64::INFINITY;
        for i in 1..20 {
            let a = alpha_constant(&k, i as f64 / 20.0).unwrap();
            assert!(a.hi < last);
            last = a.lo;
        }
    }

    #[test]
    fn gamma_of_half_integers() {
        assert!((ln_gamma_half(1) - PI.sqrt().ln()).abs() < 1e-15);
        assert!(ln_gamma_half(2).abs() < 1e-15);
        assert!((ln_gamma_half(5) - (0.75 * PI.sqrt()).ln()).abs() < 1e-14);
        assert!((ln_gamma_half(8) - 6f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn minkowski_counts() {
        let k = gauss();
        assert_eq!(minkowski_count_lb(&k, 10.0, 0.5).unwrap(), BigInt::from(111));
        assert_eq!(minkowski_count_lb(&k, 0.0, 0.5).unwrap(), BigInt::zero());
        let mut last = BigInt::zero();
        for f in 1..30 {
            let c = minkowski_count_lb(&k, f as f64, 0.5).unwrap();
            assert!(c >= last);
            last = c;
        }
    }

    #[test]
    fn norm_weights_reference() {
        let code = CodeSpec::gauss_6_2();
        let (w, holds) = norm_weights(&code);
        let l17 = 17f64.ln();
        let want = [1.0 / l17, 1.0 / l17, 1.0 / l17, 1.0 / 29f64.ln(), 1.0 / 37f64.ln(), 1.0 / 41f64.ln()];
        assert_eq!(w.z, want);
        assert!(!holds);
        assert_eq!(w.z.iter().cloned().fold(0.0, f64::max), 1.0 / l17);
    }

    #[test]
    fn integerized_reference() {
        let code = CodeSpec::gauss_6_2();
        let w = integerize_weights(&WeightVector::uniform(6), &code, 1.0).unwrap();
        assert_eq!(w.a, Some(177));
        assert_eq!(w.l, Some(225));
        assert_eq!(w.z_star, Some(vec![177; 6]));
        let (cw, _) = norm_weights(&code);
        let w = integerize_weights(&cw, &code, 1.0).unwrap();
        let a = w.a.unwrap() as f64;
        for (zs, z) in w.z_star.unwrap().iter().zip(&w.z) {
            assert!(*zs as f64 >= a * z - 1e-9 && (*zs as f64) < a * z + 1.0);
        }
    }

    #[test]
    fn toy_f_bound() {
        let k = gauss();
        let fb = f_bound_parts(&k, &BigInt::from(1), &[5], &[1], 1, 0.5).unwrap();
        let alpha = PI / (2.0 * 2f64.sqrt());
        let raw = (4.0 * alpha.powf(-0.5) * 5f64.powf(0.25)).ln();
        assert!(fb.ln_f > raw);
        assert!(fb.ln_f - raw < 2e-6);
        // zero weights leave the product term at 1
        let z0 = f_bound_parts(&k, &BigInt::from(1), &[5], &[0], 1, 0.5).unwrap();
        assert!((z0.ln_f - (4.0 * alpha.powf(-0.5)).ln()).abs() < 2e-6);
        // F′/F depends only on d, |Δ| and l
        let other = f_bound_parts(&k, &BigInt::from(7), &[5, 13], &[2, 3], 1, 0.5).unwrap();
        assert!(((fb.ln_f_prime - fb.ln_f) - (other.ln_f_prime - other.ln_f)).abs() < 1e-9);
    }

    #[test]
    fn thresholds() {
        let t = guaranteed_threshold(&BigRational::from_integer(100.into()), 2);
        assert!(t >= -LN_2 + 2.0 * 100f64.ln());
        assert!((t - 8.517).abs() < 1e-3);
        let t1 = guaranteed_threshold(&BigRational::from_integer(100.into()), 1);
        assert!((t1 - 100f64.ln()).abs() < 1e-9);
        let mut last = f64::NEG_INFINITY;
        for f in 1..50 {
            let t = guaranteed_threshold(&BigRational::from_integer(f.into()), 2);
            assert!(t > last);
            last = t;
        }
    }

    #[test]
    fn exact_threshold_agrees_with_float() {
        // F = 100, d = 2: threshold ≈ 8.517; 5·13·17 gives ln ≈ 7.01, with 29 ≈ 10.38
        let f = BigRational::from_integer(100.into());
        let norms = [5, 13, 17, 29];
        assert!(!exceeds_threshold_exact(2, &f, &norms, &[1; 4], &[true, true, true, false]));
        assert!(exceeds_threshold_exact(2, &f, &norms, &[1; 4], &[true, true, true, true]));
    }
}
