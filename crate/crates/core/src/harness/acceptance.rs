//! The acceptance suite: each check returns a [`CriterionResult`] instead of
//! panicking, so the same code backs the integration tests and `selftest`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::Serialize;

use super::channel::{corrupt_with, rng_from_seed, MessageSampler};
use super::experiment::check_against_oracle;
use super::oracle::{residue, Oracle};
use crate::codec::{
    alpha_constant, beta_constant, cauchy_schwarz_step, norm_weights, decode, encode, integerize_weights,
    johnson_params, minkowski_count_lb, roots_hensel, roots_reference, CodeSpec, DecodeOptions, DecodeReport,
    ReceivedWord, WeightVector, DEFAULT_GAMMA,
};
use crate::error::Result;
use crate::ideals::{primes_above, FractionalIdeal, PrimeIdealData};
use crate::nfcore::{FieldElement, NumberField};
use crate::okmod::{det_over_k, KPoly, PseudoMatrix};
use crate::real::ln_bigint;

pub const TRIALS: usize = 100;
pub const SEED: u64 = 0x5EED_2024;
pub const MEMBERSHIP_SAMPLES: usize = 50;
pub const PSEUDO_MATRICES: usize = 200;
pub const CS_TUPLES: usize = 1000;
pub const ROOT_POLYS: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionResult {
    fn new(id: u8, name: &'static str, passed: bool, detail: String) -> Self {
        Self { id, name, passed, detail }
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "criterion {} [{tag}] {}: {}", self.id, self.name, self.detail)
    }
}

/// One decoded trial on the reference code.
#[derive(Clone, Debug)]
pub struct Trial {
    pub message: FieldElement,
    pub errors: usize,
    pub word: ReceivedWord,
    pub report: DecodeReport,
}

/// The seeded trials shared by the completeness, oracle, membership and
/// bound checks.
#[derive(Clone, Debug)]
pub struct ReferenceRun {
    pub code: CodeSpec,
    pub oracle: Oracle,
    pub trials: Vec<Trial>,
}

/// Decodes `trials` random messages of the reference code with
/// `trial mod 3` corruptions each, using the practical strategy.
pub fn reference_run(trials: usize, seed: u64) -> Result<ReferenceRun> {
    let code = CodeSpec::gauss_6_2();
    let sampler = MessageSampler::new(&code)?;
    let oracle = Oracle::with_ball(&code, sampler.ball().to_vec());
    let mut rng = rng_from_seed(seed);
    let opts = DecodeOptions::default();
    let mut out = Vec::with_capacity(trials);
    for i in 0..trials {
        let errors = i % 3;
        let message = sampler.sample(&mut rng);
        let word = corrupt_with(&encode(&message, &code)?, &code, errors, &mut rng)?;
        let report = decode(&word, &code, &opts)?;
        out.push(Trial { message, errors, word, report });
    }
    Ok(ReferenceRun { code, oracle, trials: out })
}

fn z_of(report: &DecodeReport) -> Vec<f64> {
    report.params.z_star.iter().map(|&z| z as f64).collect()
}

fn summarize(violations: &[String]) -> String {
    match violations.first() {
        None => String::new(),
        Some(v) => format!("; first: {v}"),
    }
}

/// Every ball element strictly above the guaranteed threshold is a root of
/// `c` and appears in the output.
pub fn completeness(run: &ReferenceRun) -> CriterionResult {
    let k = run.code.field();
    let mut checked = 0;
    let mut planted_above = 0;
    let mut bad = Vec::new();
    for (i, t) in run.trials.iter().enumerate() {
        let hits = match run.oracle.decode(&t.word, &z_of(&t.report), t.report.guaranteed_threshold) {
            Ok(h) => h,
            Err(e) => {
                bad.push(format!("trial {i}: {e}"));
                continue;
            }
        };
        for h in hits {
            checked += 1;
            if h.message == t.message {
                planted_above += 1;
            }
            if !t.report.c.eval(k, &h.message).is_zero() {
                bad.push(format!("trial {i}: c({}) ≠ 0", h.message));
            }
            if !t.report.codewords.iter().any(|c| c.message == h.message) {
                bad.push(format!("trial {i}: {} missing from output", h.message));
            }
        }
    }
    CriterionResult::new(
        1,
        "completeness",
        bad.is_empty(),
        format!(
            "{} trials, {checked} messages above threshold ({planted_above} planted), {} violations{}",
            run.trials.len(),
            bad.len(),
            summarize(&bad)
        ),
    )
}

/// Decoder output filtered at its threshold equals the oracle's list.
pub fn oracle_equivalence(run: &ReferenceRun) -> CriterionResult {
    let mut bad = Vec::new();
    let mut total = 0;
    for (i, t) in run.trials.iter().enumerate() {
        match check_against_oracle(&t.report, &run.oracle, &t.word) {
            Ok(c) => {
                total += c.oracle_list_size;
                if let Some(v) = c.violation {
                    bad.push(format!("trial {i}: {v}"));
                }
            }
            Err(e) => bad.push(format!("trial {i}: {e}")),
        }
    }
    CriterionResult::new(
        2,
        "oracle equivalence",
        bad.is_empty(),
        format!("{} trials, {total} oracle hits in total, {} mismatches{}", run.trials.len(), bad.len(), summarize(&bad)),
    )
}

/// Exact lattice-point counts in `Z[i]` against `⌊α·F′²⌋`.
pub fn lattice_point_counts() -> CriterionResult {
    let k = gaussian_field();
    let expected_counts = [(5u32, 37usize), (10, 161), (20, 633), (40, 2521)];
    let mut ok = true;
    let mut parts = Vec::new();
    for (f, expected) in expected_counts {
        let count = k.elements_in_ball(&BigRational::from_integer(BigInt::from(f * f))).len();
        let lb = minkowski_count_lb(&k, f as f64, DEFAULT_GAMMA);
        let lb_ok = lb.as_ref().map(|lb| BigInt::from(count) >= *lb).unwrap_or(false);
        ok &= lb_ok && count == expected;
        parts.push(match lb {
            Ok(lb) => format!("F′={f}: {count} ≥ {lb}"),
            Err(e) => format!("F′={f}: {e}"),
        });
    }
    let at_ten = minkowski_count_lb(&k, 10.0, DEFAULT_GAMMA).ok();
    ok &= at_ten == Some(BigInt::from(111));
    CriterionResult::new(3, "lattice-point count", ok, parts.join(", "))
}

/// `t`, `T` and the distance bound, recomputed by a scan in `u128` and
/// checked against the true minimum distance over all differences.
pub fn johnson() -> CriterionResult {
    let code = CodeSpec::gauss_6_2();
    let j = match johnson_params(&code, 1.0) {
        Ok(j) => j,
        Err(e) => return CriterionResult::new(4, "johnson parameters", false, e.to_string()),
    };
    let d = code.field().degree() as u32;
    let b: u128 = code.primes()[..code.k()].iter().map(|p| p.p as u128).product();
    let rhs = (2 * b).pow(d);
    let dd = (d as u128).pow(d);
    let mut prod = 1u128;
    let mut scan = None;
    for (i, p) in code.primes().iter().enumerate() {
        prod *= p.p as u128;
        if dd * prod > rhs {
            scan = Some((i + 1, prod));
            break;
        }
    }
    let n = code.n();
    let (t, big_t) = scan.unwrap_or((0, 0));
    let matches_scan = j.t == t && j.big_t == BigInt::from(big_t) && j.d_min_lb == n + 1 - t;
    let frozen = (j.t, j.big_t.clone(), j.d_min_lb) == (4, BigInt::from(32_045), 3);

    // two messages differ by δ with ‖δ‖ ≤ 2B; count the positions where δ vanishes
    let k = code.field();
    let two_b = BigInt::from(2u32) * code.b();
    let mut max_zero = 0;
    for delta in k.elements_in_ball(&BigRational::from_integer(&two_b * &two_b)) {
        if delta.is_zero() {
            continue;
        }
        let zeros = code.primes().iter().filter(|p| residue(&delta, p.p, p.root) == 0).count();
        max_zero = max_zero.max(zeros);
    }
    let true_dmin = n - max_zero;
    let ok = matches_scan && frozen && true_dmin >= j.d_min_lb;
    CriterionResult::new(
        4,
        "johnson parameters",
        ok,
        format!("t = {}, T = {}, d_min ≥ {} (exhaustive minimum distance {true_dmin})", j.t, j.big_t, j.d_min_lb),
    )
}

fn gaussian_field() -> NumberField {
    NumberField::from_i64(&[1, 0, 1]).expect("x² + 1 defines a field")
}

fn ideal_pool(k: &NumberField) -> Vec<FractionalIdeal> {
    let prime = |p, r| PrimeIdealData::new(k, p, r).expect("split prime").ideal;
    let p5a = prime(5, 2);
    let p5b = prime(5, 3);
    let p13 = prime(13, 5);
    let p2 = primes_above(k, 2, true).expect("prime above 2")[0].ideal.clone();
    let half = FractionalIdeal::unit(2).scale_rational(&BigRational::new(1.into(), 2.into())).expect("nonzero");
    vec![
        FractionalIdeal::unit(2),
        p5a.clone(),
        p5b,
        p13.clone(),
        p2,
        p5a.inverse(k),
        p5a.mul(k, &p13),
        FractionalIdeal::principal(k, &k.element(&[3, 0])).expect("nonzero"),
        half,
    ]
}

fn random_pseudo_matrix<R: Rng>(k: &NumberField, w: usize, pool: &[FractionalIdeal], rng: &mut R) -> PseudoMatrix {
    loop {
        let vecs: Vec<Vec<FieldElement>> = (0..w)
            .map(|_| (0..w).map(|_| k.element(&[rng.random_range(-4..=4), rng.random_range(-4..=4)])).collect())
            .collect();
        if det_over_k(k, vecs.clone()).is_zero() {
            continue;
        }
        let rows = vecs.into_iter().map(|v| (v, pool[rng.random_range(0..pool.len())].clone())).collect();
        return PseudoMatrix::new(w, rows).expect("rows have width w");
    }
}

fn check_pair(k: &NumberField, a: &PseudoMatrix, b: &PseudoMatrix) -> Result<Option<String>> {
    let s = a.sum(k, b)?;
    let i = a.intersect(k, b)?;
    let lhs = a.det_ideal(k)?.mul(k, &b.det_ideal(k)?);
    let rhs = s.det_ideal(k)?.mul(k, &i.det_ideal(k)?);
    if lhs != rhs {
        return Ok(Some("det(a)·det(b) ≠ det(a+b)·det(a∩b)".into()));
    }
    for m in [a, b] {
        let h = m.pseudo_hnf(k);
        if !h.is_hnf() || !m.is_submodule_of(k, &h)? || !h.is_submodule_of(k, m)? {
            return Ok(Some("pseudo-HNF changed the module".into()));
        }
    }
    Ok(None)
}

/// Determinant identity for sums and intersections, and membership
/// preservation by the pseudo-HNF, on random pseudo-matrices over `Z[i]`.
pub fn module_algebra(count: usize, seed: u64) -> CriterionResult {
    let k = gaussian_field();
    let pool = ideal_pool(&k);
    let mut rng = rng_from_seed(seed);
    let mut bad = Vec::new();
    for n in 0..count {
        let w = rng.random_range(1..=3);
        let a = random_pseudo_matrix(&k, w, &pool, &mut rng);
        let b = random_pseudo_matrix(&k, w, &pool, &mut rng);
        match check_pair(&k, &a, &b) {
            Ok(None) => {}
            Ok(Some(v)) => bad.push(format!("pair {n}: {v}")),
            Err(e) => bad.push(format!("pair {n}: {e}")),
        }
    }
    CriterionResult::new(
        5,
        "module algebra",
        bad.is_empty(),
        format!("{count} pairs of width ≤ 3, {} failures{}", bad.len(), summarize(&bad)),
    )
}

/// `c` lies in the decoding module, and `c(m) ∈ 𝔭ᵢ^{z*ᵢ}` whenever `m ≡ rᵢ`.
pub fn membership(run: &ReferenceRun, samples: usize, seed: u64) -> CriterionResult {
    let k = run.code.field();
    let mut rng = rng_from_seed(seed);
    let mut bad = Vec::new();
    for (ti, t) in run.trials.iter().enumerate() {
        let width = t.report.params.l + 1;
        match t.report.module.contains(k, &t.report.c.to_vector(width)) {
            Ok(true) => {}
            Ok(false) => bad.push(format!("trial {ti}: c outside the module")),
            Err(e) => bad.push(format!("trial {ti}: {e}")),
        }
        let powers: Vec<FractionalIdeal> = run
            .code
            .primes()
            .iter()
            .zip(&t.report.params.z_star)
            .map(|(p, &z)| p.ideal.pow(k, z as i64))
            .collect();
        for _ in 0..samples {
            let i = rng.random_range(0..run.code.n());
            let mut m = run.code.primes()[i].lift(k, t.word.residues[i]);
            for g in run.code.primes()[i].ideal.basis() {
                m = &m + &g.scale_int(&BigInt::from(rng.random_range(-100i64..=100)));
            }
            if !powers[i].contains(&t.report.c.eval(k, &m)) {
                bad.push(format!("trial {ti}: c({m}) ∉ 𝔭_{i}^z"));
            }
        }
    }
    CriterionResult::new(
        6,
        "decoding-polynomial membership",
        bad.is_empty(),
        format!(
            "{} trials × {samples} congruent samples, {} failures{}",
            run.trials.len(),
            bad.len(),
            summarize(&bad)
        ),
    )
}

/// `‖c(m)‖ ≤ F_actual` over the whole ball, compared exactly on squares.
pub fn bound_soundness(run: &ReferenceRun) -> CriterionResult {
    let k = run.code.field();
    let mut bad = Vec::new();
    let mut worst = 0.0f64;
    for (ti, t) in run.trials.iter().enumerate() {
        let f2 = &t.report.f_actual * &t.report.f_actual;
        for m in run.oracle.messages() {
            let v = t.report.c.eval(k, m);
            let n2 = k.t2_norm_sq(&v).hi;
            worst = worst.max((&n2 / &f2).to_f64().unwrap_or(f64::INFINITY));
            if n2 > f2 {
                bad.push(format!("trial {ti}: ‖c({m})‖ > F_actual"));
            }
        }
    }
    CriterionResult::new(
        7,
        "bound soundness",
        bad.is_empty(),
        format!(
            "{} trials × {} messages, max ‖c(m)‖/F_actual = {:.4}, {} violations{}",
            run.trials.len(),
            run.oracle.ball_size(),
            worst.sqrt(),
            bad.len(),
            summarize(&bad)
        ),
    )
}

/// Reference values of `(α, β)` at `γ = 1/2`, computed with 40-digit
/// arithmetic: `(poly, α, β)`.
pub const FROZEN_CONSTANTS: [(&[i64], f64, f64); 3] = [
    (&[1, 0, 1], 1.110_720_734_539_591_5, 368_852_213_024.175_35),
    (&[-2, 0, 0, 1], 0.213_758_305_026_977_36, 1.525_006_650_434_047_3e23),
    (&[-1, -1, 1], 0.496_729_413_289_805, 1_591_906_134_552.364_3),
];

const FROZEN_LN_BETA_GAUSS: f64 = 26.633_661_894_053_155;

fn close(x: f64, reference: f64) -> bool {
    ((x - reference) / reference).abs() < 5e-11
}

/// Weight integerization on the reference code, the constants `α`, `β`,
/// and the Cauchy–Schwarz step on random tuples.
pub fn parameter_formulas(tuples: usize, seed: u64) -> CriterionResult {
    let code = CodeSpec::gauss_6_2();
    let mut notes = Vec::new();
    let mut ok = true;

    let ln_n = ln_bigint(code.big_n());
    let l0 = 16f64.ln() + 2.0 * 65f64.ln();
    let a_ref = l0.max(10.0 * ln_n).max(FROZEN_LN_BETA_GAUSS / ln_n).ceil();
    let z_sum: f64 = [5f64, 13.0, 17.0, 29.0, 37.0, 41.0]
        .iter()
        .map(|p| (1.0 + 3.0 / a_ref + 2.0 / (a_ref * a_ref)) * p.ln())
        .sum();
    let l_ref = (a_ref * (z_sum / l0).sqrt()).ceil() - 1.0;
    match integerize_weights(&WeightVector::uniform(6), &code, 1.0) {
        Ok(w) => {
            let a = w.a.unwrap_or(0);
            let l = w.l.unwrap_or(0);
            let z_ok = w.z_star.as_deref().is_some_and(|z| z.iter().all(|&x| x == a));
            ok &= a as f64 == a_ref && l as f64 == l_ref && a == 177 && l == 225 && z_ok;
            notes.push(format!("A = {a}, l = {l}"));
        }
        Err(e) => {
            ok = false;
            notes.push(e.to_string());
        }
    }

    for (poly, alpha_ref, beta_ref) in FROZEN_CONSTANTS {
        let k = NumberField::from_i64(poly).expect("frozen fields are valid");
        let (Ok(a), Ok(b)) = (alpha_constant(&k, DEFAULT_GAMMA), beta_constant(&k, DEFAULT_GAMMA)) else {
            ok = false;
            continue;
        };
        let good = close(a.mid(), alpha_ref) && close(b.mid(), beta_ref);
        ok &= good;
        if !good {
            notes.push(format!("constants of degree {} off: α = {}, β = {}", k.degree(), a.mid(), b.mid()));
        }
    }
    notes.push(format!("α, β match on {} fields", FROZEN_CONSTANTS.len()));

    let mut rng = rng_from_seed(seed);
    let mut cs_fail = 0;
    for _ in 0..tuples {
        let kk = rng.random_range(1..=40) as f64;
        let n = kk + rng.random_range(1..=60) as f64;
        let eps = rng.random_range(0.0..3.0);
        let delta = rng.random_range(0.0..=kk);
        if !cauchy_schwarz_step(kk, n, eps, delta) {
            cs_fail += 1;
        }
    }
    ok &= cs_fail == 0;
    notes.push(format!("Cauchy–Schwarz step {}/{tuples}", tuples - cs_fail));
    let (_, holds) = norm_weights(&code);
    notes.push(format!("radius hypothesis holds: {holds}"));
    CriterionResult::new(8, "parameter formulas", ok, notes.join(", "))
}

fn sorted(mut v: Vec<FieldElement>) -> Vec<FieldElement> {
    v.sort_by(|a, b| a.coords().cmp(b.coords()));
    v
}

/// Reference and Hensel root finders agree on polynomials with planted
/// roots in the ball, extra roots outside it and root-free factors.
pub fn root_finders(count: usize, seed: u64) -> CriterionResult {
    let code = CodeSpec::gauss_6_2();
    let k = code.field();
    let b = code.b();
    let sampler = match MessageSampler::new(&code) {
        Ok(s) => s,
        Err(e) => return CriterionResult::new(9, "root finders", false, e.to_string()),
    };
    let mut rng = rng_from_seed(seed);
    let mut bad = Vec::new();
    let mut found = 0;
    for n in 0..count {
        let mut roots: Vec<FieldElement> = (0..rng.random_range(1..=3)).map(|_| sampler.sample(&mut rng)).collect();
        if rng.random_bool(0.25) {
            roots.push(roots[0].clone());
        }
        let mut f = KPoly::from_roots(k, &roots);
        if rng.random_bool(0.5) {
            let far = k.element(&[rng.random_range(66..=200), rng.random_range(-200..=200)]);
            f = f.mul(k, &KPoly::linear(&far));
        }
        if rng.random_bool(0.3) {
            let s = k.element(&[rng.random_range(-20..=20), 1]);
            f = f.mul(k, &KPoly::new(2, vec![-s, k.zero(), k.one()]));
        }
        let lead = loop {
            let x = k.element(&[rng.random_range(-3..=3), rng.random_range(-3..=3)]);
            if !x.is_zero() {
                break x;
            }
        };
        f = f.scale(k, &lead);
        match (roots_reference(k, &f, b), roots_hensel(k, &f, b)) {
            (Ok(r), Ok(h)) => {
                let (r, h) = (sorted(r), sorted(h));
                found += r.len();
                if r != h {
                    bad.push(format!("poly {n}: reference {r:?} vs hensel {h:?}"));
                } else if roots.iter().any(|x| !r.contains(x)) {
                    bad.push(format!("poly {n}: planted root missed"));
                }
            }
            (Err(e), _) | (_, Err(e)) => bad.push(format!("poly {n}: {e}")),
        }
    }
    CriterionResult::new(
        9,
        "root finders",
        bad.is_empty(),
        format!("{count} polynomials, {found} roots in the ball, {} disagreements{}", bad.len(), summarize(&bad)),
    )
}

/// Runs criteria 1–9 in order.
pub fn run_all() -> Vec<CriterionResult> {
    let mut out = Vec::with_capacity(9);
    match reference_run(TRIALS, SEED) {
        Ok(run) => {
            out.push(completeness(&run));
            out.push(oracle_equivalence(&run));
            out.push(lattice_point_counts());
            out.push(johnson());
            out.push(module_algebra(PSEUDO_MATRICES, SEED));
            out.push(membership(&run, MEMBERSHIP_SAMPLES, SEED));
            out.push(bound_soundness(&run));
        }
        Err(e) => {
            let msg = format!("reference run failed: {e}");
            out.push(CriterionResult::new(1, "completeness", false, msg.clone()));
            out.push(CriterionResult::new(2, "oracle equivalence", false, msg.clone()));
            out.push(lattice_point_counts());
            out.push(johnson());
            out.push(module_algebra(PSEUDO_MATRICES, SEED));
            out.push(CriterionResult::new(6, "decoding-polynomial membership", false, msg.clone()));
            out.push(CriterionResult::new(7, "bound soundness", false, msg));
        }
    }
    out.push(parameter_formulas(CS_TUPLES, SEED));
    out.push(root_finders(ROOT_POLYS, SEED));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_reference_run() {
        let run = reference_run(3, 1).unwrap();
        assert!(completeness(&run).passed);
        assert!(oracle_equivalence(&run).passed);
        assert!(membership(&run, 5, 1).passed);
    }

    #[test]
    fn display_format() {
        let r = CriterionResult::new(4, "johnson parameters", true, "t = 4".into());
        assert_eq!(r.to_string(), "criterion 4 [PASS] johnson parameters: t = 4");
    }

    #[test]
    fn few_module_pairs() {
        let r = module_algebra(5, 2);
        assert!(r.passed, "{r}");
    }
}
