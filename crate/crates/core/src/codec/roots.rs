use log::debug;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideals::{fp, next_split_prime};
use crate::nfcore::{FieldElement, NumberField};
use crate::okmod::KPoly;
use crate::zlattice::{enumerate_near, lll_reduce_default, solve_rational_rows, IntMatrix};

/// How `roots_in_ball` searches for roots.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootFinder {
    /// Enumerate the ball and evaluate exactly.
    Reference,
    /// Roots modulo a split prime, Hensel lifting and lattice rounding.
    #[default]
    Hensel,
}

/// Smallest modulus tried for the modular root finder.
const FIRST_MODULUS: u64 = 1009;

/// All integral roots `m` of `c` with `‖m‖ ≤ B`, sorted by coordinates.
pub fn roots_in_ball(k: &NumberField, c: &KPoly, b: &BigInt, method: RootFinder) -> Result<Vec<FieldElement>> {
    match method {
        RootFinder::Reference => roots_reference(k, c, b),
        RootFinder::Hensel => roots_hensel(k, c, b),
    }
}

pub fn roots_reference(k: &NumberField, c: &KPoly, b: &BigInt) -> Result<Vec<FieldElement>> {
    if c.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if c.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let r2 = BigRational::from_integer(b * b);
    Ok(k.elements_in_ball(&r2).into_iter().filter(|m| c.eval(k, m).is_zero()).collect())
}

pub fn roots_hensel(k: &NumberField, c: &KPoly, b: &BigInt) -> Result<Vec<FieldElement>> {
    if c.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if c.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let g = c.squarefree_part(k).clear_denominators();
    let deg = g.degree().unwrap();
    let d = k.degree();
    let r2 = BigRational::from_integer(b * b);

    // a split prime 𝔮 = (q, θ − s) keeping g squarefree of full degree
    let mut start = FIRST_MODULUS;
    let (q, s, gq) = loop {
        let Some(prime) = next_split_prime(k, start) else {
            return roots_reference(k, c, b);
        };
        start = prime.p + 1;
        let gq: Vec<u64> = g.coeffs().iter().map(|x| prime.residue(x).unwrap()).collect();
        if gq[deg] == 0 {
            continue;
        }
        if deg > 1 && !simple_roots_mod(&gq, prime.p) {
            continue;
        }
        break (prime.p, prime.root, gq);
    };
    let residues = fp::roots(&gq, q);
    debug!("modular root finding: q = {q}, {} roots of a degree-{deg} polynomial", residues.len());
    if residues.is_empty() {
        return Ok(Vec::new());
    }

    // precision: q^e > (2B√d)^d, compared as q^{2e} > (4B²d)^d
    let bound = num_traits::pow(BigInt::from(4) * b * b * d, d);
    let qb = BigInt::from(q);
    let mut e = 1usize;
    let mut qe = qb.clone();
    while &qe * &qe <= bound {
        e += 1;
        qe *= &qb;
    }

    // O_K / 𝔮^e ≅ Z / q^e via θ ↦ s_e, the lift of s as a root of f
    let f = k.poly();
    let s_e = hensel_lift(f, &BigInt::from(s), &qb, e);
    let ge: Vec<BigInt> = g.coeffs().iter().map(|x| eval_mod(x.coords(), &s_e, &qe)).collect();

    // basis of the lattice 𝔮^e: (q^e, 0, …) and (−s_e^u, …, 1, …)
    let mut rows = Vec::with_capacity(d);
    let mut first = vec![BigInt::zero(); d];
    first[0] = qe.clone();
    rows.push(first);
    let mut pw = BigInt::one();
    for u in 1..d {
        pw = (&pw * &s_e).mod_floor(&qe);
        let mut r = vec![BigInt::zero(); d];
        r[0] = -pw.clone();
        r[u] = BigInt::one();
        rows.push(r);
    }
    let basis = lll_reduce_default(&IntMatrix::from_rows(d, rows), k.t2_form())?;
    let basis_q: Vec<Vec<BigRational>> =
        basis.to_rows().into_iter().map(|r| r.into_iter().map(BigRational::from_integer).collect()).collect();

    let mut out = Vec::new();
    for rho in residues {
        let rho_e = hensel_lift(&ge, &BigInt::from(rho), &qb, e);
        // m = t − x with t = ρ_e and x ∈ 𝔮^e, so x is a lattice point near t
        let mut t = vec![BigRational::zero(); d];
        t[0] = BigRational::from_integer(rho_e.clone());
        let target = solve_rational_rows(&basis_q, &t).expect("lattice basis is invertible");
        for x in enumerate_near(&basis, k.t2_form(), &target, &r2) {
            let mut m = vec![BigInt::zero(); d];
            m[0] = rho_e.clone();
            for (xi, row) in x.iter().zip(basis.to_rows()) {
                for (mj, bj) in m.iter_mut().zip(row) {
                    *mj -= xi * bj;
                }
            }
            let m = FieldElement::integral(m);
            if k.in_ball(&m, &r2) && c.eval(k, &m).is_zero() {
                out.push(m);
            }
        }
    }
    out.sort_by(|a, b| a.coords().cmp(b.coords()));
    out.dedup();
    Ok(out)
}

fn simple_roots_mod(f: &[u64], p: u64) -> bool {
    // only roots in F_p get lifted, so only those need to be simple
    let df: Vec<u64> = f.iter().enumerate().skip(1).map(|(i, &c)| fp::mul_mod(c, i as u64 % p, p)).collect();
    fp::roots(f, p).into_iter().all(|r| fp::eval(&df, r, p) != 0)
}

fn eval_mod(coeffs: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn derivative(p: &[BigInt]) -> Vec<BigInt> {
    p.iter().enumerate().skip(1).map(|(i, c)| c * i).collect()
}

/// Newton lift of a simple root `r` of `p` modulo `q` to a root modulo `q^e`.
fn hensel_lift(p: &[BigInt], r: &BigInt, q: &BigInt, e: usize) -> BigInt {
    let dp = derivative(p);
    let target = num_traits::pow(q.clone(), e);
    let mut x = r.clone();
    let mut m = q.clone();
    while m < target {
        m = (&m * &m).min(target.clone());
        let fx = eval_mod(p, &x, &m);
        let dfx = eval_mod(&dp, &x, &m);
        let inv = mod_inverse(&dfx, &m).expect("root is simple");
        x = (&x - fx * inv).mod_floor(&m);
    }
    x.mod_floor(&target)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss() -> NumberField {
        NumberField::from_i64(&[1, 0, 1]).unwrap()
    }

    fn both(k: &NumberField, c: &KPoly, b: i64) -> Vec<FieldElement> {
        let r = roots_reference(k, c, &b.into()).unwrap();
        let h = roots_hensel(k, c, &b.into()).unwrap();
        assert_eq!(r, h);
        r
    }

    #[test]
    fn linear_and_quadratic() {
        let k = gauss();
        let m = k.element(&[3, 2]);
        assert_eq!(both(&k, &KPoly::linear(&m), 65), vec![m.clone()]);
        let m2 = k.element(&[-20, 11]);
        let c = KPoly::from_roots(&k, &[m.clone(), m2.clone()]);
        let mut want = vec![m.clone(), m2];
        want.sort_by(|a, b| a.coords().cmp(b.coords()));
        assert_eq!(both(&k, &c, 65), want);
        let c = KPoly::new(2, vec![k.one(), k.zero(), k.one()]);
        assert_eq!(both(&k, &c, 2), vec![-k.theta(), k.theta()]);
        assert!(matches!(roots_reference(&k, &KPoly::zero(2), &BigInt::one()), Err(Error::ZeroPolynomial)));
        assert!(matches!(roots_hensel(&k, &KPoly::zero(2), &BigInt::one()), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn roots_outside_ball_and_repeated() {
        let k = gauss();
        let inside = k.element(&[1, -1]);
        let outside = k.element(&[70, 0]);
        let half = FieldElement::new(vec![1.into(), 0.into()], 2.into());
        let c = KPoly::from_roots(&k, &[inside.clone(), inside.clone(), outside, half]).scale(&k, &k.element(&[2, 1]));
        assert_eq!(both(&k, &c, 65), vec![inside]);
    }

    #[test]
    fn cubic_field() {
        let k = NumberField::from_i64(&[-2, 0, 0, 1]).unwrap();
        let m1 = k.element(&[1, 1, -1]);
        let m2 = k.element(&[0, 2, 1]);
        let c = KPoly::from_roots(&k, &[m1.clone(), m2.clone()]);
        let mut want = vec![m1, m2];
        want.sort_by(|a, b| a.coords().cmp(b.coords()));
        assert_eq!(both(&k, &c, 10), want);
    }

    #[test]
    fn lifting() {
        let q = BigInt::from(5);
        let f = vec![BigInt::from(1), BigInt::zero(), BigInt::one()];
        let r = hensel_lift(&f, &BigInt::from(2), &q, 6);
        let m = num_traits::pow(q, 6);
        assert!(eval_mod(&f, &r, &m).is_zero());
    }
}
