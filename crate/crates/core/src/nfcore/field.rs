use log::warn;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::embed::{certified_roots, ComplexBall};
use super::poly::{self, degree, div_exact};
use super::FieldElement;
use crate::error::{Error, Result};
use crate::real::{f64_down, f64_up, sqrt_lower, sqrt_upper, Enclosure};
use crate::zlattice::{enumerate_ball, solve_rational_rows, GramForm, IntMatrix};

/// Starting precision for the complex embeddings.
pub const EMBEDDING_BITS: u32 = 128;

/// Largest degree for which irreducibility is decided by the factor search.
const IRREDUCIBILITY_MAX_DEGREE: usize = 10;

/// Precision ceiling when deciding ball membership for inexact `T₂`.
const MAX_REFINE_BITS: u32 = 4096;

/// The field `Q[t]/(f)` with `f` monic and irreducible.
#[derive(Clone, Debug)]
pub struct NumberField {
    poly: Vec<BigInt>,
    degree: usize,
    disc: BigInt,
    r1: usize,
    r2: usize,
    embeddings: Vec<ComplexBall>,
    embed_bits: u32,
    /// `θ^{d+k}` in the power basis, `k = 0..d−1`.
    reduction: Vec<Vec<BigInt>>,
    /// `Tr(θ^u)`, `u = 0..d−1`.
    traces: Vec<BigInt>,
    /// Image of `θ` under complex conjugation when that is a field
    /// automorphism we can write down (totally real or quadratic fields).
    conj_theta: Option<FieldElement>,
    t2: GramForm,
}

/// Certified enclosure of `‖x‖² = T₂(x, x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct T2Norm {
    pub sq: Enclosure,
}

impl T2Norm {
    pub fn lower(&self) -> f64 {
        f64_down(&sqrt_lower(&self.sq.lo.clone().max(BigRational::zero()), 64)).max(0.0)
    }

    pub fn upper(&self) -> f64 {
        f64_up(&sqrt_upper(&self.sq.hi, 64))
    }

    /// Rational upper bound for `‖x‖`.
    pub fn upper_rational(&self) -> BigRational {
        sqrt_upper(&self.sq.hi, 80)
    }

    pub fn is_exact(&self) -> bool {
        self.sq.is_exact()
    }
}

impl NumberField {
    /// Builds the field from the ascending coefficients of a monic
    /// irreducible integer polynomial.
    pub fn new(poly: Vec<BigInt>) -> Result<Self> {
        let poly = poly::trim(poly);
        if !poly::is_monic(&poly) {
            return Err(Error::NotMonic);
        }
        let d = degree(&poly).unwrap();
        if d == 0 {
            return Err(Error::ZeroDegree);
        }
        let disc = poly::discriminant(&poly)?;
        if disc.is_zero() {
            return Err(Error::Reducible);
        }
        let r1 = poly::count_real_roots(&poly);
        let r2 = (d - r1) / 2;
        let (embeddings, embed_bits) = certified_roots(&poly, r1, EMBEDDING_BITS);
        if has_rational_factor(&poly, &embeddings)? {
            return Err(Error::Reducible);
        }

        let mut reduction = Vec::with_capacity(d);
        let mut cur: Vec<BigInt> = poly[..d].iter().map(|c| -c).collect();
        for _ in 0..d {
            reduction.push(cur.clone());
            // multiply by θ
            let top = cur[d - 1].clone();
            let mut next = vec![BigInt::zero(); d];
            next[1..d].clone_from_slice(&cur[..d - 1]);
            for u in 0..d {
                next[u] -= &top * &poly[u];
            }
            cur = next;
        }

        let mut k = NumberField {
            poly,
            degree: d,
            disc,
            r1,
            r2,
            embeddings,
            embed_bits,
            reduction,
            traces: Vec::new(),
            conj_theta: None,
            t2: GramForm::standard(d),
        };
        k.traces = (0..d)
            .map(|u| {
                let mut e = vec![BigInt::zero(); d];
                e[u] = BigInt::one();
                let m = k.mult_matrix(&FieldElement::integral(e));
                (0..d).map(|i| m[i][i].numer().clone()).sum()
            })
            .collect();
        k.conj_theta = if r2 == 0 {
            Some(k.theta())
        } else if d == 2 {
            Some(FieldElement::integral(vec![-k.poly[1].clone(), BigInt::from(-1)]))
        } else {
            None
        };
        k.t2 = match &k.conj_theta {
            Some(s) => k.exact_t2(s),
            None => k.numeric_t2(&k.embeddings.clone(), k.embed_bits),
        };
        Ok(k)
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| c.into()).collect())
    }

    pub fn poly(&self) -> &[BigInt] {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    /// `(r1, r2)`.
    pub fn signature(&self) -> (usize, usize) {
        (self.r1, self.r2)
    }

    pub fn embeddings(&self) -> &[ComplexBall] {
        &self.embeddings
    }

    /// Gram matrix of `T₂` on the power basis.
    pub fn t2_form(&self) -> &GramForm {
        &self.t2
    }

    pub fn has_exact_t2(&self) -> bool {
        self.t2.is_exact()
    }

    /// `T₂` Gram matrix recomputed from embeddings isolated to at least
    /// `bits` bits. Exact forms are returned unchanged.
    pub fn t2_form_at(&self, bits: u32) -> GramForm {
        if self.t2.is_exact() || bits <= self.embed_bits {
            return self.t2.clone();
        }
        let (roots, got) = certified_roots(&self.poly, self.r1, bits);
        self.numeric_t2(&roots, got)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::zero(self.degree)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::one(self.degree)
    }

    pub fn from_int(&self, n: impl Into<BigInt>) -> FieldElement {
        FieldElement::from_int(self.degree, n.into())
    }

    pub fn theta(&self) -> FieldElement {
        let mut c = vec![BigInt::zero(); self.degree];
        if self.degree == 1 {
            c[0] = -self.poly[0].clone();
        } else {
            c[1] = BigInt::one();
        }
        FieldElement::integral(c)
    }

    /// Element from power-basis coordinates (padded or checked to length `d`).
    pub fn element(&self, coords: &[i64]) -> FieldElement {
        assert!(coords.len() <= self.degree, "too many coordinates");
        let mut c: Vec<BigInt> = coords.iter().map(|&x| x.into()).collect();
        c.resize(self.degree, BigInt::zero());
        FieldElement::integral(c)
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let d = self.degree;
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.coords().iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords().iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<BigInt> = prod[..d].to_vec();
        for (k, c) in prod[d..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for u in 0..d {
                out[u] += c * &self.reduction[k][u];
            }
        }
        FieldElement::new(out, a.denom() * b.denom())
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Rows are the power-basis coordinates of `θ^u·a`, `u = 0..d−1`.
    pub fn mult_matrix(&self, a: &FieldElement) -> Vec<Vec<BigRational>> {
        let mut rows = Vec::with_capacity(self.degree);
        let mut cur = a.clone();
        let theta = self.theta();
        for u in 0..self.degree {
            rows.push(cur.to_rationals());
            if u + 1 < self.degree {
                cur = self.mul(&cur, &theta);
            }
        }
        rows
    }

    /// Integer multiplication matrix of an integral element.
    pub fn mult_matrix_int(&self, a: &FieldElement) -> IntMatrix {
        assert!(a.is_integral());
        let rows = self
            .mult_matrix(a)
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.to_integer()).collect())
            .collect();
        IntMatrix::from_rows(self.degree, rows)
    }

    pub fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        let mut e = vec![BigRational::zero(); self.degree];
        e[0] = BigRational::one();
        solve_rational_rows(&self.mult_matrix(a), &e).map(|y| FieldElement::from_rationals(&y))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    pub fn trace(&self, a: &FieldElement) -> BigRational {
        let s: BigInt = a.coords().iter().zip(&self.traces).map(|(c, t)| c * t).sum();
        BigRational::new(s, a.denom().clone())
    }

    /// `𝒩(x) = ∏|θ_i(x)|`, via `Res(f, x(t)) / denom^d`.
    pub fn abs_norm(&self, a: &FieldElement) -> BigRational {
        let r = poly::resultant(&self.poly, a.coords()).abs();
        BigRational::new(r, num_traits::pow(a.denom().clone(), self.degree))
    }

    pub fn t2_norm_sq(&self, a: &FieldElement) -> Enclosure {
        self.t2.enclose_rational(&a.to_rationals())
    }

    pub fn t2_norm(&self, a: &FieldElement) -> T2Norm {
        T2Norm { sq: self.t2_norm_sq(a) }
    }

    /// Certified `max_i |θ_i(x)|` upper bound, from the isolating discs.
    pub fn max_embedding_upper(&self, a: &FieldElement) -> f64 {
        let mut best = 0.0f64;
        for z in &self.embeddings {
            // Horner on the disc center with an error bound that grows
            // with the disc radius
            let q = a.to_rationals();
            let zr = f64_up(&z.re.abs());
            let zi = f64_up(&z.im.abs());
            let r = f64_up(&z.radius);
            let modulus = (zr * zr + zi * zi).sqrt() + r;
            let bound: f64 = q.iter().enumerate().map(|(u, c)| f64_up(&c.abs()) * modulus.powi(u as i32)).sum();
            best = best.max(bound);
        }
        crate::real::slack_up(best)
    }

    /// All integral elements with `‖x‖² ≤ radius_sq`, lexicographic in the
    /// power-basis coordinates.
    pub fn elements_in_ball(&self, radius_sq: &BigRational) -> Vec<FieldElement> {
        let basis = IntMatrix::identity(self.degree);
        let mut pts = enumerate_ball(&basis, &self.t2, radius_sq);
        if !self.t2.is_exact() {
            pts = self.refine_ball(pts, radius_sq);
        }
        pts.into_iter().map(FieldElement::integral).collect()
    }

    /// Whether `‖x‖² ≤ radius_sq`, refining the embeddings when the
    /// enclosure straddles the boundary. Undecidable points count as inside.
    pub fn in_ball(&self, x: &FieldElement, radius_sq: &BigRational) -> bool {
        let q = x.to_rationals();
        let mut bits = self.embed_bits;
        let mut form = self.t2.clone();
        loop {
            let e = form.enclose_rational(&q);
            if &e.hi <= radius_sq {
                return true;
            }
            if &e.lo > radius_sq {
                return false;
            }
            if bits >= MAX_REFINE_BITS {
                warn!("ball membership of {x} could not be decided; keeping it");
                return true;
            }
            bits *= 2;
            form = self.t2_form_at(bits);
        }
    }

    fn refine_ball(&self, candidates: Vec<Vec<BigInt>>, radius_sq: &BigRational) -> Vec<Vec<BigInt>> {
        let mut inside = Vec::new();
        let mut open = candidates;
        let mut bits = self.embed_bits;
        loop {
            let form = self.t2_form_at(bits);
            let mut still = Vec::new();
            for x in open {
                let e = form.enclose(&x);
                if &e.hi <= radius_sq {
                    inside.push(x);
                } else if &e.lo <= radius_sq {
                    still.push(x);
                }
            }
            open = still;
            if open.is_empty() || bits >= MAX_REFINE_BITS {
                break;
            }
            bits *= 2;
        }
        if !open.is_empty() {
            warn!("{} points on the ball boundary could not be decided; keeping them", open.len());
            inside.extend(open);
        }
        inside.sort();
        inside
    }

    fn exact_t2(&self, conj_theta: &FieldElement) -> GramForm {
        let d = self.degree;
        let powers: Vec<FieldElement> = (0..d).map(|u| self.pow(&self.theta(), u as u64)).collect();
        let conj: Vec<FieldElement> = (0..d).map(|u| self.pow(conj_theta, u as u64)).collect();
        let g = (0..d)
            .map(|i| (0..d).map(|j| self.trace(&self.mul(&powers[i], &conj[j]))).collect())
            .collect();
        GramForm::exact(g)
    }

    fn numeric_t2(&self, roots: &[ComplexBall], bits: u32) -> GramForm {
        let d = self.degree;
        let mut g = vec![vec![BigRational::zero(); d]; d];
        let mut radius = BigRational::zero();
        let mut per_exp = vec![BigRational::zero(); 2 * d - 1];
        for z in roots {
            let mut pw: Vec<(BigRational, BigRational)> = vec![(BigRational::one(), BigRational::zero())];
            for _ in 1..d {
                let (a, b) = pw.last().unwrap().clone();
                pw.push((&a * &z.re - &b * &z.im, &a * &z.im + &b * &z.re));
            }
            for i in 0..d {
                for j in 0..d {
                    // Re(z^i · conj(z^j))
                    g[i][j] += &pw[i].0 * &pw[j].0 + &pw[i].1 * &pw[j].1;
                }
            }
            let modulus = sqrt_upper(&(&z.re * &z.re + &z.im * &z.im), bits);
            let grown = &modulus + &z.radius;
            for (m, slot) in per_exp.iter_mut().enumerate() {
                *slot += num_traits::pow(grown.clone(), m) - num_traits::pow(modulus.clone(), m);
            }
        }
        for v in per_exp {
            if v > radius {
                radius = v;
            }
        }
        // round the center to a dyadic grid
        let grid = BigInt::one() << bits;
        for row in g.iter_mut() {
            for x in row.iter_mut() {
                let scaled = &*x * BigRational::from_integer(grid.clone());
                *x = BigRational::new(scaled.round().to_integer(), grid.clone());
            }
        }
        for i in 0..d {
            for j in 0..i {
                let avg = (&g[i][j] + &g[j][i]) / BigRational::from_integer(2.into());
                g[i][j] = avg.clone();
                g[j][i] = avg;
            }
        }
        radius += BigRational::new(BigInt::one(), grid);
        GramForm::with_radius(g, radius)
    }
}

fn has_rational_factor(f: &[BigInt], roots: &[ComplexBall]) -> Result<bool> {
    let d = roots.len();
    if d > IRREDUCIBILITY_MAX_DEGREE {
        warn!("irreducibility of a degree-{d} polynomial is not checked");
        return Ok(false);
    }
    let half = BigRational::new(1.into(), 2.into());
    for mask in 1u32..(1 << d) {
        let size = mask.count_ones() as usize;
        if size > d / 2 {
            continue;
        }
        // ∏ (x − z_k) over the subset
        let mut re = vec![BigRational::one()];
        let mut im = vec![BigRational::zero()];
        for (k, z) in roots.iter().enumerate() {
            if mask & (1 << k) == 0 {
                continue;
            }
            let mut nre = vec![BigRational::zero(); re.len() + 1];
            let mut nim = vec![BigRational::zero(); re.len() + 1];
            for u in 0..re.len() {
                nre[u + 1] += &re[u];
                nim[u + 1] += &im[u];
                nre[u] -= &re[u] * &z.re - &im[u] * &z.im;
                nim[u] -= &re[u] * &z.im + &im[u] * &z.re;
            }
            re = nre;
            im = nim;
        }
        if im.iter().any(|x| x.abs() > half) {
            continue;
        }
        let g: Vec<BigInt> = re.iter().map(|x| (x + &half).floor().to_integer()).collect();
        if div_exact(f, &g).is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}
