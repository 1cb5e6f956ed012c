use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::nfcore::{FieldElement, NumberField};
use crate::zlattice::{hnf, kernel_rows, lll_reduce_default, solve_in_span, IntMatrix};

/// A nonzero fractional ideal `L / denom`, where `L ⊂ Zᵈ` is a full-rank
/// lattice of power-basis coordinates in row HNF.
///
/// The representation is canonical: `gcd(L, denom) = 1`, so structural
/// equality is ideal equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FractionalIdeal {
    lattice: IntMatrix,
    denom: BigInt,
}

impl FractionalIdeal {
    /// `O_K` for a field of degree `d`.
    pub fn unit(d: usize) -> Self {
        Self { lattice: IntMatrix::identity(d), denom: BigInt::one() }
    }

    /// Ideal with the given Z-basis (or Z-generating set) `rows / denom`.
    ///
    /// The caller is responsible for `O_K`-stability; use
    /// [`FractionalIdeal::from_generators`] when only `O_K`-generators are known.
    pub fn from_z_rows(d: usize, rows: Vec<Vec<BigInt>>, denom: BigInt) -> Result<Self> {
        let h = hnf(&IntMatrix::from_rows(d, rows));
        if h.rows() != d {
            return Err(Error::ZeroIdeal);
        }
        Ok(Self::normalized(h, denom))
    }

    /// The `O_K`-module generated by `gens`.
    pub fn from_generators(k: &NumberField, gens: &[FieldElement]) -> Result<Self> {
        let d = k.degree();
        let den = gens.iter().fold(BigInt::one(), |acc, g| acc.lcm(g.denom()));
        let mut rows = Vec::with_capacity(gens.len() * d);
        let theta = k.theta();
        for g in gens {
            let mut cur = g.clone();
            for u in 0..d {
                rows.push(integer_coords(&cur, &den));
                if u + 1 < d {
                    cur = k.mul(&cur, &theta);
                }
            }
        }
        Self::from_z_rows(d, rows, den)
    }

    pub fn principal(k: &NumberField, x: &FieldElement) -> Result<Self> {
        Self::from_generators(k, std::slice::from_ref(x))
    }

    fn normalized(lattice: IntMatrix, denom: BigInt) -> Self {
        let mut g = denom.clone();
        for i in 0..lattice.rows() {
            for x in lattice.row(i) {
                g = g.gcd(x);
            }
        }
        if denom.is_negative() {
            g = -g;
        }
        if g.is_one() {
            return Self { lattice, denom };
        }
        let rows = lattice.to_rows().into_iter().map(|r| r.into_iter().map(|x| x / &g).collect()).collect();
        Self { lattice: IntMatrix::from_rows(lattice.cols(), rows), denom: denom / g }
    }

    pub fn degree(&self) -> usize {
        self.lattice.cols()
    }

    pub fn lattice(&self) -> &IntMatrix {
        &self.lattice
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn is_integral(&self) -> bool {
        self.denom.is_one()
    }

    pub fn is_unit(&self) -> bool {
        self.is_integral() && self.lattice == IntMatrix::identity(self.degree())
    }

    /// The HNF basis rows as field elements.
    pub fn basis(&self) -> Vec<FieldElement> {
        self.lattice.to_rows().into_iter().map(|r| FieldElement::new(r, self.denom.clone())).collect()
    }

    /// A Z-basis reduced by LLL under `T₂`.
    pub fn reduced_basis(&self, k: &NumberField) -> Vec<FieldElement> {
        let red = lll_reduce_default(&self.lattice, k.t2_form()).expect("ideal lattice has full rank");
        red.to_rows().into_iter().map(|r| FieldElement::new(r, self.denom.clone())).collect()
    }

    /// `𝒩(I) = |det L| / denom^d`.
    pub fn norm(&self) -> BigRational {
        let det: BigInt = (0..self.degree()).map(|i| self.lattice[(i, i)].clone()).product();
        BigRational::new(det.abs(), num_traits::pow(self.denom.clone(), self.degree()))
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        let scaled: Vec<BigInt> = x.coords().iter().map(|c| c * &self.denom).collect();
        if scaled.iter().any(|c| !c.is_multiple_of(x.denom())) {
            return false;
        }
        let v: Vec<BigInt> = scaled.into_iter().map(|c| c / x.denom()).collect();
        solve_in_span(&self.lattice, &v).is_some()
    }

    /// Whether `self ⊆ other`.
    pub fn is_subset_of(&self, other: &FractionalIdeal) -> bool {
        self.basis().iter().all(|b| other.contains(b))
    }

    pub fn add(&self, other: &FractionalIdeal) -> FractionalIdeal {
        let den = self.denom.lcm(&other.denom);
        let mut rows = scaled_rows(&self.lattice, &(&den / &self.denom));
        rows.extend(scaled_rows(&other.lattice, &(&den / &other.denom)));
        Self::from_z_rows(self.degree(), rows, den).expect("sum of nonzero ideals")
    }

    pub fn mul(&self, k: &NumberField, other: &FractionalIdeal) -> FractionalIdeal {
        let d = self.degree();
        let a: Vec<FieldElement> = self.lattice.to_rows().into_iter().map(FieldElement::integral).collect();
        let b: Vec<FieldElement> = other.lattice.to_rows().into_iter().map(FieldElement::integral).collect();
        let mut rows = Vec::with_capacity(d * d);
        for x in &a {
            for y in &b {
                rows.push(k.mul(x, y).coords().to_vec());
            }
        }
        Self::from_z_rows(d, rows, &self.denom * &other.denom).expect("product of nonzero ideals")
    }

    /// `x·I` for nonzero `x`.
    pub fn scale(&self, k: &NumberField, x: &FieldElement) -> Result<FractionalIdeal> {
        if x.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let num = FieldElement::integral(x.coords().to_vec());
        let rows: Vec<Vec<BigInt>> = self
            .lattice
            .to_rows()
            .into_iter()
            .map(|r| k.mul(&FieldElement::integral(r), &num).coords().to_vec())
            .collect();
        Self::from_z_rows(self.degree(), rows, &self.denom * x.denom())
    }

    pub fn scale_rational(&self, q: &BigRational) -> Result<FractionalIdeal> {
        if q.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let num = q.numer().abs();
        Ok(Self::normalized(
            IntMatrix::from_rows(self.degree(), scaled_rows(&self.lattice, &num)),
            &self.denom * q.denom().abs(),
        ))
    }

    /// `I⁻¹ = {x ∈ K : x·I ⊆ O_K}`.
    pub fn inverse(&self, k: &NumberField) -> FractionalIdeal {
        let d = self.degree();
        // integral part L: a = [O_K : L] lies in L, so L⁻¹ ⊆ a⁻¹·O_K and
        // L⁻¹ = Y / a with Y = {y : y·b ≡ 0 (mod a) for every basis row b}
        let a: BigInt = (0..d).map(|i| self.lattice[(i, i)].clone()).product();
        let mut big = IntMatrix::zeros(d + d * d, d * d);
        for (bi, row) in self.lattice.to_rows().into_iter().enumerate() {
            let m = k.mult_matrix_int(&FieldElement::integral(row));
            for u in 0..d {
                for v in 0..d {
                    big[(u, bi * d + v)] = m[(u, v)].clone();
                }
            }
        }
        for j in 0..d * d {
            big[(d + j, j)] = a.clone();
        }
        let ker = kernel_rows(&big);
        let rows: Vec<Vec<BigInt>> = ker.to_rows().into_iter().map(|r| r[..d].to_vec()).collect();
        // (L/den)⁻¹ = den·L⁻¹ = den·Y/a
        let y = hnf(&IntMatrix::from_rows(d, rows));
        let out = Self::normalized(IntMatrix::from_rows(d, scaled_rows(&y, &self.denom)), a);
        debug_assert!(out.mul(k, self).is_unit());
        out
    }

    /// `I^e`; negative exponents go through the inverse.
    pub fn pow(&self, k: &NumberField, e: i64) -> FractionalIdeal {
        let base = if e < 0 { self.inverse(k) } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::unit(self.degree());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(k, &b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(k, &b);
            }
        }
        acc
    }

    /// `I / J = I·J⁻¹`.
    pub fn div(&self, k: &NumberField, other: &FractionalIdeal) -> FractionalIdeal {
        self.mul(k, &other.inverse(k))
    }

    /// Canonical representative of `x` modulo the lattice of `self`.
    pub fn reduce(&self, x: &FieldElement) -> FieldElement {
        let den = self.denom.lcm(x.denom());
        let lat = scaled_rows(&self.lattice, &(&den / &self.denom));
        let mut v = integer_coords(x, &den);
        for (i, row) in lat.iter().enumerate() {
            let q = v[i].div_floor(&row[i]);
            if !q.is_zero() {
                for (vj, rj) in v.iter_mut().zip(row) {
                    *vj -= &q * rj;
                }
            }
        }
        FieldElement::new(v, den)
    }

    /// Smallest positive integer in the ideal, scaled by `denom`: the
    /// rational `min(I ∩ Q_{>0})`.
    pub fn min_rational(&self) -> BigRational {
        // the first coordinate of the last HNF row spans I ∩ Z for integral L
        let d = self.degree();
        let mut g = BigInt::zero();
        let h = &self.lattice;
        // I ∩ Q = {x·e0}: solve by kernel on columns 1..d
        let cols: Vec<Vec<BigInt>> = (0..d).map(|i| h.row(i)[1..].to_vec()).collect();
        let ker = kernel_rows(&IntMatrix::from_rows(d - 1, cols));
        for r in ker.to_rows() {
            let first: BigInt = r.iter().zip(0..d).map(|(c, i)| c * &h[(i, 0)]).sum();
            g = g.gcd(&first);
        }
        BigRational::new(g, self.denom.clone())
    }
}

fn integer_coords(x: &FieldElement, den: &BigInt) -> Vec<BigInt> {
    let f = den / x.denom();
    x.coords().iter().map(|c| c * &f).collect()
}

fn scaled_rows(m: &IntMatrix, s: &BigInt) -> Vec<Vec<BigInt>> {
    m.to_rows().into_iter().map(|r| r.into_iter().map(|x| x * s).collect()).collect()
}

impl fmt::Debug for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal(")?;
        if !self.denom.is_one() {
            write!(f, "1/{} · ", self.denom)?;
        }
        write!(f, "{:?})", self.lattice)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss() -> NumberField {
        NumberField::from_i64(&[1, 0, 1]).unwrap()
    }

    fn ideal(k: &NumberField, p: i64, r: i64) -> FractionalIdeal {
        FractionalIdeal::from_generators(k, &[k.element(&[p]), k.element(&[-r, 1])]).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn split_primes_multiply_to_five() {
        let k = gauss();
        let a = ideal(&k, 5, 2);
        let b = ideal(&k, 5, 3);
        assert_eq!(a.norm(), q(5));
        assert_eq!(a.mul(&k, &b), FractionalIdeal::principal(&k, &k.element(&[5])).unwrap());
        assert_eq!(a.mul(&k, &FractionalIdeal::unit(2)), a);
        assert!(a.add(&FractionalIdeal::unit(2)).is_unit());
        assert_eq!(a.pow(&k, 2).norm(), q(25));
        assert!(a.pow(&k, 0).is_unit());
    }

    #[test]
    fn inverse_of_prime() {
        let k = gauss();
        let a = ideal(&k, 5, 2);
        let inv = a.inverse(&k);
        assert_eq!(inv.denom(), &BigInt::from(5));
        assert_eq!(inv, ideal(&k, 5, -2).scale_rational(&BigRational::new(1.into(), 5.into())).unwrap());
        assert!(inv.mul(&k, &a).is_unit());
        let two = FractionalIdeal::principal(&k, &k.element(&[2])).unwrap();
        assert_eq!(two.inverse(&k), FractionalIdeal::unit(2).scale_rational(&BigRational::new(1.into(), 2.into())).unwrap());
        assert!(FractionalIdeal::unit(2).inverse(&k).is_unit());
        assert_eq!(a.pow(&k, -1), inv);
    }

    #[test]
    fn membership_and_norms() {
        let k = gauss();
        let a = ideal(&k, 5, 2);
        assert!(a.contains(&k.zero()));
        assert!(a.contains(&k.element(&[5])));
        assert!(!a.contains(&k.one()));
        assert!(a.contains(&k.element(&[-2, 1])));
        assert!(FractionalIdeal::unit(2).contains(&k.element(&[7, -3])));
        let two = FractionalIdeal::principal(&k, &k.element(&[2])).unwrap();
        assert_eq!(two.norm(), q(4));
        assert!(!two.contains(&FieldElement::new(vec![1.into(), 0.into()], 2.into())));
        assert!(two.inverse(&k).contains(&FieldElement::new(vec![1.into(), 0.into()], 2.into())));
    }

    #[test]
    fn norm_matches_coset_count() {
        let k = gauss();
        let a = ideal(&k, 13, 5).mul(&k, &ideal(&k, 5, 2));
        let n = 65i64;
        let mut reps = std::collections::HashSet::new();
        for x in 0..n {
            for y in 0..n {
                reps.insert(a.reduce(&k.element(&[x, y])));
            }
        }
        assert_eq!(BigRational::from_integer(reps.len().into()), a.norm());
    }

    #[test]
    fn reduce_and_minimum() {
        let k = gauss();
        let a = ideal(&k, 5, 2);
        let x = k.element(&[17, 4]);
        let r = a.reduce(&x);
        assert!(a.contains(&(&x - &r)));
        assert_eq!(a.min_rational(), q(5));
        let half = FractionalIdeal::unit(2).scale_rational(&BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(half.min_rational(), BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn scaling_by_fractions() {
        let k = gauss();
        let a = ideal(&k, 5, 2);
        let x = FieldElement::new(vec![2.into(), 1.into()], 5.into());
        let s = a.scale(&k, &x).unwrap();
        for b in a.basis() {
            assert!(s.contains(&k.mul(&b, &x)));
        }
        assert_eq!(s.norm(), a.norm() * k.abs_norm(&x));
    }

    #[test]
    fn cubic_inverse() {
        let k = NumberField::from_i64(&[-2, 0, 0, 1]).unwrap();
        // 5 splits as (5, θ − 3)·(degree-two prime) since 3³ ≡ 2 mod 5
        let p = FractionalIdeal::from_generators(&k, &[k.element(&[5]), k.element(&[-3, 1])]).unwrap();
        assert_eq!(p.norm(), q(5));
        assert!(p.inverse(&k).mul(&k, &p).is_unit());
        assert_eq!(p.pow(&k, 3).norm(), q(125));
    }
}
