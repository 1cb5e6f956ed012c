use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::pseudo::scale_vec;
use super::{KPoly, PseudoMatrix};
use crate::error::{Error, Result};
use crate::nfcore::{FieldElement, NumberField};
use crate::real::sqrt_upper;
use crate::zlattice::{lll_reduce_default, GramForm, IntMatrix};

/// Bits of the dyadic grid used for certified square roots in coefficient bounds.
const SQRT_BITS: u32 = 64;

/// A module flattened into an integer lattice in `Z^{d·w}`.
///
/// A lattice vector `v` stands for the coefficient vector `v / denom`, column
/// block `j` holding the power-basis coordinates of the `j`-th entry.
#[derive(Clone, Debug)]
pub struct Flattened {
    pub basis: IntMatrix,
    pub form: GramForm,
    pub denom: BigInt,
    pub width: usize,
    pub degree: usize,
}

impl Flattened {
    /// The polynomial `Σ cⱼ yʲ` encoded by an ambient lattice vector.
    pub fn back_map(&self, v: &[BigInt]) -> KPoly {
        assert_eq!(v.len(), self.degree * self.width);
        let coeffs = v.chunks(self.degree).map(|c| FieldElement::new(c.to_vec(), self.denom.clone())).collect();
        KPoly::new(self.degree, coeffs)
    }

    /// Ambient vector of the lattice point with basis coordinates `x`.
    pub fn combine(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.basis.cols()];
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.basis.row(i)) {
                *o += c * b;
            }
        }
        out
    }
}

/// Flattens a pseudo-basis to the Z-lattice spanned by `α·vᵢ`, `α` running
/// over an LLL-reduced Z-basis of each `𝔞ᵢ`, with quadratic form
/// `Σⱼ scale[j]²·T₂(cⱼ)`.
pub fn flatten(k: &NumberField, pm: &PseudoMatrix, scale: &[BigRational]) -> Result<Flattened> {
    let w = pm.width();
    if scale.len() != w {
        return Err(Error::DimensionMismatch { expected: w, got: scale.len() });
    }
    let d = k.degree();
    let mut vecs = Vec::with_capacity(d * pm.len());
    for (v, a) in pm.rows() {
        for alpha in a.reduced_basis(k) {
            vecs.push(scale_vec(k, v, &alpha));
        }
    }
    let denom = vecs.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let rows = vecs
        .iter()
        .map(|g| g.iter().flat_map(|x| x.coords().iter().map(|c| c * (&denom / x.denom()))).collect())
        .collect();
    let basis = IntMatrix::from_rows(d * w, rows);
    let den_sq = BigRational::from_integer(&denom * &denom);
    let blocks: Vec<GramForm> = scale.iter().map(|s| k.t2_form().scaled(&(s * s / &den_sq))).collect();
    Ok(Flattened { basis, form: GramForm::block_diag(&blocks), denom, width: w, degree: d })
}

/// Certified upper bound `Σⱼ ‖cⱼ‖·Bʲ` for `‖c(m)‖` over `‖m‖ ≤ B`.
pub fn coefficient_bound(k: &NumberField, c: &KPoly, b: &BigInt) -> BigRational {
    let mut total = BigRational::zero();
    let mut bj = BigRational::one();
    let bq = BigRational::from_integer(b.clone());
    for cj in c.coeffs() {
        if !cj.is_zero() {
            total += sqrt_upper(&k.t2_norm_sq(cj).hi, SQRT_BITS) * &bj;
        }
        bj *= &bq;
    }
    total
}

/// A short decoding polynomial and its certified coefficient bound.
#[derive(Clone, Debug)]
pub struct ShortPoly {
    pub c: KPoly,
    pub f_actual: BigRational,
}

/// Short nonzero member of a module of polynomials of degree `≤ l`:
/// flatten with scale `(1, B, …, Bˡ)`, LLL-reduce, and keep the reduced
/// vector with the smallest certified bound `Σ ‖cⱼ‖·Bʲ`.
pub fn short_poly(k: &NumberField, pm: &PseudoMatrix, b: &BigInt, l: usize) -> Result<ShortPoly> {
    if pm.width() != l + 1 {
        return Err(Error::DimensionMismatch { expected: l + 1, got: pm.width() });
    }
    let h = pm.pseudo_hnf(k);
    if h.is_empty() {
        return Err(Error::ZeroModule);
    }
    let scale: Vec<BigRational> =
        (0..=l).map(|j| BigRational::from_integer(num_traits::pow(b.clone(), j))).collect();
    let flat = flatten(k, &h, &scale)?;
    let reduced = lll_reduce_default(&flat.basis, &flat.form)?;
    let mut best: Option<ShortPoly> = None;
    for i in 0..reduced.rows() {
        let c = flat.back_map(reduced.row(i));
        if c.is_zero() {
            continue;
        }
        let f = coefficient_bound(k, &c, b);
        if best.as_ref().is_none_or(|s| f < s.f_actual) {
            best = Some(ShortPoly { c, f_actual: f });
        }
    }
    best.ok_or(Error::ZeroModule)
}
