use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ideals::FractionalIdeal;
use crate::nfcore::{FieldElement, NumberField};
use crate::zlattice::{hnf, IntMatrix};

/// A row of a pseudo-matrix: the module it contributes is `ideal · vector`.
pub type PseudoRow = (Vec<FieldElement>, FractionalIdeal);

/// Finitely generated `O_K`-submodule of `Kʷ` given as `Σ 𝔞ᵢ·vᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoMatrix {
    width: usize,
    rows: Vec<PseudoRow>,
    /// Pivot column of each row when the matrix is in pseudo-HNF.
    pivots: Option<Vec<usize>>,
}

impl PseudoMatrix {
    pub fn new(width: usize, rows: Vec<PseudoRow>) -> Result<Self> {
        for (v, _) in &rows {
            if v.len() != width {
                return Err(Error::DimensionMismatch { expected: width, got: v.len() });
            }
        }
        Ok(Self { width, rows, pivots: None })
    }

    /// `O_Kʷ` with the standard pseudo-basis.
    pub fn free(d: usize, width: usize) -> Self {
        let rows = (0..width)
            .map(|i| {
                let v = (0..width)
                    .map(|j| if i == j { FieldElement::one(d) } else { FieldElement::zero(d) })
                    .collect();
                (v, FractionalIdeal::unit(d))
            })
            .collect();
        Self { width, rows, pivots: Some((0..width).collect()) }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[PseudoRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_hnf(&self) -> bool {
        self.pivots.is_some()
    }

    pub fn pivots(&self) -> Option<&[usize]> {
        self.pivots.as_deref()
    }

    /// `O_K`-generators `α·vᵢ` for `α` running over a Z-basis of each `𝔞ᵢ`.
    pub fn generators(&self, k: &NumberField) -> Vec<Vec<FieldElement>> {
        let mut out = Vec::new();
        for (v, a) in &self.rows {
            for alpha in a.basis() {
                out.push(scale_vec(k, v, &alpha));
            }
        }
        out
    }

    /// Triangular pseudo-basis of the same module: row `i` has a 1 in its
    /// pivot column, zeros to the left, and entries above each pivot reduced
    /// modulo the quotient of the two row ideals.
    pub fn pseudo_hnf(&self, k: &NumberField) -> PseudoMatrix {
        if self.is_hnf() {
            return self.clone();
        }
        let mut rows: Vec<PseudoRow> =
            self.rows.iter().filter(|(v, _)| !v.iter().all(FieldElement::is_zero)).cloned().collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for j in 0..self.width {
            if r >= rows.len() {
                break;
            }
            let Some(i0) = (r..rows.len()).find(|&i| !rows[i].0[j].is_zero()) else {
                continue;
            };
            rows.swap(r, i0);
            let beta = rows[r].0[j].clone();
            let inv = k.inv(&beta).unwrap();
            rows[r].0 = scale_vec(k, &rows[r].0, &inv);
            rows[r].1 = rows[r].1.scale(k, &beta).unwrap();
            for i in r + 1..rows.len() {
                let beta = rows[i].0[j].clone();
                if beta.is_zero() {
                    continue;
                }
                let (p, a) = rows[r].clone();
                let (b, bi) = rows[i].clone();
                let bb = bi.scale(k, &beta).unwrap();
                let delta = a.add(&bb);
                let dinv = delta.inverse(k);
                let (x, y) = idempotent_split(k, &a.mul(k, &dinv), &bb.mul(k, &dinv))
                    .expect("𝔞𝔡⁻¹ and β𝔟𝔡⁻¹ are coprime integral ideals");
                let v = k.div(&y, &beta).unwrap();
                let new_p = add_vec(&scale_vec(k, &p, &x), &scale_vec(k, &b, &v));
                let new_b = sub_vec(&b, &scale_vec(k, &p, &beta));
                let new_ideal = a.mul(k, &bi).mul(k, &dinv);
                rows[r] = (new_p, delta);
                rows[i] = (new_b, new_ideal);
            }
            pivots.push(j);
            r += 1;
        }
        rows.truncate(r);
        for kk in 0..r {
            let j = pivots[kk];
            for i in 0..kk {
                let e = rows[i].0[j].clone();
                if e.is_zero() {
                    continue;
                }
                let quotient = rows[kk].1.div(k, &rows[i].1);
                let q = &e - &quotient.reduce(&e);
                if !q.is_zero() {
                    rows[i].0 = sub_vec(&rows[i].0, &scale_vec(k, &rows[kk].0, &q));
                }
            }
        }
        PseudoMatrix { width: self.width, rows, pivots: Some(pivots) }
    }

    pub fn rank(&self, k: &NumberField) -> usize {
        self.pseudo_hnf(k).rows.len()
    }

    /// Whether `v` lies in the module.
    pub fn contains(&self, k: &NumberField, v: &[FieldElement]) -> Result<bool> {
        if v.len() != self.width {
            return Err(Error::DimensionMismatch { expected: self.width, got: v.len() });
        }
        let owned;
        let h = if self.is_hnf() {
            self
        } else {
            owned = self.pseudo_hnf(k);
            &owned
        };
        let mut rest = v.to_vec();
        for ((row, ideal), &j) in h.rows.iter().zip(h.pivots.as_ref().unwrap()) {
            let c = rest[j].clone();
            if !ideal.contains(&c) {
                return Ok(false);
            }
            if !c.is_zero() {
                rest = sub_vec(&rest, &scale_vec(k, row, &c));
            }
        }
        Ok(rest.iter().all(FieldElement::is_zero))
    }

    /// Whether every generator of `self` lies in `other`.
    pub fn is_submodule_of(&self, k: &NumberField, other: &PseudoMatrix) -> Result<bool> {
        let h = other.pseudo_hnf(k);
        for g in self.generators(k) {
            if !h.contains(k, &g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, k: &NumberField, other: &PseudoMatrix) -> Result<PseudoMatrix> {
        self.check_width(other)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(PseudoMatrix::new(self.width, rows)?.pseudo_hnf(k))
    }

    /// `self ∩ other`, from the module `{(x + y, x) : x ∈ self, y ∈ other}`:
    /// its elements with vanishing first half are exactly `(0, x)` with
    /// `x ∈ self ∩ other`.
    pub fn intersect(&self, k: &NumberField, other: &PseudoMatrix) -> Result<PseudoMatrix> {
        self.check_width(other)?;
        let w = self.width;
        let zeros = vec![FieldElement::zero(k.degree()); w];
        let mut rows = Vec::with_capacity(self.rows.len() + other.rows.len());
        for (v, a) in &self.rows {
            rows.push(([v.clone(), v.clone()].concat(), a.clone()));
        }
        for (v, b) in &other.rows {
            rows.push(([v.clone(), zeros.clone()].concat(), b.clone()));
        }
        let h = PseudoMatrix::new(2 * w, rows)?.pseudo_hnf(k);
        let kept: Vec<PseudoRow> = h
            .rows
            .iter()
            .zip(h.pivots.as_ref().unwrap())
            .filter(|(_, &j)| j >= w)
            .map(|((v, a), _)| (v[w..].to_vec(), a.clone()))
            .collect();
        Ok(PseudoMatrix::new(w, kept)?.pseudo_hnf(k))
    }

    /// `det(A)·∏ 𝔞ᵢ` for a square pseudo-matrix of full rank.
    pub fn det_ideal(&self, k: &NumberField) -> Result<FractionalIdeal> {
        if self.rows.len() != self.width {
            return Err(Error::NotSquare);
        }
        let det = det_over_k(k, self.rows.iter().map(|(v, _)| v.clone()).collect());
        if det.is_zero() {
            return Err(Error::ZeroModule);
        }
        let mut out = FractionalIdeal::principal(k, &det)?;
        for (_, a) in &self.rows {
            out = out.mul(k, a);
        }
        Ok(out)
    }

    /// The module as a Z-lattice in `Q^{d·w}`: canonical `(HNF, denominator)`
    /// pair, so two modules are equal iff their pairs are.
    pub fn z_lattice(&self, k: &NumberField) -> (IntMatrix, BigInt) {
        let d = k.degree();
        let gens = self.generators(k);
        let den = gens.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let rows: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| g.iter().flat_map(|x| x.coords().iter().map(|c| c * (&den / x.denom()))).collect())
            .collect();
        let h = hnf(&IntMatrix::from_rows(d * self.width, rows));
        let mut g = den.clone();
        for i in 0..h.rows() {
            for x in h.row(i) {
                g = g.gcd(x);
            }
        }
        let rows = h.to_rows().into_iter().map(|r| r.into_iter().map(|x| x / &g).collect()).collect();
        (IntMatrix::from_rows(d * self.width, rows), den / g)
    }

    /// Module equality through the Z-lattice representation.
    pub fn same_module(&self, k: &NumberField, other: &PseudoMatrix) -> bool {
        self.width == other.width && self.z_lattice(k) == other.z_lattice(k)
    }

    fn check_width(&self, other: &PseudoMatrix) -> Result<()> {
        if self.width != other.width {
            return Err(Error::DimensionMismatch { expected: self.width, got: other.width });
        }
        Ok(())
    }
}

/// `(x, y)` with `x ∈ a`, `y ∈ b` and `x + y = 1`, for coprime integral ideals.
pub fn idempotent_split(
    k: &NumberField,
    a: &FractionalIdeal,
    b: &FractionalIdeal,
) -> Result<(FieldElement, FieldElement)> {
    if !a.is_integral() || !b.is_integral() {
        return Err(Error::NotCoprime);
    }
    let d = k.degree();
    // rows (α, α) for α ∈ a and (β, 0) for β ∈ b; the HNF row starting with
    // e₀ carries x = Σ sᵢαᵢ in its second half
    let mut rows = Vec::with_capacity(2 * d);
    for i in 0..d {
        let r = a.lattice().row(i);
        rows.push([r, r].concat());
    }
    for i in 0..d {
        let mut r = b.lattice().row(i).to_vec();
        r.resize(2 * d, BigInt::zero());
        rows.push(r);
    }
    let h = hnf(&IntMatrix::from_rows(2 * d, rows));
    let first = h.row(0);
    if !first[0].is_one() || first[1..d].iter().any(|x| !x.is_zero()) {
        return Err(Error::NotCoprime);
    }
    let x = FieldElement::integral(first[d..].to_vec());
    let x = a.mul(k, b).reduce(&x);
    let y = &k.one() - &x;
    debug_assert!(a.contains(&x) && b.contains(&y));
    Ok((x, y))
}

/// Determinant over `K` by Gaussian elimination.
pub fn det_over_k(k: &NumberField, mut m: Vec<Vec<FieldElement>>) -> FieldElement {
    let n = m.len();
    let mut det = k.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return k.zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det = k.mul(&det, &m[c][c]);
        let inv = k.inv(&m[c][c]).unwrap();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = k.mul(&m[i][c], &inv);
            let pivot_row = m[c].clone();
            for (x, y) in m[i].iter_mut().zip(&pivot_row).skip(c) {
                *x = &*x - &k.mul(&f, y);
            }
        }
    }
    det
}

pub(crate) fn scale_vec(k: &NumberField, v: &[FieldElement], x: &FieldElement) -> Vec<FieldElement> {
    v.iter().map(|e| k.mul(e, x)).collect()
}

pub(crate) fn add_vec(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub_vec(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}
