//! Exact integer lattice kernel: Hermite normal form, LLL reduction and
//! Fincke–Pohst enumeration.
//!
//! Bases are stored row-wise. Nothing in this module rounds.

mod enumerate;
mod hnf;
mod lll;

pub use enumerate::{enumerate_ball, enumerate_near};
pub use hnf::{hnf, hnf_keep_zero_rows, is_hnf, kernel_rows, solve_in_span};
pub use lll::{is_lll_reduced, lll_reduce, lll_reduce_default};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// Dense row-major matrix of big integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must share the length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Self { rows: n, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [BigInt] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Symmetric positive-definite quadratic form with an entrywise error radius.
///
/// The true form `G` satisfies `|G[i][j] − center[i][j]| ≤ radius` for every
/// entry. `radius == 0` means the form is exact.
#[derive(Clone, Debug, PartialEq)]
pub struct GramForm {
    center: Vec<Vec<BigRational>>,
    radius: BigRational,
}

impl GramForm {
    pub fn exact(center: Vec<Vec<BigRational>>) -> Self {
        Self::with_radius(center, BigRational::zero())
    }

    pub fn with_radius(center: Vec<Vec<BigRational>>, radius: BigRational) -> Self {
        let n = center.len();
        for (i, row) in center.iter().enumerate() {
            assert_eq!(row.len(), n, "Gram matrix must be square");
            for j in 0..i {
                assert_eq!(center[i][j], center[j][i], "Gram matrix must be symmetric");
            }
        }
        assert!(!radius.is_negative());
        Self { center, radius }
    }

    /// The standard Euclidean form of dimension `n`.
    pub fn standard(n: usize) -> Self {
        let center = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        Self::exact(center)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::exact(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn center(&self) -> &[Vec<BigRational>] {
        &self.center
    }

    pub fn radius(&self) -> &BigRational {
        &self.radius
    }

    pub fn is_exact(&self) -> bool {
        self.radius.is_zero()
    }

    /// `xᵀ·center·y`.
    pub fn inner(&self, x: &[BigInt], y: &[BigInt]) -> BigRational {
        let n = self.dim();
        assert!(x.len() == n && y.len() == n);
        let mut acc = BigRational::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            let mut row = BigRational::zero();
            for j in 0..n {
                if !y[j].is_zero() {
                    row += &self.center[i][j] * BigRational::from_integer(y[j].clone());
                }
            }
            acc += row * BigRational::from_integer(x[i].clone());
        }
        acc
    }

    /// Same as [`inner`](Self::inner) for rational vectors.
    pub fn inner_rational(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let n = self.dim();
        let mut acc = BigRational::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            let mut row = BigRational::zero();
            for j in 0..n {
                if !y[j].is_zero() {
                    row += &self.center[i][j] * &y[j];
                }
            }
            acc += row * &x[i];
        }
        acc
    }

    /// Certified enclosure of the true quadratic value at `x`.
    pub fn enclose(&self, x: &[BigInt]) -> crate::real::Enclosure {
        let c = self.inner(x, x);
        if self.is_exact() {
            return crate::real::Enclosure::exact(c);
        }
        let l1: BigInt = x.iter().map(|v| v.abs()).sum();
        let err = &self.radius * BigRational::from_integer(&l1 * &l1);
        crate::real::Enclosure { lo: &c - &err, hi: c + err }
    }

    /// Rational enclosure for a rational vector.
    pub fn enclose_rational(&self, x: &[BigRational]) -> crate::real::Enclosure {
        let c = self.inner_rational(x, x);
        if self.is_exact() {
            return crate::real::Enclosure::exact(c);
        }
        let l1: BigRational = x.iter().map(|v| v.abs()).fold(BigRational::zero(), |a, b| a + b);
        let err = &self.radius * &l1 * &l1;
        crate::real::Enclosure { lo: &c - &err, hi: c + err }
    }

    /// An exact form that is everywhere at most the true form:
    /// `center − n·radius·I`.
    pub fn lower_form(&self) -> GramForm {
        if self.is_exact() {
            return self.clone();
        }
        let n = self.dim();
        let shift = &self.radius * BigRational::from_integer(n.into());
        let mut c = self.center.clone();
        for (i, row) in c.iter_mut().enumerate() {
            row[i] -= &shift;
        }
        GramForm::exact(c)
    }

    /// Multiplies the form by the positive scalar `s` (radius scales too).
    pub fn scaled(&self, s: &BigRational) -> GramForm {
        assert!(s.is_positive());
        GramForm {
            center: self.center.iter().map(|r| r.iter().map(|x| x * s).collect()).collect(),
            radius: &self.radius * s,
        }
    }

    /// Block-diagonal sum of forms.
    pub fn block_diag(blocks: &[GramForm]) -> GramForm {
        let n: usize = blocks.iter().map(GramForm::dim).sum();
        let mut c = vec![vec![BigRational::zero(); n]; n];
        let mut off = 0;
        let mut radius = BigRational::zero();
        for b in blocks {
            for i in 0..b.dim() {
                for j in 0..b.dim() {
                    c[off + i][off + j] = b.center[i][j].clone();
                }
            }
            off += b.dim();
            if b.radius > radius {
                radius = b.radius.clone();
            }
        }
        GramForm { center: c, radius }
    }

    /// Gram matrix `B·center·Bᵀ` of the lattice with basis rows `B`.
    pub fn lattice_gram(&self, basis: &IntMatrix) -> Vec<Vec<BigRational>> {
        let r = basis.rows();
        let mut g = vec![vec![BigRational::zero(); r]; r];
        for i in 0..r {
            for j in i..r {
                let v = self.inner(basis.row(i), basis.row(j));
                g[j][i] = v.clone();
                g[i][j] = v;
            }
        }
        g
    }

    /// Whether every leading principal minor of the center is positive.
    pub fn is_positive_definite(&self) -> bool {
        leading_pivots(&self.center).iter().all(|p| p.is_positive())
    }

    /// The center scaled by the least common denominator, as integers.
    pub(crate) fn integer_center(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut den = BigInt::one();
        for row in &self.center {
            for x in row {
                den = den.lcm(x.denom());
            }
        }
        let m = self
            .center
            .iter()
            .map(|row| row.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect())
            .collect();
        (m, den)
    }
}

/// Pivots of symmetric Gaussian elimination without pivoting; their signs
/// are the signs of the ratios of consecutive leading minors.
pub(crate) fn leading_pivots(m: &[Vec<BigRational>]) -> Vec<BigRational> {
    let n = m.len();
    let mut a = m.to_vec();
    let mut piv = Vec::with_capacity(n);
    for k in 0..n {
        let p = a[k][k].clone();
        piv.push(p.clone());
        if p.is_zero() {
            return piv;
        }
        for i in k + 1..n {
            let f = &a[i][k] / &p;
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    piv
}

/// Solves `x·A = b` for square non-singular rational `A` (rows of `A`
/// are basis vectors). Returns `None` if `A` is singular.
pub(crate) fn solve_rational_rows(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    // Transpose to the column system Aᵀ·x = b.
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..n).map(|j| a[j][i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for j in c..=n {
            m[c][j] = &m[c][j] * &inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for j in c..=n {
                    let t = &f * &m[c][j];
                    m[r][j] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

pub(crate) fn check_delta(delta: &BigRational) -> Result<()> {
    let quarter = BigRational::new(1.into(), 4.into());
    if delta <= &quarter || delta >= &BigRational::one() {
        return Err(Error::DeltaOutOfRange);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_determinant() {
        let m = IntMatrix::from_i64(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]]);
        assert_eq!(m.det(), BigInt::from(0));
        assert_eq!(IntMatrix::from_i64(&[&[0, 1], &[1, 0]]).det(), BigInt::from(-1));
        assert_eq!(IntMatrix::from_i64(&[&[1, 2], &[2, 4]]).det(), BigInt::zero());
    }

    #[test]
    fn positive_definiteness() {
        assert!(GramForm::from_i64(&[&[2, 1], &[1, 2]]).is_positive_definite());
        assert!(!GramForm::from_i64(&[&[1, 2], &[2, 1]]).is_positive_definite());
    }

    #[test]
    fn enclosure_of_inexact_form_contains_center() {
        let f = GramForm::with_radius(
            vec![vec![BigRational::from_integer(2.into())]],
            BigRational::new(1.into(), 100.into()),
        );
        let e = f.enclose(&[BigInt::from(3)]);
        assert_eq!(e.lo, BigRational::new(1791.into(), 100.into()));
        assert_eq!(e.hi, BigRational::new(1809.into(), 100.into()));
    }
}
