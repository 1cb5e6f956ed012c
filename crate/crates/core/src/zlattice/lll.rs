//! Integral LLL (de Weger's variant as presented by Cohen) over an
//! arbitrary positive-definite rational form.
//!
//! All Gram–Schmidt data is kept as the integers `d_i` and `λ_{k,j}`, so the
//! reduction is exact. An inexact [`GramForm`] is reduced with respect to its
//! rational center.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{check_delta, GramForm, IntMatrix};
use crate::error::{Error, Result};

pub fn lll_reduce_default(basis: &IntMatrix, form: &GramForm) -> Result<IntMatrix> {
    lll_reduce(basis, form, &BigRational::new(3.into(), 4.into()))
}

pub fn lll_reduce(basis: &IntMatrix, form: &GramForm, delta: &BigRational) -> Result<IntMatrix> {
    check_delta(delta)?;
    assert_eq!(basis.cols(), form.dim(), "basis and form dimensions differ");
    let n = basis.rows();
    if n == 0 {
        return Ok(basis.clone());
    }
    let (gram, _) = form.integer_center();
    let mut st = State {
        b: std::iter::once(Vec::new()).chain(basis.to_rows()).collect(),
        d: vec![BigInt::zero(); n + 1],
        lam: vec![vec![BigInt::zero(); n + 1]; n + 1],
        gram,
        kmax: 1,
    };
    let (p, q) = (delta.numer().clone(), delta.denom().clone());
    st.d[0] = BigInt::one();
    st.d[1] = st.inner(1, 1);
    if st.d[1].is_zero() {
        return Err(Error::NotABasis);
    }
    let mut k = 2;
    while k <= n {
        if k > st.kmax {
            st.kmax = k;
            for j in 1..=k {
                let mut u = st.inner(k, j);
                for i in 1..j {
                    u = (&st.d[i] * &u - &st.lam[k][i] * &st.lam[j][i]) / &st.d[i - 1];
                }
                if j < k {
                    st.lam[k][j] = u;
                } else {
                    if u.is_zero() {
                        return Err(Error::NotABasis);
                    }
                    st.d[k] = u;
                }
            }
        }
        loop {
            st.red(k, k - 1);
            let lhs = &q * &st.d[k] * &st.d[k - 2];
            let l = &st.lam[k][k - 1];
            let rhs = &p * &st.d[k - 1] * &st.d[k - 1] - &q * l * l;
            if lhs < rhs {
                st.swap(k);
                k = (k - 1).max(2);
            } else {
                break;
            }
        }
        for l in (1..k - 1).rev() {
            st.red(k, l);
        }
        k += 1;
    }
    Ok(IntMatrix::from_rows(basis.cols(), st.b.into_iter().skip(1).collect()))
}

struct State {
    b: Vec<Vec<BigInt>>,
    d: Vec<BigInt>,
    lam: Vec<Vec<BigInt>>,
    gram: Vec<Vec<BigInt>>,
    kmax: usize,
}

impl State {
    fn inner(&self, i: usize, j: usize) -> BigInt {
        let (x, y) = (&self.b[i], &self.b[j]);
        let mut acc = BigInt::zero();
        for (r, xr) in x.iter().enumerate() {
            if xr.is_zero() {
                continue;
            }
            let mut s = BigInt::zero();
            for (c, yc) in y.iter().enumerate() {
                if !yc.is_zero() && !self.gram[r][c].is_zero() {
                    s += &self.gram[r][c] * yc;
                }
            }
            acc += s * xr;
        }
        acc
    }

    fn red(&mut self, k: usize, l: usize) {
        let two_lam: BigInt = &self.lam[k][l] * 2;
        if two_lam.abs() <= self.d[l] {
            return;
        }
        // nearest integer to λ/d
        let q = (two_lam + &self.d[l]).div_floor(&(&self.d[l] * 2));
        let bl = self.b[l].clone();
        for (x, y) in self.b[k].iter_mut().zip(&bl) {
            *x -= &q * y;
        }
        self.lam[k][l] -= &q * &self.d[l];
        for i in 1..l {
            let t = &q * &self.lam[l][i];
            self.lam[k][i] -= t;
        }
    }

    fn swap(&mut self, k: usize) {
        self.b.swap(k, k - 1);
        for j in 1..k - 1 {
            let t = std::mem::take(&mut self.lam[k][j]);
            self.lam[k][j] = std::mem::replace(&mut self.lam[k - 1][j], t);
        }
        let lambda = self.lam[k][k - 1].clone();
        let big_b = (&self.d[k - 2] * &self.d[k] + &lambda * &lambda) / &self.d[k - 1];
        for i in k + 1..=self.kmax {
            let t = self.lam[i][k].clone();
            self.lam[i][k] = (&self.d[k] * &self.lam[i][k - 1] - &lambda * &t) / &self.d[k - 1];
            self.lam[i][k - 1] = (&big_b * &t + &lambda * &self.lam[i][k]) / &self.d[k];
        }
        self.d[k - 1] = big_b;
    }
}

/// Exact check of the size-reduction and Lovász conditions.
pub fn is_lll_reduced(basis: &IntMatrix, form: &GramForm, delta: &BigRational) -> bool {
    let n = basis.rows();
    let gram = form.lattice_gram(basis);
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut bstar = vec![BigRational::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut v = gram[i][j].clone();
            for k in 0..j {
                v -= &mu[j][k] * &mu[i][k] * &bstar[k];
            }
            if bstar[j].is_zero() {
                return false;
            }
            mu[i][j] = v / &bstar[j];
        }
        let mut b = gram[i][i].clone();
        for k in 0..i {
            b -= &mu[i][k] * &mu[i][k] * &bstar[k];
        }
        bstar[i] = b;
    }
    let half = BigRational::new(1.into(), 2.into());
    for i in 0..n {
        for j in 0..i {
            if mu[i][j].abs() > half {
                return false;
            }
        }
    }
    (1..n).all(|k| {
        let m = &mu[k][k - 1];
        bstar[k] >= (delta - m * m) * &bstar[k - 1]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlattice::hnf;

    fn three_quarters() -> BigRational {
        BigRational::new(3.into(), 4.into())
    }

    #[test]
    fn already_reduced_is_unchanged_up_to_sign() {
        let b = IntMatrix::from_i64(&[&[1, 0], &[0, 2]]);
        let r = lll_reduce_default(&b, &GramForm::standard(2)).unwrap();
        assert_eq!(hnf(&r), hnf(&b));
        for i in 0..2 {
            let row: Vec<BigInt> = r.row(i).iter().map(|x| x.abs()).collect();
            assert_eq!(row, b.row(i));
        }
    }

    #[test]
    fn skewed_basis() {
        let b = IntMatrix::from_i64(&[&[1, 0], &[10, 1]]);
        let form = GramForm::standard(2);
        let r = lll_reduce_default(&b, &form).unwrap();
        assert_eq!(form.inner(r.row(0), r.row(0)), BigRational::one());
        assert!(is_lll_reduced(&r, &form, &three_quarters()));
    }

    #[test]
    fn dependent_rows_rejected() {
        let b = IntMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(matches!(lll_reduce_default(&b, &GramForm::standard(2)), Err(Error::NotABasis)));
    }

    #[test]
    fn delta_range() {
        let b = IntMatrix::identity(2);
        let f = GramForm::standard(2);
        assert!(lll_reduce(&b, &f, &BigRational::new(1.into(), 4.into())).is_err());
        assert!(lll_reduce(&b, &f, &BigRational::one()).is_err());
        assert!(lll_reduce(&b, &f, &BigRational::new(99.into(), 100.into())).is_ok());
    }

    #[test]
    fn nonstandard_form() {
        let b = IntMatrix::from_i64(&[&[1, 0, 0], &[7, 1, 0], &[3, 5, 1]]);
        let f = GramForm::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 5]]);
        let r = lll_reduce_default(&b, &f).unwrap();
        assert!(is_lll_reduced(&r, &f, &three_quarters()));
        assert_eq!(hnf(&r), hnf(&b));
    }
}
