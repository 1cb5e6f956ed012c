//! Dense univariate polynomials over `Z` and `Q`, coefficients ascending.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::zlattice::IntMatrix;

/// Degree of `p`, or `None` for the zero polynomial.
pub fn degree<T: Zero>(p: &[T]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn trim<T: Zero>(mut p: Vec<T>) -> Vec<T> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn is_monic(p: &[BigInt]) -> bool {
    degree(p).is_some_and(|d| p[d].is_one())
}

pub fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

pub fn derivative(p: &[BigInt]) -> Vec<BigInt> {
    p.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

/// `Res(f, g)` as the determinant of the Sylvester matrix, so that
/// `Res(f, g) = lc(f)^{deg g} · ∏_{f(α)=0} g(α)`.
pub fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let (Some(m), Some(n)) = (degree(f), degree(g)) else {
        return BigInt::zero();
    };
    if n == 0 {
        return num_traits::pow(g[0].clone(), m);
    }
    if m == 0 {
        return num_traits::pow(f[0].clone(), n);
    }
    let size = m + n;
    let mut s = IntMatrix::zeros(size, size);
    for r in 0..n {
        for (k, c) in f[..=m].iter().rev().enumerate() {
            s[(r, r + k)] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in g[..=n].iter().rev().enumerate() {
            s[(n + r, r + k)] = c.clone();
        }
    }
    s.det()
}

/// Discriminant of a monic polynomial, `(−1)^{d(d−1)/2}·Res(f, f′)`.
pub fn discriminant(f: &[BigInt]) -> Result<BigInt> {
    if !is_monic(f) {
        return Err(Error::NotMonic);
    }
    let d = degree(f).unwrap();
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    let r = resultant(f, &derivative(f));
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -r } else { r })
}

fn to_rational(p: &[BigInt]) -> Vec<BigRational> {
    p.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

/// Remainder of `a` by non-zero `b` over `Q`.
pub fn rem_rational(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let db = degree(b).expect("division by zero polynomial");
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let q = &r[dr] / &b[db];
        for i in 0..=db {
            let t = &q * &b[i];
            r[dr - db + i] -= t;
        }
        r = trim(r);
    }
    r
}

/// Number of distinct real roots, by Sturm's theorem.
pub fn count_real_roots(f: &[BigInt]) -> usize {
    let mut seq = vec![trim(to_rational(f))];
    let mut next = trim(to_rational(&derivative(f)));
    while degree(&next).is_some() {
        let r = rem_rational(seq.last().unwrap(), &next);
        seq.push(next);
        next = r.into_iter().map(|c| -c).collect();
    }
    let changes = |signs: Vec<bool>| signs.windows(2).filter(|w| w[0] != w[1]).count();
    let at_pos_inf: Vec<bool> = seq.iter().map(|p| p[degree(p).unwrap()].is_positive()).collect();
    let at_neg_inf: Vec<bool> = seq
        .iter()
        .map(|p| {
            let d = degree(p).unwrap();
            p[d].is_positive() ^ (d % 2 == 1)
        })
        .collect();
    changes(at_neg_inf) - changes(at_pos_inf)
}

/// Exact division of integer polynomials; `None` if `b` does not divide `a`
/// over `Z`.
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = degree(b)?;
    let mut r = trim(a.to_vec());
    let da = match degree(&r) {
        None => return Some(Vec::new()),
        Some(d) => d,
    };
    if da < db {
        return None;
    }
    let mut q = vec![BigInt::zero(); da - db + 1];
    while let Some(dr) = degree(&r) {
        if dr < db {
            return None;
        }
        if !(&r[dr] % &b[db]).is_zero() {
            return None;
        }
        let c = &r[dr] / &b[db];
        for i in 0..=db {
            let t = &c * &b[i];
            r[dr - db + i] -= t;
        }
        q[dr - db] = c;
        r = trim(r);
    }
    Some(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&p(&[1, 0, 1])).unwrap(), BigInt::from(-4));
        assert_eq!(discriminant(&p(&[-1, -1, 1])).unwrap(), BigInt::from(5));
        assert_eq!(discriminant(&p(&[-2, 0, 0, 1])).unwrap(), BigInt::from(-108));
        assert!(matches!(discriminant(&p(&[1, 0, 2])), Err(Error::NotMonic)));
    }

    #[test]
    fn resultant_of_linear_factors() {
        // Res(x² + 1, 3 + 2x) = (3 + 2i)(3 − 2i) = 13
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[3, 2])), BigInt::from(13));
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[2])), BigInt::from(4));
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(count_real_roots(&p(&[1, 0, 1])), 0);
        assert_eq!(count_real_roots(&p(&[-1, -1, 1])), 2);
        assert_eq!(count_real_roots(&p(&[-2, 0, 0, 1])), 1);
        assert_eq!(count_real_roots(&p(&[1, 0, -10, 0, 1])), 4);
    }

    #[test]
    fn exact_division() {
        assert_eq!(div_exact(&p(&[-1, 0, 1]), &p(&[1, 1])), Some(p(&[-1, 1])));
        assert_eq!(div_exact(&p(&[1, 0, 1]), &p(&[1, 1])), None);
    }
}
