//! Fincke–Pohst enumeration with exact rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{GramForm, IntMatrix};
use crate::real::{ceil_rational, floor_rational, isqrt_floor};

/// All coordinate vectors `x` with `Q(x·basis) ≤ radius_sq`, sorted
/// lexicographically.
///
/// For an inexact form the enumeration runs on [`GramForm::lower_form`] and
/// only the points certified to lie outside are dropped, so the result is a
/// superset containing every point of the true ball.
pub fn enumerate_ball(basis: &IntMatrix, form: &GramForm, radius_sq: &BigRational) -> Vec<Vec<BigInt>> {
    let target = vec![BigRational::zero(); basis.rows()];
    enumerate_near(basis, form, &target, radius_sq)
}

/// All coordinate vectors `x` with `Q((x − target)·basis) ≤ radius_sq`, where
/// `target` is given in basis coordinates.
pub fn enumerate_near(
    basis: &IntMatrix,
    form: &GramForm,
    target: &[BigRational],
    radius_sq: &BigRational,
) -> Vec<Vec<BigInt>> {
    let n = basis.rows();
    assert_eq!(target.len(), n);
    if radius_sq.is_negative() {
        return Vec::new();
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    let lower = form.lower_form();
    let q = cholesky_like(&lower.lattice_gram(basis));
    let mut out = Vec::new();
    let mut x = vec![BigInt::zero(); n];
    search(&q, target, n - 1, radius_sq.clone(), &mut x, &mut out);
    if !form.is_exact() {
        out.retain(|x| {
            let v: Vec<BigRational> = (0..basis.cols())
                .map(|c| {
                    (0..n).fold(BigRational::zero(), |acc, i| {
                        acc + (BigRational::from_integer(x[i].clone()) - &target[i])
                            * BigRational::from_integer(basis[(i, c)].clone())
                    })
                })
                .collect();
            form.enclose_rational(&v).lo <= *radius_sq
        });
    }
    out.sort();
    out
}

/// Returns `q` with `Q(x) = Σ_i q[i][i]·(x_i + Σ_{j>i} q[i][j]·x_j)²`.
fn cholesky_like(g: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = g.len();
    let mut q = g.to_vec();
    for i in 0..n {
        assert!(q[i][i].is_positive(), "quadratic form is not positive definite");
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let t = &q[k][i] * &q[i][l];
                q[k][l] -= t;
            }
        }
    }
    q
}

fn search(
    q: &[Vec<BigRational>],
    t: &[BigRational],
    i: usize,
    remaining: BigRational,
    x: &mut Vec<BigInt>,
    out: &mut Vec<Vec<BigInt>>,
) {
    let n = q.len();
    // center c_i = t_i − Σ_{j>i} q_ij (x_j − t_j)
    let mut center = t[i].clone();
    for j in i + 1..n {
        center -= &q[i][j] * (BigRational::from_integer(x[j].clone()) - &t[j]);
    }
    let s = isqrt_floor(&(&remaining / &q[i][i]));
    let lo: BigInt = floor_rational(&center) - &s - 1;
    let hi = ceil_rational(&center) + &s + 1;
    let mut xi = lo;
    while xi <= hi {
        let diff = BigRational::from_integer(xi.clone()) - &center;
        let used = &q[i][i] * &diff * &diff;
        if used <= remaining {
            x[i] = xi.clone();
            if i == 0 {
                out.push(x.clone());
            } else {
                search(q, t, i - 1, &remaining - &used, x, out);
            }
        }
        xi += 1;
    }
    x[i] = BigInt::zero();
}
