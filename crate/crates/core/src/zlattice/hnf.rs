use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Row-style Hermite normal form with zero rows dropped.
///
/// The result is upper echelon, every pivot is positive and every entry
/// above a pivot lies in `[0, pivot)`. Its rows are a basis of the integer
/// row span of `m`.
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    let (rows, rank) = hnf_rows(m);
    IntMatrix::from_rows(m.cols(), rows.into_iter().take(rank).collect())
}

/// Same as [`hnf`] but keeps the zero rows (at the bottom), so the output
/// has the shape of the input.
pub fn hnf_keep_zero_rows(m: &IntMatrix) -> IntMatrix {
    let (rows, _) = hnf_rows(m);
    IntMatrix::from_rows(m.cols(), rows)
}

fn sub_multiple(target: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    if q.is_zero() {
        return;
    }
    for (t, s) in target.iter_mut().zip(src) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

fn hnf_rows(m: &IntMatrix) -> (Vec<Vec<BigInt>>, usize) {
    let mut a = m.to_rows();
    let n = a.len();
    let cols = m.cols();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        // Bring the gcd of column c (rows r..) into row r.
        for i in r + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            if a[r][c].is_zero() {
                a.swap(r, i);
                continue;
            }
            let (x, y) = (a[r][c].clone(), a[i][c].clone());
            if y.is_multiple_of(&x) {
                let q = &y / &x;
                let (top, bottom) = a.split_at_mut(i);
                sub_multiple(&mut bottom[0], &q, &top[r]);
                continue;
            }
            let e = x.extended_gcd(&y);
            let (u, v) = (&x / &e.gcd, &y / &e.gcd);
            let row_r = a[r].clone();
            let row_i = a[i].clone();
            for j in c..cols {
                a[r][j] = &e.x * &row_r[j] + &e.y * &row_i[j];
                a[i][j] = &u * &row_i[j] - &v * &row_r[j];
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -&*x;
            }
        }
        let (top, bottom) = a.split_at_mut(r);
        let pivot_row = &bottom[0];
        for row in top.iter_mut() {
            let q = row[c].div_floor(&pivot_row[c]);
            sub_multiple(row, &q, pivot_row);
        }
        r += 1;
    }
    (a, r)
}

/// Checks the echelon, positivity and reduction conditions of [`hnf`]
/// (zero rows not allowed).
pub fn is_hnf(m: &IntMatrix) -> bool {
    let mut last: Option<usize> = None;
    for i in 0..m.rows() {
        let row = m.row(i);
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        if last.is_some_and(|l| p <= l) || !row[p].is_positive() {
            return false;
        }
        for k in 0..i {
            let above = &m[(k, p)];
            if above.is_negative() || above >= &row[p] {
                return false;
            }
        }
        last = Some(p);
    }
    true
}

/// Integer coefficients expressing `v` in the rows of the echelon matrix
/// `h` (as produced by [`hnf`]), or `None` if `v` is outside the row span.
pub fn solve_in_span(h: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(h.cols(), v.len());
    let mut rest = v.to_vec();
    let mut coeffs = Vec::with_capacity(h.rows());
    for i in 0..h.rows() {
        let row = h.row(i);
        let p = row.iter().position(|x| !x.is_zero())?;
        if rest[..p].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let (q, rem) = rest[p].div_rem(&row[p]);
        if !rem.is_zero() {
            return None;
        }
        sub_multiple(&mut rest, &q, row);
        coeffs.push(q);
    }
    rest.iter().all(Zero::is_zero).then_some(coeffs)
}

/// Basis (in HNF) of the left kernel `{x ∈ Zⁿ : x·A = 0}`.
pub fn kernel_rows(a: &IntMatrix) -> IntMatrix {
    let n = a.rows();
    let m = a.cols();
    let aug = IntMatrix::from_rows(
        m + n,
        (0..n)
            .map(|i| {
                let mut r = a.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
                r
            })
            .collect(),
    );
    let h = hnf(&aug);
    let rows: Vec<Vec<BigInt>> = (0..h.rows())
        .filter(|&i| h.row(i)[..m].iter().all(Zero::is_zero))
        .map(|i| h.row(i)[m..].to_vec())
        .collect();
    hnf(&IntMatrix::from_rows(n, rows))
}
