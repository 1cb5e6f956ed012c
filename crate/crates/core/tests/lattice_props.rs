use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;

use nfcodes::zlattice::{enumerate_ball, hnf, is_hnf, is_lll_reduced, lll_reduce_default, solve_in_span};
use nfcodes::{GramForm, IntMatrix};

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-20i64..=20, cols), rows).prop_map(move |rs| {
        let refs: Vec<&[i64]> = rs.iter().map(|r| r.as_slice()).collect();
        IntMatrix::from_i64(&refs)
    })
}

fn full_rank(n: usize) -> impl Strategy<Value = IntMatrix> {
    matrix(n, n).prop_filter("full rank", |m| m.det() != BigInt::from(0))
}

fn spans_each_other(a: &IntMatrix, b: &IntMatrix) -> bool {
    let (ha, hb) = (hnf(a), hnf(b));
    (0..a.rows()).all(|i| solve_in_span(&hb, a.row(i)).is_some())
        && (0..b.rows()).all(|i| solve_in_span(&ha, b.row(i)).is_some())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hnf_is_idempotent_and_spans(m in matrix(4, 3)) {
        let h = hnf(&m);
        prop_assert!(is_hnf(&h));
        prop_assert_eq!(hnf(&h), h.clone());
        prop_assert!(spans_each_other(&m, &h));
    }

    #[test]
    fn hnf_preserves_determinant(m in full_rank(3)) {
        prop_assert_eq!(hnf(&m).det().abs(), m.det().abs());
    }

    #[test]
    fn lll_is_reduced_and_unimodular(m in full_rank(4)) {
        let form = GramForm::standard(4);
        let r = lll_reduce_default(&m, &form).unwrap();
        prop_assert!(is_lll_reduced(&r, &form, &BigRational::new(3.into(), 4.into())));
        prop_assert_eq!(r.det().abs(), m.det().abs());
        prop_assert!(spans_each_other(&m, &r));
    }

    #[test]
    fn lll_first_vector_is_not_longer(m in full_rank(3)) {
        let form = GramForm::standard(3);
        let r = lll_reduce_default(&m, &form).unwrap();
        let min_in = (0..3).map(|i| form.inner(m.row(i), m.row(i))).min().unwrap();
        // ‖b₁‖² ≤ 2^{n−1}·λ₁² ≤ 4·min‖mᵢ‖²
        prop_assert!(form.inner(r.row(0), r.row(0)) <= min_in * BigRational::from_integer(4.into()));
    }

    #[test]
    fn enumeration_is_symmetric_and_bounded(m in full_rank(2), r in 0i64..400) {
        let form = GramForm::from_i64(&[&[2, 1], &[1, 3]]);
        let r2 = BigRational::from_integer(r.into());
        let pts = enumerate_ball(&m, &form, &r2);
        prop_assert!(pts.iter().any(|x| x.iter().all(|c| c == &BigInt::from(0))));
        for x in &pts {
            let neg: Vec<BigInt> = x.iter().map(|c| -c).collect();
            prop_assert!(pts.contains(&neg));
            let v: Vec<BigInt> = (0..2).map(|j| (0..2).map(|i| &x[i] * &m[(i, j)]).sum()).collect();
            prop_assert!(form.inner(&v, &v) <= r2);
        }
    }

    #[test]
    fn enumeration_is_monotone(r in 0i64..300, extra in 0i64..200) {
        let form = GramForm::from_i64(&[&[2, 0, 1], &[0, 2, 0], &[1, 0, 3]]);
        let basis = IntMatrix::identity(3);
        let small = enumerate_ball(&basis, &form, &BigRational::from_integer(r.into()));
        let large = enumerate_ball(&basis, &form, &BigRational::from_integer((r + extra).into()));
        prop_assert!(small.len() <= large.len());
        prop_assert!(small.iter().all(|x| large.contains(x)));
    }
}

#[test]
fn enumeration_matches_brute_force() {
    let form = GramForm::from_i64(&[&[2, 1], &[1, 3]]);
    let basis = IntMatrix::identity(2);
    for r in [0i64, 1, 5, 17, 60] {
        let got = enumerate_ball(&basis, &form, &BigRational::from_integer(r.into())).len();
        let want = (-20i64..=20)
            .flat_map(|a| (-20i64..=20).map(move |b| (a, b)))
            .filter(|&(a, b)| 2 * a * a + 2 * a * b + 3 * b * b <= r)
            .count();
        assert_eq!(got, want, "radius² {r}");
    }
}
