use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

use nfcodes::ideals::primes_above;
use nfcodes::{FieldElement, FractionalIdeal, NumberField};

fn fields() -> Vec<NumberField> {
    [&[1i64, 0, 1][..], &[-2, 0, 0, 1], &[-1, -1, 1], &[1, -1, 0, 1]]
        .iter()
        .map(|p| NumberField::from_i64(p).unwrap())
        .collect()
}

fn element(d: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-12i64..=12, d)
}

fn pow_q(q: &BigRational, e: usize) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * q)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn norm_is_multiplicative(fi in 0usize..4, a in element(3), b in element(3)) {
        let k = &fields()[fi];
        let d = k.degree();
        let (x, y) = (k.element(&a[..d]), k.element(&b[..d]));
        prop_assert_eq!(k.abs_norm(&k.mul(&x, &y)), k.abs_norm(&x) * k.abs_norm(&y));
    }

    #[test]
    fn am_gm_bounds_the_norm(fi in 0usize..4, a in element(3)) {
        // |N(x)|^{2/d} ≤ T₂(x)/d, compared as d^d·N² ≤ T₂^d
        let k = &fields()[fi];
        let d = k.degree();
        let x = k.element(&a[..d]);
        let n = k.abs_norm(&x);
        let t2 = k.t2_norm_sq(&x).hi;
        let dd = BigRational::from_integer(BigInt::from(d).pow(d as u32));
        prop_assert!(dd * &n * &n <= pow_q(&t2, d));
    }

    #[test]
    fn inverse_and_trace(fi in 0usize..4, a in element(3), b in element(3)) {
        let k = &fields()[fi];
        let d = k.degree();
        let (x, y) = (k.element(&a[..d]), k.element(&b[..d]));
        prop_assert_eq!(k.trace(&(&x + &y)), k.trace(&x) + k.trace(&y));
        if !x.is_zero() {
            let inv = k.inv(&x).unwrap();
            prop_assert_eq!(k.mul(&x, &inv), k.one());
        }
    }

    #[test]
    fn t2_is_submultiplicative(fi in 0usize..4, a in element(3), b in element(3)) {
        let k = &fields()[fi];
        let d = k.degree();
        let (x, y) = (k.element(&a[..d]), k.element(&b[..d]));
        let lhs = k.t2_norm_sq(&k.mul(&x, &y)).lo;
        prop_assert!(lhs <= k.t2_norm_sq(&x).hi * k.t2_norm_sq(&y).hi);
    }

    #[test]
    fn residue_map_is_a_ring_morphism(fi in 0usize..4, a in element(3), b in element(3), pi in 0usize..4) {
        let k = &fields()[fi];
        let d = k.degree();
        let (x, y) = (k.element(&a[..d]), k.element(&b[..d]));
        let p = [101u64, 103, 107, 109][pi];
        for q in primes_above(k, p, false).unwrap() {
            let (rx, ry) = (q.residue(&x).unwrap(), q.residue(&y).unwrap());
            prop_assert_eq!(q.residue(&(&x + &y)).unwrap(), (rx + ry) % p);
            prop_assert_eq!(q.residue(&k.mul(&x, &y)).unwrap(), rx * ry % p);
            prop_assert_eq!(q.ideal.contains(&x), rx == 0);
        }
    }

    #[test]
    fn ideal_norms_multiply(a in element(2), b in element(2)) {
        let k = &fields()[0];
        let (x, y) = (k.element(&a), k.element(&b));
        prop_assume!(!x.is_zero() && !y.is_zero());
        let i = FractionalIdeal::principal(k, &x).unwrap();
        let j = FractionalIdeal::principal(k, &y).unwrap();
        prop_assert_eq!(i.norm(), k.abs_norm(&x));
        prop_assert_eq!(i.mul(k, &j).norm(), i.norm() * j.norm());
        prop_assert!(i.mul(k, &i.inverse(k)).is_unit());
        prop_assert!(i.mul(k, &j).is_subset_of(&i));
        prop_assert!(i.contains(&k.mul(&x, &y)));
    }
}

#[test]
fn reduce_stays_in_coset() {
    let k = &fields()[1];
    let p = &primes_above(k, 31, false).unwrap()[0];
    let sq = p.ideal.pow(k, 2);
    for c in [[100, -3, 7], [0, 0, 0], [-55, 21, 13]] {
        let x = k.element(&c);
        let r = sq.reduce(&x);
        assert!(sq.contains(&(&x - &r)));
    }
    let fe = FieldElement::from_i64(&[1, 0, 0]);
    assert_eq!(fe, k.one());
}
