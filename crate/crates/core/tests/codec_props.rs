use proptest::prelude::*;

use nfcodes::codec::{exceeds_threshold_exact, roots_hensel, roots_reference, RootFinder};
use nfcodes::harness::{corrupt, Oracle};
use nfcodes::{decode, encode, CodeSpec, DecodeOptions, KPoly, NumberField};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn clean_words_decode(a in -45i64..=45, b in -45i64..=45) {
        let code = CodeSpec::gauss_6_2();
        let m = code.field().element(&[a, b]);
        prop_assume!(code.field().in_ball(&m, &code.b_squared()));
        let r = decode(&encode(&m, &code).unwrap(), &code, &DecodeOptions::default()).unwrap();
        prop_assert!(r.messages().contains(&m));
        prop_assert!(r.c.eval(code.field(), &m).is_zero());
    }

    #[test]
    fn guarantee_agrees_with_exact_form(seed in 0u64..1000, e in 0usize..3) {
        let code = CodeSpec::gauss_6_2();
        let m = code.field().element(&[(seed % 60) as i64 - 30, (seed / 60) as i64 - 8]);
        let w = corrupt(&encode(&m, &code).unwrap(), &code, e, seed).unwrap();
        let r = decode(&w, &code, &DecodeOptions::default()).unwrap();
        let norms: Vec<u64> = code.primes().iter().map(|p| p.p).collect();
        for cw in &r.codewords {
            let agree = code.agreements(&cw.message, &w).unwrap();
            // the f64 threshold is rounded up, so it never claims more than the exact test
            if cw.guaranteed {
                prop_assert!(exceeds_threshold_exact(2, &r.f_actual, &norms, &r.params.z_star, &agree));
            }
        }
    }

    #[test]
    fn root_finders_agree_on_cubic_field(r1 in prop::array::uniform3(-3i64..=3), r2 in prop::array::uniform3(-3i64..=3)) {
        let k = NumberField::from_i64(&[-2, 0, 0, 1]).unwrap();
        let f = KPoly::from_roots(&k, &[k.element(&r1), k.element(&r2)]);
        let b = 6.into();
        let mut a = roots_reference(&k, &f, &b).unwrap();
        let mut h = roots_hensel(&k, &f, &b).unwrap();
        a.sort_by(|x, y| x.coords().cmp(y.coords()));
        h.sort_by(|x, y| x.coords().cmp(y.coords()));
        prop_assert_eq!(a, h);
    }
}

#[test]
fn small_code_matches_oracle_for_every_word_pattern() {
    let k = NumberField::from_i64(&[1, 0, 1]).unwrap();
    let code = CodeSpec::from_pairs(k, &[(5, 2), (13, 5), (17, 4), (29, 12)], 1).unwrap();
    let oracle = Oracle::new(&code);
    let m = code.field().element(&[1, -2]);
    let clean = encode(&m, &code).unwrap();
    for e in 0..=4 {
        for seed in 0..4 {
            let w = corrupt(&clean, &code, e, seed).unwrap();
            for rf in [RootFinder::Hensel, RootFinder::Reference] {
                let opts = DecodeOptions { root_finder: rf, ..DecodeOptions::default() };
                let r = decode(&w, &code, &opts).unwrap();
                let check = nfcodes::harness::check_against_oracle(&r, &oracle, &w).unwrap();
                assert!(check.violation.is_none(), "{:?}", check.violation);
            }
        }
    }
}
