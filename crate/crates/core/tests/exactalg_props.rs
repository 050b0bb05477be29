//! Algebraic laws of the exact rational function field.

use std::collections::BTreeMap;

use proptest::prelude::*;
use tnnatlas::exactalg::{
    certify_subtraction_free, AlgError, Field, MultiPoly, RatFunc, Rational, SfCertificate,
};

const VARS: [&str; 3] = ["x", "y", "z"];

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, 3), -4i64..=4), 1..4).prop_map(|terms| {
        let terms = terms
            .into_iter()
            .map(|(e, c)| (e, Rational::integer(c)))
            .collect();
        MultiPoly::from_terms(&VARS, terms).unwrap()
    })
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), poly()).prop_filter_map("nonzero denominator", |(n, d)| RatFunc::new(n, d).ok())
}

fn point() -> impl Strategy<Value = BTreeMap<String, Rational>> {
    prop::collection::vec((1i64..=9, 1i64..=5), 3).prop_map(|v| {
        VARS.iter()
            .zip(v)
            .map(|(name, (a, b))| (name.to_string(), Rational::new(a, b).unwrap()))
            .collect()
    })
}

fn defined(r: Result<Rational, AlgError>) -> Option<Rational> {
    match r {
        Ok(v) => Some(v),
        Err(AlgError::PoleAtPoint) => None,
        Err(e) => panic!("{e}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn positive_evaluation_is_multiplicative(f in ratfunc(), g in ratfunc(), p in point()) {
        let (Some(a), Some(b), Some(c)) =
            (defined(f.eval_positive(&p)), defined(g.eval_positive(&p)), defined(f.times(&g).eval_positive(&p)))
        else {
            return Ok(());
        };
        prop_assert_eq!(c, a.times(&b));
    }

    #[test]
    fn certification_is_deterministic(f in ratfunc()) {
        prop_assume!(!f.is_zero());
        let first = certify_subtraction_free(&f).unwrap();
        prop_assert_eq!(first, certify_subtraction_free(&f).unwrap());
        if first == SfCertificate::Certified {
            let p: BTreeMap<String, Rational> = VARS.iter().map(|v| (v.to_string(), Rational::integer(2))).collect();
            if let Some(v) = defined(f.eval_positive(&p)) {
                prop_assert!(v.is_positive());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn equality_matches_cross_multiplication(f in ratfunc(), g in ratfunc(), h in poly(), share in any::<bool>()) {
        // Half of the pairs are equal by construction.
        let g = if share && !h.is_zero() {
            RatFunc::new(f.numer().mul(&h), f.denom().mul(&h)).unwrap()
        } else {
            g
        };
        let cross = f.numer().mul(g.denom()) == g.numer().mul(f.denom());
        prop_assert_eq!(f == g, cross);
        if share && !h.is_zero() {
            prop_assert!(cross);
        }
    }
}
