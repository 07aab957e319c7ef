mod common;

use pimbound::caseanalysis::{
    d4_verify, enumerate_decompositions, ree_verify, u4_verify, DecompositionProblem, Verdict, D4_PRIMES,
    U4_PRIMES,
};
use proptest::prelude::*;

#[test]
fn verdict_json_is_deterministic() {
    for p in U4_PRIMES {
        let a = serde_json::to_string(&u4_verify(p).unwrap()).unwrap();
        let b = serde_json::to_string(&u4_verify(p).unwrap()).unwrap();
        assert_eq!(a, b, "U4 at {p}");
        let back: Verdict = serde_json::from_str(&a).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), a);
    }
    for p in D4_PRIMES {
        let a = serde_json::to_string(&d4_verify(p).unwrap()).unwrap();
        let b = serde_json::to_string(&d4_verify(p).unwrap()).unwrap();
        assert_eq!(a, b, "D4 at {p}");
    }
    for f in 1..=2 {
        let a = serde_json::to_string(&ree_verify(f).unwrap().0).unwrap();
        let b = serde_json::to_string(&ree_verify(f).unwrap().0).unwrap();
        assert_eq!(a, b, "Ree f = {f}");
    }
}

#[test]
fn every_verified_case_has_no_solution() {
    for p in U4_PRIMES {
        assert!(u4_verify(p).unwrap().is_no_solution(), "U4 at {p}");
    }
    for p in D4_PRIMES {
        assert!(d4_verify(p).unwrap().is_no_solution(), "D4 at {p}");
    }
    for f in 1..=2 {
        let (v, replay) = ree_verify(f).unwrap();
        assert!(v.is_no_solution() && replay.reaches_contradiction(), "Ree f = {f}");
    }
}

#[test]
fn eliminations_log_both_sign_conventions() {
    for p in U4_PRIMES {
        let v = u4_verify(p).unwrap();
        assert_eq!(v.eliminations.len(), 2 * v.solutions_examined as usize, "U4 at {p}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn enumeration_matches_box_search(
        target in 0u128..400,
        degrees in proptest::collection::vec(1u128..40, 1..5),
    ) {
        let parts: Vec<(String, u128)> = degrees.iter().enumerate().map(|(i, &d)| (format!("x{i}"), d)).collect();
        let named: Vec<(&str, u128)> = parts.iter().map(|(n, d)| (n.as_str(), *d)).collect();
        let got = enumerate_decompositions(&DecompositionProblem::new(target as i128, &named)).unwrap();

        let mut sorted = got.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(&sorted, &got, "not strictly lexicographic");
        let want: Vec<Vec<u64>> = common::box_decompositions(target, &degrees).into_iter().collect();
        prop_assert_eq!(got, want);
    }
}
