mod common;

use common::*;
use knfrag::solver::{sat_bruteforce, sat_tableau, tree_model_bound, SatStatus};
use knfrag::{parse, Formula};
use proptest::prelude::*;

const L: &[&str] = &["p", "q"];
const M: &[&str] = &["a"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn witnesses_satisfy_and_procedures_agree(f in formula(L, M, 3)) {
        let tab = sat_tableau(&f).unwrap();
        if let Some(w) = &tab.witness {
            prop_assert!(w.satisfies(&f));
        }
        prop_assert_ne!(tab.status, SatStatus::UnknownAtBound);
        let bound = tree_model_bound(&f);
        if bound <= 7 {
            let brute = sat_bruteforce(&f, bound).unwrap();
            if let Some(w) = &brute.witness {
                prop_assert!(w.satisfies(&f));
            }
            prop_assert_eq!(brute.status, tab.status, "{}", f);
        }
    }

    /// A formula is unsatisfiable iff its negation holds at every world of
    /// every small model.
    #[test]
    fn unsat_means_negation_is_valid_on_small_models(f in formula(L, M, 3), m in model(3, L, M)) {
        if sat_tableau(&f).unwrap().status == SatStatus::Unsat {
            let neg = Formula::not(f.clone());
            for w in 0..m.world_count() {
                prop_assert!(m.satisfies(w, &neg));
            }
        }
    }
}

#[test]
fn small_model_examples() {
    for (src, sat) in [
        ("p & ~p", false),
        ("<a>p & [a]~p", false),
        ("<a>p & <a>q & [a](~p | ~q)", true),
        ("[a]F & <a>T", false),
        ("<a><a>p", true),
    ] {
        let f = parse(src).unwrap();
        let tab = sat_tableau(&f).unwrap();
        let brute = sat_bruteforce(&f, tree_model_bound(&f)).unwrap();
        assert_eq!(tab.is_sat(), sat, "{src}");
        assert_eq!(brute.is_sat(), sat, "{src}");
    }
}

#[test]
fn below_the_bound_is_unknown() {
    let f = parse("<a>p & <a>q & [a](~p | ~q)").unwrap();
    assert_eq!(sat_bruteforce(&f, 2).unwrap().status, SatStatus::UnknownAtBound);
    assert!(sat_bruteforce(&f, 3).unwrap().is_sat());
}
