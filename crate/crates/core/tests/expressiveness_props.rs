mod common;

use common::*;
use knfrag::expressiveness::{
    catalogue, replay_theorem, search_weak_translation, strong_translation_check, weak_equiv_check, VerdictStatus,
};
use knfrag::syntax::{parse_with, ParseOptions};
use knfrag::{parse, Formula, Fragment};
use proptest::prelude::*;

const L: &[&str] = &["p", "q"];
const M: &[&str] = &["a"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn weak_check_is_reflexive(f in formula(L, M, 4)) {
        prop_assert!(weak_equiv_check(&f, &f, &set(L), 3).unwrap().is_equivalent());
    }

    #[test]
    fn weak_check_is_symmetric(f in formula(L, M, 3), g in formula(L, M, 3)) {
        let a = weak_equiv_check(&f, &g, &set(L), 3).unwrap();
        let b = weak_equiv_check(&g, &f, &set(L), 3).unwrap();
        prop_assert_eq!(a.status, b.status);
    }

    #[test]
    fn counterexamples_separate(f in formula(L, M, 3), g in formula(L, M, 3)) {
        let v = weak_equiv_check(&f, &g, &set(L), 3).unwrap();
        if let Some(c) = v.counterexample {
            prop_assert_ne!(c.model.satisfies(&f), c.model.satisfies(&g));
        }
    }

    /// Over a shared alphabet, weak equivalence at a bound gives a strong
    /// translation at that bound.
    #[test]
    fn weak_implies_strong(f in formula(L, M, 3), g in formula(L, M, 3)) {
        if weak_equiv_check(&f, &g, &set(L), 3).unwrap().is_equivalent() {
            prop_assert!(strong_translation_check(&f, &g, 3).unwrap().is_equivalent());
        }
    }

    #[test]
    fn weak_implies_strong_for_rewritten_pairs(f in formula(L, M, 3)) {
        let g = Formula::not(Formula::not(Formula::and(f.clone(), Formula::or(f.clone(), Formula::prop("q")))));
        prop_assert!(weak_equiv_check(&f, &g, &set(L), 3).unwrap().is_equivalent());
        prop_assert!(strong_translation_check(&f, &g, 3).unwrap().is_equivalent());
    }
}

#[test]
fn every_catalogued_replay_passes() {
    for (id, _) in catalogue() {
        let report = replay_theorem(id).unwrap();
        assert!(report.overall, "{id}");
        assert_eq!(report.overall, report.steps.iter().all(|s| s.pass));
    }
}

#[test]
fn search_finds_members_of_the_fragment() {
    let target = parse("p | q").unwrap();
    let found = search_weak_translation(&target, Fragment::KROM, &set(&["p", "q"]), 7, 3).unwrap().unwrap();
    assert!(weak_equiv_check(&target, &found.to_formula(), &set(&["p", "q"]), 3).unwrap().is_equivalent());
}

#[test]
fn strong_check_examples() {
    let v = strong_translation_check(&parse("<a>p").unwrap(), &parse("[a]p").unwrap(), 3).unwrap();
    assert_eq!(v.status, VerdictStatus::Counterexample);
    let g = parse_with("~[a]_f0 & [a](_f0 | p)", ParseOptions { allow_reserved: true }).unwrap();
    assert!(strong_translation_check(&parse("<a>p").unwrap(), &g, 3).unwrap().is_equivalent());
}
