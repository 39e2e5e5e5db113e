mod common;

use common::*;
use knfrag::{classify, parse, print, recognize_clausal, Formula, Fragment, PositiveLiteral};
use proptest::prelude::*;

const L: &[&str] = &["p", "q", "r"];
const M: &[&str] = &["a", "b"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn print_then_parse_is_identity(f in formula(L, M, 6)) {
        let text = print(&f);
        prop_assert_eq!(parse(&text).unwrap(), f, "{}", text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn core_is_horn_and_krom(cf in clausal(Fragment::BOOL, L, M, 4, 3)) {
        let d = classify(&cf);
        prop_assert_eq!(d.core, d.horn && d.krom);
    }

    #[test]
    fn recognition_inverts_to_formula(cf in clausal(Fragment::BOOL, L, M, 4, 3)) {
        let back = recognize_clausal(&cf.to_formula()).unwrap();
        prop_assert_eq!(&back, &cf);
        prop_assert_eq!(back.to_formula(), cf.to_formula());
    }

    #[test]
    fn generated_fragment_members_are_classified_inside(
        frag in prop::sample::select(Fragment::ALL.to_vec()),
        seed in any::<u64>(),
    ) {
        let mut s = knfrag::sample::Sampler::new(seed);
        let cf = s.clausal(frag, &["p".into(), "q".into()], &[common::modality("a")], 3, 2);
        prop_assert!(frag.contains(&cf));
        prop_assert!(Fragment::BOOL.contains(&cf));
    }

    #[test]
    fn modal_depth_of_modal_literals(l in literal(Fragment::BOOL, L, M, 4), m in prop::sample::select(M)) {
        let a = modality(m);
        prop_assert_eq!(PositiveLiteral::diamond(a.clone(), l.clone()).modal_depth(), l.modal_depth() + 1);
        prop_assert_eq!(PositiveLiteral::boxed(a, l.clone()).modal_depth(), l.modal_depth() + 1);
        let zero = matches!(l, PositiveLiteral::Top | PositiveLiteral::Prop(_));
        prop_assert_eq!(l.modal_depth() == 0, zero);
    }

    #[test]
    fn formula_modal_depth_matches_nesting(f in formula(L, M, 5), m in prop::sample::select(M)) {
        prop_assert_eq!(Formula::diamond(modality(m), f.clone()).modal_depth(), f.modal_depth() + 1);
        prop_assert_eq!(Formula::boxed(modality(m), f.clone()).modal_depth(), f.modal_depth() + 1);
    }
}

#[test]
fn examples_from_the_grammar() {
    let f = parse("[a]p -> q").unwrap();
    assert_eq!(f, parse("~[a]p | q").unwrap());
    assert_eq!(parse("p -> q -> r").unwrap(), parse("p -> (q -> r)").unwrap());
    assert!(parse("_x").is_err());
    assert!(parse("p &").is_err());
}

#[test]
fn classification_examples() {
    let d = classify(&recognize_clausal(&parse("p & q -> r").unwrap()).unwrap());
    assert!(d.horn && !d.krom && !d.core);
    let d = classify(&recognize_clausal(&parse("p | q").unwrap()).unwrap());
    assert!(!d.horn && d.krom && !d.core);
    let d = classify(&recognize_clausal(&parse("<a>p").unwrap()).unwrap());
    assert!(d.core && d.diamond_only && !d.box_only);
    let d = classify(&recognize_clausal(&parse("[a]p -> q").unwrap()).unwrap());
    assert!(d.core && d.box_only && !d.diamond_only);
}
