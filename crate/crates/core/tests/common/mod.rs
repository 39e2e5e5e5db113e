// Shared proptest strategies.
#![allow(dead_code)]

use std::collections::BTreeSet;

use knfrag::{ClausalFormula, Clause, Formula, Fragment, KripkeFrame, KripkeModel, Modality, PositiveLiteral};
use proptest::prelude::*;

pub fn modality(name: &str) -> Modality {
    Modality::new(name).unwrap()
}

pub fn set(xs: &[&str]) -> BTreeSet<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

pub fn letter(letters: &'static [&'static str]) -> impl Strategy<Value = String> {
    prop::sample::select(letters).prop_map(str::to_string)
}

pub fn formula(letters: &'static [&'static str], mods: &'static [&'static str], depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![1 => Just(Formula::Top), 6 => letter(letters).prop_map(Formula::prop)];
    leaf.prop_recursive(depth, 64, 2, move |inner| {
        let m = prop::sample::select(mods).prop_map(modality);
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (m.clone(), inner.clone()).prop_map(|(m, f)| Formula::diamond(m, f)),
            (m, inner).prop_map(|(m, f)| Formula::boxed(m, f)),
        ]
    })
}

/// Positive literal of depth at most `max_depth` allowed by `fragment`.
pub fn literal(
    fragment: Fragment,
    letters: &'static [&'static str],
    mods: &'static [&'static str],
    max_depth: usize,
) -> impl Strategy<Value = PositiveLiteral> {
    let base = prop_oneof![1 => Just(PositiveLiteral::Top), 6 => letter(letters).prop_map(PositiveLiteral::prop)];
    let steps = prop::collection::vec((prop::sample::select(mods), any::<bool>()), 0..=max_depth);
    (base, steps).prop_map(move |(mut l, steps)| {
        for (m, want_box) in steps {
            let boxed = match (fragment.allows_box(), fragment.allows_diamond()) {
                (true, true) => want_box,
                (b, _) => b,
            };
            l = if boxed { PositiveLiteral::boxed(modality(m), l) } else { PositiveLiteral::diamond(modality(m), l) };
        }
        l
    })
}

pub fn clause(
    fragment: Fragment,
    letters: &'static [&'static str],
    mods: &'static [&'static str],
    max_depth: usize,
) -> impl Strategy<Value = Clause> {
    let max_width = fragment.max_width().unwrap_or(3);
    let max_pos = fragment.max_positives().unwrap_or(3);
    let lit = move || literal(fragment, letters, mods, max_depth);
    (1..=max_width)
        .prop_flat_map(move |w| (Just(w), 0..=w.min(max_pos)))
        .prop_flat_map(move |(w, pos)| {
            (
                prop::collection::vec(lit(), w - pos),
                prop::collection::vec(lit(), pos),
                prop::collection::vec(prop::sample::select(mods).prop_map(modality), 0..=2),
            )
        })
        .prop_map(|(negs, poss, prefix)| Clause::new(prefix, negs, poss).unwrap())
}

pub fn clausal(
    fragment: Fragment,
    letters: &'static [&'static str],
    mods: &'static [&'static str],
    max_clauses: usize,
    max_depth: usize,
) -> impl Strategy<Value = ClausalFormula> {
    prop::collection::vec(clause(fragment, letters, mods, max_depth), 1..=max_clauses)
        .prop_map(|cs| ClausalFormula::new(cs).unwrap())
}

/// Frame over `0..n` with the edge bits of each modality.
pub fn frame(max_worlds: usize, mods: &'static [&'static str]) -> impl Strategy<Value = KripkeFrame> {
    (1..=max_worlds).prop_flat_map(move |n| {
        prop::collection::vec(prop::collection::vec(any::<bool>(), n * n), mods.len()).prop_map(move |bits| {
            let mut fr = KripkeFrame::numbered(n);
            for (m, edges) in mods.iter().zip(bits) {
                for (i, on) in edges.into_iter().enumerate() {
                    if on {
                        fr.add_edge(&modality(m), i / n, i % n);
                    }
                }
            }
            fr
        })
    })
}

pub fn model_on(frame: KripkeFrame, letters: &'static [&'static str]) -> impl Strategy<Value = KripkeModel> {
    let n = frame.len();
    prop::collection::vec(prop::collection::vec(any::<bool>(), letters.len()), n).prop_map(move |bits| {
        let valuation = bits
            .into_iter()
            .map(|row| letters.iter().zip(row).filter(|(_, on)| *on).map(|(l, _)| l.to_string()).collect())
            .collect();
        KripkeModel::with_valuation(frame.clone(), letters.iter().map(|s| s.to_string()).collect(), valuation).unwrap()
    })
}

pub fn model(max_worlds: usize, letters: &'static [&'static str], mods: &'static [&'static str]) -> impl Strategy<Value = KripkeModel> {
    frame(max_worlds, mods).prop_flat_map(move |f| model_on(f, letters))
}

/// A model together with one of its worlds.
pub fn pointed(
    max_worlds: usize,
    letters: &'static [&'static str],
    mods: &'static [&'static str],
) -> impl Strategy<Value = (KripkeModel, usize)> {
    model(max_worlds, letters, mods).prop_flat_map(|m| {
        let n = m.world_count();
        (Just(m), 0..n)
    })
}
