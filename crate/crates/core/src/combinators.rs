//! Model constructions: intersection and product of models, valuation
//! override and successor-world surgery.

use std::collections::BTreeSet;

use crate::semantics::{KripkeFrame, KripkeModel, ModelError};
use crate::syntax::Modality;

/// Same frame, pointwise intersection of the valuations.
pub fn intersect(m1: &KripkeModel, m2: &KripkeModel) -> Result<KripkeModel, ModelError> {
    if m1.frame() != m2.frame() {
        return Err(ModelError::FrameMismatch);
    }
    if m1.alphabet() != m2.alphabet() {
        return Err(ModelError::AlphabetMismatch);
    }
    let valuation = m1
        .valuations()
        .iter()
        .zip(m2.valuations())
        .map(|(a, b)| a.intersection(b).cloned().collect())
        .collect();
    KripkeModel::with_valuation(m1.frame().clone(), m1.alphabet().clone(), valuation)
}

/// Index of the pair world `(u, v)` in [`product`]`(m1, m2)`, where `m2` has
/// `right_len` worlds.
pub fn pair_index(u: usize, v: usize, right_len: usize) -> usize {
    u * right_len + v
}

/// Worlds are the pairs `(u,v)` in row-major order, `(u,v) R (u',v')` iff
/// both components are related, and `V((u,v)) = V₁(u) ∩ V₂(v)`.
pub fn product(m1: &KripkeModel, m2: &KripkeModel) -> Result<KripkeModel, ModelError> {
    if m1.alphabet() != m2.alphabet() {
        return Err(ModelError::AlphabetMismatch);
    }
    let (f1, f2) = (m1.frame(), m2.frame());
    let k = f2.len();
    let names = f1
        .worlds()
        .iter()
        .flat_map(|u| f2.worlds().iter().map(move |v| format!("({u},{v})")));
    let mut frame = KripkeFrame::new(names)?;
    let modalities: BTreeSet<&Modality> = f1.modalities().filter(|m| f2.modalities().any(|x| x == *m)).collect();
    for m in modalities {
        for (u, u2) in f1.edges(m) {
            for (v, v2) in f2.edges(m) {
                frame.add_edge(m, pair_index(u, v, k), pair_index(u2, v2, k));
            }
        }
    }
    let valuation = (0..f1.len())
        .flat_map(|u| (0..k).map(move |v| (u, v)))
        .map(|(u, v)| m1.valuation(u).intersection(m2.valuation(v)).cloned().collect())
        .collect();
    KripkeModel::with_valuation(frame, m1.alphabet().clone(), valuation)
}

/// `letter` holds exactly on `worlds` (given by name); all else unchanged.
pub fn override_valuation(
    m: &KripkeModel,
    letter: &str,
    worlds: &BTreeSet<String>,
) -> Result<KripkeModel, ModelError> {
    let indices = worlds
        .iter()
        .map(|w| m.frame().world_index(w))
        .collect::<Result<BTreeSet<usize>, _>>()?;
    override_valuation_at(m, letter, &indices)
}

/// [`override_valuation`] with worlds given by index.
pub fn override_valuation_at(
    m: &KripkeModel,
    letter: &str,
    worlds: &BTreeSet<usize>,
) -> Result<KripkeModel, ModelError> {
    if !m.alphabet().contains(letter) {
        return Err(ModelError::UnknownLetter(letter.to_string()));
    }
    if let Some(&bad) = worlds.iter().find(|&&w| w >= m.world_count()) {
        return Err(ModelError::UnknownWorld(format!("#{bad}")));
    }
    let mut out = m.clone();
    for w in 0..m.world_count() {
        out.assign(w, letter, worlds.contains(&w))?;
    }
    Ok(out)
}

/// Adds a fresh world `_x<k>` (least unused `k`) with valuation `val`, reached
/// from `from` by a single new `α` edge and with no outgoing edges. Returns
/// the new model and the index of the new world.
pub fn add_successor_world(
    m: &KripkeModel,
    from: &str,
    alpha: &Modality,
    val: &BTreeSet<String>,
) -> Result<(KripkeModel, usize), ModelError> {
    let from = m.frame().world_index(from)?;
    if let Some(bad) = val.iter().find(|l| !m.alphabet().contains(*l)) {
        return Err(ModelError::UnknownLetter(bad.clone()));
    }
    let name = (0..)
        .map(|k| format!("_x{k}"))
        .find(|n| m.frame().index_of(n).is_none())
        .expect("some counter is unused");
    let (mut frame, mut valuation, alphabet) = m.clone().into_parts();
    let fresh = frame.add_world(name)?;
    frame.add_edge(alpha, from, fresh);
    valuation.push(val.clone());
    Ok((KripkeModel::with_valuation(frame, alphabet, valuation)?, fresh))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn a() -> Modality {
        Modality::new("a").unwrap()
    }

    fn set(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn fan(j: usize) -> KripkeModel {
        let mut frame = KripkeFrame::numbered(3);
        frame.add_edge(&a(), 0, 1);
        frame.add_edge(&a(), 0, 2);
        let mut m = KripkeModel::new(frame, set(&["p"]));
        m.assign(j, "p", true).unwrap();
        m
    }

    #[test]
    fn intersection_of_fan_witnesses() {
        let (m1, m2) = (fan(1), fan(2));
        let i = intersect(&m1, &m2).unwrap();
        assert!(i.valuations().iter().all(BTreeSet::is_empty));
        assert!(!i.satisfies(0, &parse("<a>p").unwrap()));
        assert_eq!(intersect(&m1, &m1).unwrap(), m1);
        assert_eq!(intersect(&m1, &m2).unwrap(), intersect(&m2, &m1).unwrap());
    }

    #[test]
    fn intersection_requires_same_frame() {
        let other = KripkeModel::new(KripkeFrame::numbered(3), set(&["p"]));
        assert_eq!(intersect(&fan(1), &other), Err(ModelError::FrameMismatch));
        let other = KripkeModel::new(fan(1).frame().clone(), set(&["p", "q"]));
        assert_eq!(intersect(&fan(1), &other), Err(ModelError::AlphabetMismatch));
    }

    #[test]
    fn product_of_chain_and_point() {
        let mut chain = KripkeFrame::numbered(2);
        chain.add_edge(&a(), 0, 1);
        let m1 = KripkeModel::new(chain, set(&["p", "q"]));
        let mut m2 = KripkeModel::new(KripkeFrame::new(["v0"]).unwrap(), set(&["p", "q"]));
        m2.assign(0, "q", true).unwrap();
        let prod = product(&m1, &m2).unwrap();
        assert_eq!(prod.world_count(), 2);
        let w = prod.frame().world_index("(w0,v0)").unwrap();
        assert!(prod.frame().successors(&a(), w).is_empty());
        assert!(!prod.holds(w, "q"));
        assert!(prod.satisfies(w, &parse("[a]p").unwrap()));
    }

    #[test]
    fn product_with_looped_unit_is_isomorphic() {
        let m1 = fan(1);
        let mut unit_frame = KripkeFrame::new(["u"]).unwrap();
        unit_frame.add_edge(&a(), 0, 0);
        let mut unit = KripkeModel::new(unit_frame, set(&["p"]));
        unit.assign(0, "p", true).unwrap();
        let prod = product(&m1, &unit).unwrap();
        assert_eq!(prod.world_count(), 3);
        for u in 0..3 {
            assert_eq!(prod.valuation(u), m1.valuation(u));
            assert_eq!(prod.frame().successors(&a(), u), m1.frame().successors(&a(), u));
        }
        // Without the loop the product has no edges.
        let bare = KripkeModel::new(KripkeFrame::new(["u"]).unwrap(), set(&["p"]));
        let prod = product(&m1, &bare).unwrap();
        assert_eq!(prod.frame().modalities().count(), 0);
    }

    #[test]
    fn override_and_identity() {
        let m = fan(1);
        let all = set(&["w0", "w1", "w2"]);
        let o = override_valuation(&m, "p", &all).unwrap();
        assert!((0..3).all(|w| o.holds(w, "p")));
        let same = override_valuation(&m, "p", &set(&["w1"])).unwrap();
        assert_eq!(same, m);
        assert!(override_valuation(&m, "q", &all).is_err());
        assert!(override_valuation(&m, "p", &set(&["w7"])).is_err());
    }

    #[test]
    fn successor_world_surgery() {
        let m = KripkeModel::new(KripkeFrame::numbered(1), set(&["p", "q"]));
        let (m2, x) = add_successor_world(&m, "w0", &a(), &set(&["p"])).unwrap();
        assert_eq!(m2.frame().name(x), "_x0");
        assert!(m2.satisfies(0, &parse("<a>p").unwrap()));
        let (m3, y) = add_successor_world(&m2, "w0", &a(), &set(&[])).unwrap();
        assert_eq!(m3.frame().name(y), "_x1");
        assert!(!m3.satisfies(0, &parse("[a]p").unwrap()));
        assert!(m3.frame().successors(&a(), y).is_empty());
        assert!(add_successor_world(&m, "nope", &a(), &set(&[])).is_err());
        assert!(add_successor_world(&m, "w0", &a(), &set(&["r"])).is_err());
    }
}
