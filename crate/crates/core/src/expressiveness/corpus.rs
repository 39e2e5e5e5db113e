//! Exhaustive Krom corpus used to exercise the Krom rewritings.

use std::collections::BTreeSet;

use crate::syntax::{ClausalFormula, Clause, Modality, PositiveLiteral};

/// Positive literals over `letters` with modal depth at most `max_depth`,
/// using both boxes and diamonds of `modality`.
pub fn literals_up_to_depth(letters: &[&str], modality: &Modality, max_depth: usize) -> Vec<PositiveLiteral> {
    let mut layer: Vec<PositiveLiteral> = letters.iter().map(|l| PositiveLiteral::prop(*l)).collect();
    let mut out = layer.clone();
    for _ in 0..max_depth {
        layer = layer
            .iter()
            .flat_map(|l| [PositiveLiteral::diamond(modality.clone(), l.clone()), PositiveLiteral::boxed(modality.clone(), l.clone())])
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Krom formulas over `{p, q}` and the modality `a` with literal depth at
/// most 2, box prefix of length at most 1 and at most two literal
/// occurrences in total: one clause of width 1 or 2, or two distinct unit
/// clauses. Literals within a clause are distinct.
pub fn krom_corpus() -> Vec<ClausalFormula> {
    let a = Modality::new("a").expect("valid name");
    let lits = literals_up_to_depth(&["p", "q"], &a, 2);
    let signed: Vec<(bool, PositiveLiteral)> =
        lits.iter().flat_map(|l| [(true, l.clone()), (false, l.clone())]).collect();
    let prefixes = [Vec::new(), vec![a.clone()]];
    let clause = |prefix: &Vec<Modality>, body: &[&(bool, PositiveLiteral)]| {
        let negs = body.iter().filter(|(pos, _)| !pos).map(|(_, l)| l.clone()).collect();
        let poss = body.iter().filter(|(pos, _)| *pos).map(|(_, l)| l.clone()).collect();
        Clause::new(prefix.clone(), negs, poss).expect("non-empty body")
    };
    let mut units = Vec::new();
    let mut out = BTreeSet::new();
    for prefix in &prefixes {
        for (i, x) in signed.iter().enumerate() {
            let unit = clause(prefix, &[x]);
            units.push(unit.clone());
            out.insert(ClausalFormula::single(unit));
            for y in &signed[i + 1..] {
                out.insert(ClausalFormula::single(clause(prefix, &[x, y])));
            }
        }
    }
    for (i, c) in units.iter().enumerate() {
        for d in &units[i + 1..] {
            out.insert(ClausalFormula::new(vec![c.clone(), d.clone()]).expect("two clauses"));
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Fragment;

    #[test]
    fn corpus_shape() {
        let a = Modality::new("a").unwrap();
        assert_eq!(literals_up_to_depth(&["p", "q"], &a, 2).len(), 14);
        let corpus = krom_corpus();
        // 2 prefixes × (28 units + 378 pairs) single clauses, C(56, 2) unit pairs.
        assert_eq!(corpus.len(), 2 * (28 + 378) + 56 * 55 / 2);
        assert!(corpus.iter().all(|cf| Fragment::KROM.contains(cf)));
    }
}
