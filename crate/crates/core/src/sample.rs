//! Seeded random generation of formulas, clausal formulas and models.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::semantics::{KripkeFrame, KripkeModel};
use crate::syntax::{ClausalFormula, Clause, Formula, Fragment, Modality, PositiveLiteral};

/// Deterministic generator; equal seeds give equal streams.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn pick<'a, T>(&mut self, xs: &'a [T]) -> &'a T {
        xs.choose(&mut self.rng).expect("non-empty choice")
    }

    /// Arbitrary formula of depth at most `depth`.
    pub fn formula(&mut self, letters: &[String], modalities: &[Modality], depth: usize) -> Formula {
        let leaf = depth == 0 || self.rng.gen_bool(0.25);
        if leaf {
            return if self.rng.gen_bool(0.15) { Formula::Top } else { Formula::prop(self.pick(letters).clone()) };
        }
        let d = depth - 1;
        match self.rng.gen_range(0..6) {
            0 => Formula::not(self.formula(letters, modalities, d)),
            1 => Formula::or(self.formula(letters, modalities, d), self.formula(letters, modalities, d)),
            2 => Formula::and(self.formula(letters, modalities, d), self.formula(letters, modalities, d)),
            3 => Formula::implies(self.formula(letters, modalities, d), self.formula(letters, modalities, d)),
            4 => Formula::diamond(self.pick(modalities).clone(), self.formula(letters, modalities, d)),
            _ => Formula::boxed(self.pick(modalities).clone(), self.formula(letters, modalities, d)),
        }
    }

    /// Positive literal of modal depth at most `max_depth` allowed by
    /// `fragment`'s box/diamond restriction.
    pub fn literal(
        &mut self,
        fragment: Fragment,
        letters: &[String],
        modalities: &[Modality],
        max_depth: usize,
    ) -> PositiveLiteral {
        let depth = self.rng.gen_range(0..=max_depth);
        let mut l = if self.rng.gen_bool(0.1) { PositiveLiteral::Top } else { PositiveLiteral::prop(self.pick(letters).clone()) };
        for _ in 0..depth {
            let m = self.pick(modalities).clone();
            let diamond = match (fragment.allows_diamond(), fragment.allows_box()) {
                (true, true) => self.rng.gen_bool(0.5),
                (d, _) => d,
            };
            l = if diamond { PositiveLiteral::diamond(m, l) } else { PositiveLiteral::boxed(m, l) };
        }
        l
    }

    /// Clause of `fragment` with at most three literals and a box prefix of
    /// length at most 2.
    pub fn clause(&mut self, fragment: Fragment, letters: &[String], modalities: &[Modality], max_depth: usize) -> Clause {
        let max_width = fragment.max_width().unwrap_or(3);
        let max_pos = fragment.max_positives().unwrap_or(3);
        let width = self.rng.gen_range(1..=max_width);
        let pos = self.rng.gen_range(0..=width.min(max_pos));
        let negs = (0..width - pos).map(|_| self.literal(fragment, letters, modalities, max_depth)).collect();
        let poss = (0..pos).map(|_| self.literal(fragment, letters, modalities, max_depth)).collect();
        let prefix_len = self.rng.gen_range(0..=2);
        let prefix = (0..prefix_len).map(|_| self.pick(modalities).clone()).collect();
        Clause::new(prefix, negs, poss).expect("width is positive")
    }

    /// Conjunction of 1..=`max_clauses` clauses of `fragment`.
    pub fn clausal(
        &mut self,
        fragment: Fragment,
        letters: &[String],
        modalities: &[Modality],
        max_clauses: usize,
        max_depth: usize,
    ) -> ClausalFormula {
        let k = self.rng.gen_range(1..=max_clauses);
        let clauses = (0..k).map(|_| self.clause(fragment, letters, modalities, max_depth)).collect();
        ClausalFormula::new(clauses).expect("at least one clause")
    }

    /// Frame with 1..=`max_worlds` worlds; each possible edge is present with
    /// probability `density`.
    pub fn frame(&mut self, max_worlds: usize, modalities: &[Modality], density: f64) -> KripkeFrame {
        let n = self.rng.gen_range(1..=max_worlds);
        self.frame_of_size(n, modalities, density)
    }

    pub fn frame_of_size(&mut self, n: usize, modalities: &[Modality], density: f64) -> KripkeFrame {
        let mut frame = KripkeFrame::numbered(n);
        for m in modalities {
            for u in 0..n {
                for v in 0..n {
                    if self.rng.gen_bool(density) {
                        frame.add_edge(m, u, v);
                    }
                }
            }
        }
        frame
    }

    /// Uniform valuation over `alphabet` on `frame`.
    pub fn model_on(&mut self, frame: &KripkeFrame, alphabet: &BTreeSet<String>) -> KripkeModel {
        let valuation = (0..frame.len())
            .map(|_| alphabet.iter().filter(|_| self.rng.gen_bool(0.5)).cloned().collect())
            .collect();
        KripkeModel::with_valuation(frame.clone(), alphabet.clone(), valuation).expect("letters from the alphabet")
    }

    /// Model whose valuation contains that of `m` at every world.
    pub fn enlarge(&mut self, m: &KripkeModel) -> KripkeModel {
        let mut out = m.clone();
        for w in 0..m.world_count() {
            for l in m.alphabet() {
                if self.rng.gen_bool(0.3) {
                    out.assign(w, l, true).expect("letter from the alphabet");
                }
            }
        }
        out
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn letters() -> Vec<String> {
        vec!["p".into(), "q".into()]
    }

    fn mods() -> Vec<Modality> {
        vec![Modality::new("a").unwrap(), Modality::new("b").unwrap()]
    }

    #[test]
    fn deterministic() {
        let a: Vec<Formula> = {
            let mut s = Sampler::new(7);
            (0..20).map(|_| s.formula(&letters(), &mods(), 4)).collect()
        };
        let mut s = Sampler::new(7);
        let b: Vec<Formula> = (0..20).map(|_| s.formula(&letters(), &mods(), 4)).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn clausal_samples_stay_in_fragment() {
        let mut s = Sampler::new(1);
        for frag in Fragment::ALL.into_iter().filter(|f| *f != Fragment::BOOL) {
            for _ in 0..50 {
                let cf = s.clausal(frag, &letters(), &mods(), 4, 2);
                assert!(frag.contains(&cf), "{frag}: {cf}");
                assert!(cf.clauses().iter().flat_map(Clause::literals).all(|l| l.modal_depth() <= 2));
            }
        }
    }

    #[test]
    fn enlargement_is_pointwise_superset() {
        let mut s = Sampler::new(3);
        let alphabet: BTreeSet<String> = letters().into_iter().collect();
        let frame = s.frame(4, &mods(), 0.3);
        let m = s.model_on(&frame, &alphabet);
        let big = s.enlarge(&m);
        for w in 0..m.world_count() {
            assert!(m.valuation(w).is_subset(big.valuation(w)));
        }
    }
}
