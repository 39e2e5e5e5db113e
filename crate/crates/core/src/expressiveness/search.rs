// Exhaustive search for a weak translation inside a fragment.
//
// Candidates are conjunctions of clauses, taken as multisets (clause order
// and repetition do not change meaning), and clause bodies as multisets of
// negated and plain literals. A conjunction is weakly equivalent to the
// target only if each clause holds wherever the target does, so clauses are
// first filtered against the target's truth table over all pointed models
// in the bound and only the survivors are combined.

use std::collections::BTreeSet;

use super::weak_equiv_check_with;
use crate::semantics::dense::{truth_words, Program};
use crate::semantics::ModelError;
use crate::syntax::{ClausalFormula, Clause, Formula, Fragment, Modality, PositiveLiteral};
use crate::{par, Limits, Result};

const CHUNK: usize = 512;

/// Search space of [`search_weak_translation_with`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub fragment: Fragment,
    pub alphabet: BTreeSet<String>,
    /// Modalities available to candidates. `None` means those of the target,
    /// or the single modality `a` when the target has none.
    pub modalities: Option<BTreeSet<Modality>>,
    /// Largest candidate size (constructor count, prefix boxes included).
    pub max_size: usize,
    pub max_worlds: usize,
}

/// First clausal formula of `fragment` over `alphabet` (by size, then text)
/// that agrees with `target` on every pointed model with at most
/// `max_worlds` worlds, or `None` if no candidate up to `max_size` does.
pub fn search_weak_translation(
    target: &Formula,
    fragment: Fragment,
    alphabet: &BTreeSet<String>,
    max_size: usize,
    max_worlds: usize,
) -> Result<Option<ClausalFormula>> {
    let options = SearchOptions { fragment, alphabet: alphabet.clone(), modalities: None, max_size, max_worlds };
    search_weak_translation_with(target, &options, &Limits::default())
}

pub fn search_weak_translation_with(
    target: &Formula,
    options: &SearchOptions,
    limits: &Limits,
) -> Result<Option<ClausalFormula>> {
    if let Some(bad) = target.letters().iter().find(|l| !options.alphabet.contains(*l)) {
        return Err(ModelError::UnknownLetter(bad.clone()).into());
    }
    let mods = candidate_modalities(target, options);
    let clauses = clauses(options.fragment, &options.alphabet, &mods, options.max_size);
    let letters: Vec<String> = options.alphabet.iter().cloned().collect();
    let all_mods: Vec<Modality> = mods.iter().cloned().chain(target.modalities()).collect::<BTreeSet<_>>().into_iter().collect();

    let mut program = Program::new(letters.clone(), all_mods.clone());
    let root = program.add(target);
    let target_words = truth_words(&program, &[root], options.max_worlds, limits)?.remove(0);

    let mut survivors: Vec<(Clause, Vec<u64>)> = Vec::new();
    for chunk in clauses.chunks(CHUNK) {
        let mut program = Program::new(letters.clone(), all_mods.clone());
        let roots: Vec<u32> = chunk.iter().map(|c| program.add(&c.to_formula())).collect();
        let words = truth_words(&program, &roots, options.max_worlds, limits)?;
        for (c, w) in chunk.iter().zip(words) {
            if target_words.iter().zip(&w).all(|(t, c)| t & !c == 0) {
                survivors.push((c.clone(), w));
            }
        }
    }

    let starts: Vec<usize> = (0..survivors.len()).collect();
    let hits = par::map_collect(&starts, limits.parallel, |&i| {
        let mut best: Option<(usize, String, Vec<usize>)> = None;
        let mut picked = vec![i];
        let (c, w) = &survivors[i];
        combine(&survivors, &target_words, options.max_size, &mut picked, c.size(), w.clone(), &mut best);
        best
    });
    let Some((_, _, picked)) = hits.into_iter().flatten().min() else {
        return Ok(None);
    };
    let cf = ClausalFormula::new(picked.iter().map(|&i| survivors[i].0.clone()).collect())?;
    debug_assert!(weak_equiv_check_with(target, &cf.to_formula(), &options.alphabet, options.max_worlds, limits)?
        .is_equivalent());
    Ok(Some(cf))
}

fn combine(
    survivors: &[(Clause, Vec<u64>)],
    target: &[u64],
    max_size: usize,
    picked: &mut Vec<usize>,
    size: usize,
    acc: Vec<u64>,
    best: &mut Option<(usize, String, Vec<usize>)>,
) {
    if acc == target {
        let cf = ClausalFormula::new(picked.iter().map(|&i| survivors[i].0.clone()).collect())
            .expect("picked is non-empty");
        let key = (size, cf.to_string(), picked.clone());
        if best.as_ref().map_or(true, |b| key < *b) {
            *best = Some(key);
        }
    }
    let last = *picked.last().expect("picked is non-empty");
    for j in last..survivors.len() {
        let (c, w) = &survivors[j];
        let next = size + 1 + c.size();
        if next > max_size {
            continue;
        }
        let merged: Vec<u64> = acc.iter().zip(w).map(|(a, b)| a & b).collect();
        picked.push(j);
        combine(survivors, target, max_size, picked, next, merged, best);
        picked.pop();
    }
}

fn candidate_modalities(target: &Formula, options: &SearchOptions) -> BTreeSet<Modality> {
    match &options.modalities {
        Some(m) => m.clone(),
        None => {
            let m = target.modalities();
            if m.is_empty() {
                BTreeSet::from([Modality::new("a").expect("valid name")])
            } else {
                m
            }
        }
    }
}

/// Positive literals allowed by `fragment` with size at most `max_size`,
/// ordered by size and then text.
pub(crate) fn literals(
    fragment: Fragment,
    alphabet: &BTreeSet<String>,
    modalities: &BTreeSet<Modality>,
    max_size: usize,
) -> Vec<PositiveLiteral> {
    let mut layers: Vec<Vec<PositiveLiteral>> = Vec::new();
    if max_size == 0 {
        return Vec::new();
    }
    let mut first = vec![PositiveLiteral::Top];
    first.extend(alphabet.iter().map(PositiveLiteral::prop));
    layers.push(first);
    for _ in 1..max_size {
        let prev = layers.last().expect("non-empty");
        let mut next = Vec::new();
        for m in modalities {
            for l in prev {
                if fragment.allows_diamond() {
                    next.push(PositiveLiteral::diamond(m.clone(), l.clone()));
                }
                if fragment.allows_box() {
                    next.push(PositiveLiteral::boxed(m.clone(), l.clone()));
                }
            }
        }
        layers.push(next);
    }
    let mut out: Vec<PositiveLiteral> = Vec::new();
    for mut layer in layers {
        layer.sort_by_cached_key(|l| crate::print(&l.to_formula()));
        out.extend(layer);
    }
    out
}

/// Non-decreasing index sequences over `sizes` with at most `max_len`
/// entries and total cost (size + `extra` per entry) at most `budget`.
fn multisets(sizes: &[usize], max_len: usize, extra: usize, budget: usize) -> Vec<(Vec<usize>, usize)> {
    fn go(
        sizes: &[usize],
        max_len: usize,
        extra: usize,
        budget: usize,
        start: usize,
        cur: &mut Vec<usize>,
        cost: usize,
        out: &mut Vec<(Vec<usize>, usize)>,
    ) {
        out.push((cur.clone(), cost));
        if cur.len() == max_len {
            return;
        }
        for i in start..sizes.len() {
            let c = cost + sizes[i] + extra;
            if c > budget {
                break;
            }
            cur.push(i);
            go(sizes, max_len, extra, budget, i, cur, c, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(sizes, max_len, extra, budget, 0, &mut Vec::new(), 0, &mut out);
    out
}

/// Clauses of `fragment` with size at most `max_size`, ordered by size and
/// then text.
pub(crate) fn clauses(
    fragment: Fragment,
    alphabet: &BTreeSet<String>,
    modalities: &BTreeSet<Modality>,
    max_size: usize,
) -> Vec<Clause> {
    let lits = literals(fragment, alphabet, modalities, max_size);
    let sizes: Vec<usize> = lits.iter().map(PositiveLiteral::size).collect();
    let max_pos = fragment.max_positives().unwrap_or(usize::MAX);
    let max_width = fragment.max_width().unwrap_or(usize::MAX);
    let mods: Vec<Modality> = modalities.iter().cloned().collect();
    let mut prefixes: Vec<Vec<Modality>> = vec![Vec::new()];
    let mut layer: Vec<Vec<Modality>> = vec![Vec::new()];
    for _ in 1..max_size {
        layer = layer
            .iter()
            .flat_map(|p| mods.iter().map(move |m| p.iter().cloned().chain([m.clone()]).collect()))
            .collect();
        prefixes.extend(layer.iter().cloned());
    }
    // Body cost: literal sizes, one per negation, one per disjunction.
    let negs = multisets(&sizes, max_width, 1, max_size + 1);
    let poss = multisets(&sizes, max_pos.min(max_width), 0, max_size + 1);
    let mut set = BTreeSet::new();
    for (n, ncost) in &negs {
        for (p, pcost) in &poss {
            let width = n.len() + p.len();
            if width == 0 || width > max_width {
                continue;
            }
            let body = ncost + pcost + width - 1;
            for prefix in &prefixes {
                if body + prefix.len() > max_size {
                    continue;
                }
                let clause = Clause::new(
                    prefix.clone(),
                    n.iter().map(|&i| lits[i].clone()).collect(),
                    p.iter().map(|&i| lits[i].clone()).collect(),
                )
                .expect("width is positive");
                set.insert(clause);
            }
        }
    }
    let mut out: Vec<Clause> = set.into_iter().collect();
    out.sort_by_cached_key(|c| (c.size(), ClausalFormula::single(c.clone()).to_string()));
    out
}

/// Every clausal formula of `fragment` over `alphabet` and `modalities` with
/// size at most `max_size`, clauses taken as a multiset, ordered by size and
/// then text.
pub fn candidates(
    fragment: Fragment,
    alphabet: &BTreeSet<String>,
    modalities: &BTreeSet<Modality>,
    max_size: usize,
) -> Vec<ClausalFormula> {
    let cs = clauses(fragment, alphabet, modalities, max_size);
    // Each extra clause costs its size plus one conjunction.
    let sizes: Vec<usize> = cs.iter().map(Clause::size).collect();
    let mut out: Vec<(usize, String, ClausalFormula)> = multisets(&sizes, usize::MAX, 1, max_size + 1)
        .into_iter()
        .filter(|(picked, _)| !picked.is_empty())
        .map(|(picked, cost)| {
            let cf = ClausalFormula::new(picked.iter().map(|&i| cs[i].clone()).collect()).expect("non-empty");
            (cost - 1, cf.to_string(), cf)
        })
        .collect();
    out.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    out.into_iter().map(|(_, _, cf)| cf).collect()
}
