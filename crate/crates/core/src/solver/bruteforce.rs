// Bounded model search over tree-shaped pointed models.
//
// K has the tree model property, and a satisfiable formula is satisfied at
// the root of a tree whose level-k worlds have at most D_k children (D_k =
// diamonds at modal level k of the NNF), whose edges at level k carry only
// the modalities of those diamonds, and whose depth is the modal depth. Only
// letters occurring at level k matter at level-k worlds; the others are left
// false. Trees are enumerated in BFS order with (parent, label) pairs
// non-decreasing, which covers every such tree up to isomorphism.

use std::collections::BTreeSet;

use super::nnf::LevelProfile;
use crate::semantics::dense::{batch_count, lane, valid_mask, DenseFrame, Program};
use crate::semantics::{KripkeFrame, KripkeModel, PointedModel};
use crate::syntax::Formula;
use crate::{par, LimitExceeded, Limits};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Tree {
    parent: Vec<usize>,
    label: Vec<usize>,
    depth: Vec<usize>,
}

struct Shape {
    max_depth: usize,
    children: Vec<usize>,
    labels: Vec<Vec<usize>>,
    letters: Vec<Vec<usize>>,
}

fn trees(shape: &Shape, n: usize) -> Vec<Tree> {
    fn go(shape: &Shape, n: usize, t: &mut Tree, kids: &mut Vec<usize>, out: &mut Vec<Tree>) {
        let i = t.parent.len();
        if i == n {
            out.push(t.clone());
            return;
        }
        let (p0, l0) = if i > 1 { (t.parent[i - 1], t.label[i - 1]) } else { (0, 0) };
        for p in p0..i {
            let d = t.depth[p];
            if d >= shape.max_depth || kids[p] >= shape.children[d] {
                continue;
            }
            for &l in &shape.labels[d] {
                if p == p0 && l < l0 {
                    continue;
                }
                t.parent.push(p);
                t.label.push(l);
                t.depth.push(d + 1);
                kids[p] += 1;
                kids.push(0);
                go(shape, n, t, kids, out);
                kids.pop();
                kids[p] -= 1;
                t.parent.pop();
                t.label.pop();
                t.depth.pop();
            }
        }
    }
    let mut t = Tree { parent: vec![usize::MAX], label: vec![usize::MAX], depth: vec![0] };
    let mut out = Vec::new();
    go(shape, n, &mut t, &mut vec![0], &mut out);
    out
}

impl Tree {
    fn frame(&self, modalities: usize) -> DenseFrame {
        let n = self.parent.len();
        let mut f = DenseFrame::empty(n, modalities);
        for v in 1..n {
            f.succ[self.label[v] * n + self.parent[v]] |= 1 << v;
        }
        f
    }

    /// Valuation slots `(world, program letter)`, one bit each.
    fn slots(&self, shape: &Shape) -> Vec<(usize, usize)> {
        self.depth
            .iter()
            .enumerate()
            .flat_map(|(w, &d)| shape.letters[d].iter().map(move |&j| (w, j)))
            .collect()
    }
}

/// Size bound used by [`sat_bruteforce`]: a satisfiable formula has a tree
/// model with at most this many worlds.
pub fn tree_model_bound(f: &Formula) -> usize {
    LevelProfile::of(f).world_bound()
}

pub(crate) fn search(
    f: &Formula,
    max_worlds: usize,
    limits: &Limits,
) -> Result<(Option<PointedModel>, usize), LimitExceeded> {
    let profile = LevelProfile::of(f);
    let bound = profile.world_bound();
    let letters: Vec<String> = f.letters().into_iter().collect();
    let modalities: Vec<_> = f.modalities().into_iter().collect();
    let index_of = |xs: &[String], x: &String| xs.iter().position(|y| y == x).expect("collected from f");
    let shape = Shape {
        max_depth: profile.diamonds.len() - 1,
        children: profile.diamonds.clone(),
        labels: profile
            .diamond_modalities
            .iter()
            .map(|ms| ms.iter().map(|m| modalities.iter().position(|x| x == m).expect("collected from f")).collect())
            .collect(),
        letters: profile.letters.iter().map(|ls| ls.iter().map(|l| index_of(&letters, l)).collect()).collect(),
    };
    let mut program = Program::new(letters.clone(), modalities.clone());
    let root = program.add(f) as usize;
    let top = max_worlds.min(bound);
    if top > 64 {
        return Err(LimitExceeded { what: "worlds", limit: 64 });
    }
    let mut budget = 0u64;
    for n in 1..=top {
        let candidates = trees(&shape, n);
        for t in &candidates {
            let bits = t.slots(&shape).len();
            if bits >= 63 {
                return Err(LimitExceeded { what: "valuation bits", limit: 62 });
            }
            budget = budget.saturating_add(1u64 << bits);
        }
        if budget > limits.max_models {
            return Err(LimitExceeded { what: "enumerated models", limit: limits.max_models });
        }
        let hit = par::find_map_first(&candidates, limits.parallel, |t| {
            let frame = t.frame(modalities.len());
            let slots = t.slots(&shape);
            let valid = valid_mask(slots.len());
            let mut vals = vec![0u64; n * letters.len()];
            let mut out = Vec::new();
            for b in 0..batch_count(slots.len()) {
                let base = b << 6;
                for (pos, &(w, j)) in slots.iter().enumerate() {
                    vals[w * letters.len() + j] = lane(pos, base);
                }
                program.eval(&frame, &vals, &mut out);
                let sat = out[root * n] & valid;
                if sat != 0 {
                    return Some((t.clone(), base + sat.trailing_zeros() as u64));
                }
            }
            None
        });
        if let Some((t, index)) = hit {
            let mut frame = KripkeFrame::numbered(n);
            for v in 1..n {
                frame.add_edge(&modalities[t.label[v]], t.parent[v], v);
            }
            let mut valuation = vec![BTreeSet::new(); n];
            for (pos, (w, j)) in t.slots(&shape).into_iter().enumerate() {
                if index >> pos & 1 == 1 {
                    valuation[w].insert(letters[j].clone());
                }
            }
            let model = KripkeModel::with_valuation(frame, letters.iter().cloned().collect(), valuation)
                .expect("valuation uses the formula's letters");
            return Ok((Some(PointedModel::at(model, 0)), bound));
        }
    }
    Ok((None, bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn shape_of(src: &str) -> (Shape, usize) {
        let f = parse(src).unwrap();
        let p = LevelProfile::of(&f);
        let m = f.modalities().len();
        let shape = Shape {
            max_depth: p.diamonds.len() - 1,
            children: p.diamonds.clone(),
            labels: p.diamond_modalities.iter().map(|ms| (0..ms.len()).collect()).collect(),
            letters: vec![vec![]; p.diamonds.len()],
        };
        (shape, m)
    }

    #[test]
    fn tree_counts() {
        let (shape, _) = shape_of("<a>p & <a>q");
        assert_eq!(trees(&shape, 1).len(), 1);
        assert_eq!(trees(&shape, 2).len(), 1);
        assert_eq!(trees(&shape, 3).len(), 1);
        assert_eq!(trees(&shape, 4).len(), 0);
        let (shape, _) = shape_of("<a><a>p & <a><a>q");
        // Root with children c1, c2; grandchildren: chain, fan, or split.
        assert_eq!(trees(&shape, 3).len(), 2);
        let (shape, _) = shape_of("<a>p & <b>q");
        // Children labelled aa, ab, bb (as multisets).
        assert_eq!(trees(&shape, 3).len(), 3);
    }

    #[test]
    fn bounds() {
        assert_eq!(tree_model_bound(&parse("p").unwrap()), 1);
        assert_eq!(tree_model_bound(&parse("<a>p").unwrap()), 2);
        assert_eq!(tree_model_bound(&parse("<a>p & <a>q").unwrap()), 3);
        assert_eq!(tree_model_bound(&parse("[a]p").unwrap()), 1);
        assert_eq!(tree_model_bound(&parse("~[a]p & <a><a>q").unwrap()), 1 + 2 + 2);
    }
}
