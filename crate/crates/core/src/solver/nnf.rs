// Negation normal form over a hash-consed arena, plus the per-level counts
// that bound tree models.

use std::collections::{BTreeSet, HashMap};

use crate::syntax::{Formula, Modality};

pub(crate) type Id = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Node {
    Top,
    Bot,
    Lit(String, bool),
    And(Id, Id),
    Or(Id, Id),
    Dia(Modality, Id),
    Box(Modality, Id),
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Nnf {
    nodes: Vec<Node>,
    memo: HashMap<Node, Id>,
}

impl Nnf {
    pub fn node(&self, id: Id) -> &Node {
        &self.nodes[id as usize]
    }

    fn push(&mut self, node: Node) -> Id {
        if let Some(&id) = self.memo.get(&node) {
            return id;
        }
        let id = self.nodes.len() as Id;
        self.nodes.push(node.clone());
        self.memo.insert(node, id);
        id
    }

    /// NNF of `f` (when `positive`) or of `¬f`.
    pub fn add(&mut self, f: &Formula, positive: bool) -> Id {
        let node = match (f, positive) {
            (Formula::Top, true) => Node::Top,
            (Formula::Top, false) => Node::Bot,
            (Formula::Prop(p), pos) => Node::Lit(p.clone(), pos),
            (Formula::Not(a), pos) => return self.add(a, !pos),
            (Formula::Or(a, b), true) | (Formula::And(a, b), false) => {
                Node::Or(self.add(a, positive), self.add(b, positive))
            }
            (Formula::And(a, b), true) | (Formula::Or(a, b), false) => {
                Node::And(self.add(a, positive), self.add(b, positive))
            }
            (Formula::Diamond(m, a), true) | (Formula::Box(m, a), false) => {
                Node::Dia(m.clone(), self.add(a, positive))
            }
            (Formula::Box(m, a), true) | (Formula::Diamond(m, a), false) => {
                Node::Box(m.clone(), self.add(a, positive))
            }
        };
        self.push(node)
    }
}

/// What the NNF of a formula contains at each modal level (number of modal
/// operators above a position).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct LevelProfile {
    /// Diamond occurrences per level.
    pub diamonds: Vec<usize>,
    /// Modalities of those diamonds per level.
    pub diamond_modalities: Vec<BTreeSet<Modality>>,
    /// Letters per level.
    pub letters: Vec<BTreeSet<String>>,
}

impl LevelProfile {
    pub fn of(f: &Formula) -> Self {
        let depth = f.modal_depth();
        let mut p = LevelProfile {
            diamonds: vec![0; depth + 1],
            diamond_modalities: vec![BTreeSet::new(); depth + 1],
            letters: vec![BTreeSet::new(); depth + 1],
        };
        p.walk(f, true, 0);
        p
    }

    fn walk(&mut self, f: &Formula, positive: bool, level: usize) {
        match f {
            Formula::Top => {}
            Formula::Prop(x) => {
                self.letters[level].insert(x.clone());
            }
            Formula::Not(a) => self.walk(a, !positive, level),
            Formula::Or(a, b) | Formula::And(a, b) => {
                self.walk(a, positive, level);
                self.walk(b, positive, level);
            }
            Formula::Diamond(m, a) | Formula::Box(m, a) => {
                let is_diamond = matches!(f, Formula::Diamond(..)) == positive;
                if is_diamond {
                    self.diamonds[level] += 1;
                    self.diamond_modalities[level].insert(m.clone());
                }
                self.walk(a, positive, level + 1);
            }
        }
    }

    /// `Σ_k Π_{j<k} D_j`: worlds of a tree whose level-`j` worlds have at
    /// most `D_j` children each. Saturates at `usize::MAX`.
    pub fn world_bound(&self) -> usize {
        let mut total: usize = 0;
        let mut width: usize = 1;
        for (k, _) in self.diamonds.iter().enumerate() {
            if k > 0 {
                width = width.saturating_mul(self.diamonds[k - 1]);
            }
            if width == 0 {
                break;
            }
            total = total.saturating_add(width);
        }
        total
    }
}
