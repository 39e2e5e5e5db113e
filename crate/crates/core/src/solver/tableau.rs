// Tableau for multi-modal K over NNF labels. Or-nodes branch with
// backtracking; once a label is saturated each diamond gets one successor
// carrying the matching boxes. The first open branch yields a finite tree.

use std::collections::{BTreeMap, BTreeSet};

use super::nnf::{Id, Nnf, Node};
use crate::syntax::Modality;
use crate::LimitExceeded;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct TreeWitness {
    pub letters: BTreeSet<String>,
    pub children: Vec<(Modality, TreeWitness)>,
}

#[derive(Clone, Default)]
struct Label {
    ids: BTreeSet<Id>,
    lits: BTreeMap<String, bool>,
}

pub(crate) struct Tableau<'a> {
    nnf: &'a Nnf,
    used: u64,
    cap: u64,
}

impl<'a> Tableau<'a> {
    pub fn new(nnf: &'a Nnf, cap: u64) -> Self {
        Tableau { nnf, used: 0, cap }
    }


    pub fn run(&mut self, root: Id) -> Result<Option<TreeWitness>, LimitExceeded> {
        self.expand(Label::default(), vec![root])
    }

    fn expand(&mut self, mut label: Label, mut todo: Vec<Id>) -> Result<Option<TreeWitness>, LimitExceeded> {
        self.used += 1;
        if self.used > self.cap {
            return Err(LimitExceeded { what: "tableau nodes", limit: self.cap });
        }
        while let Some(x) = todo.pop() {
            if label.ids.contains(&x) {
                continue;
            }
            match self.nnf.node(x) {
                Node::Top => continue,
                Node::Bot => return Ok(None),
                Node::Lit(p, pos) => {
                    if label.lits.get(p).is_some_and(|v| v != pos) {
                        return Ok(None);
                    }
                    label.lits.insert(p.clone(), *pos);
                }
                Node::And(a, b) => {
                    todo.push(*b);
                    todo.push(*a);
                }
                Node::Or(a, b) => {
                    let (a, b) = (*a, *b);
                    label.ids.insert(x);
                    if label.ids.contains(&a) || label.ids.contains(&b) {
                        continue;
                    }
                    for choice in [a, b] {
                        let mut t = todo.clone();
                        t.push(choice);
                        if let Some(w) = self.expand(label.clone(), t)? {
                            return Ok(Some(w));
                        }
                    }
                    return Ok(None);
                }
                Node::Dia(..) | Node::Box(..) => {}
            }
            label.ids.insert(x);
        }
        let mut children = Vec::new();
        for &x in &label.ids {
            let Node::Dia(m, a) = self.nnf.node(x) else { continue };
            let mut t = vec![*a];
            for &y in &label.ids {
                if let Node::Box(m2, b) = self.nnf.node(y) {
                    if m2 == m {
                        t.push(*b);
                    }
                }
            }
            match self.expand(Label::default(), t)? {
                Some(child) => children.push((m.clone(), child)),
                None => return Ok(None),
            }
        }
        let letters = label.lits.into_iter().filter(|(_, v)| *v).map(|(p, _)| p).collect();
        Ok(Some(TreeWitness { letters, children }))
    }
}
