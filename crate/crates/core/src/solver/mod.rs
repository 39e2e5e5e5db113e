//! Satisfiability of modal formulas: a bounded brute-force model search and
//! a tableau decision procedure. Both return a checked witness when SAT.

mod bruteforce;
mod nnf;
mod tableau;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::semantics::{KripkeFrame, KripkeModel, PointedModel};
use crate::syntax::Formula;
use crate::{LimitExceeded, Limits};

pub use bruteforce::tree_model_bound;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SatStatus {
    Sat,
    Unsat,
    /// No model up to the requested size, which is below the proven bound.
    UnknownAtBound,
}

impl fmt::Display for SatStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SatStatus::Sat => "SAT",
            SatStatus::Unsat => "UNSAT",
            SatStatus::UnknownAtBound => "UNKNOWN_AT_BOUND",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SatResult {
    pub status: SatStatus,
    /// Pointed model satisfying the formula, present iff SAT.
    pub witness: Option<PointedModel>,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        self.status == SatStatus::Sat
    }

    fn sat(witness: PointedModel, f: &Formula) -> Self {
        debug_assert!(witness.satisfies(f), "solver witness must satisfy the formula");
        SatResult { status: SatStatus::Sat, witness: Some(witness) }
    }

    fn none(status: SatStatus) -> Self {
        SatResult { status, witness: None }
    }
}

/// Searches pointed models with at most `max_worlds` worlds, smallest first.
/// UNSAT is reported only when `max_worlds` reaches [`tree_model_bound`].
pub fn sat_bruteforce(f: &Formula, max_worlds: usize) -> Result<SatResult, LimitExceeded> {
    sat_bruteforce_with(f, max_worlds, &Limits::default())
}

pub fn sat_bruteforce_with(f: &Formula, max_worlds: usize, limits: &Limits) -> Result<SatResult, LimitExceeded> {
    let (witness, bound) = bruteforce::search(f, max_worlds, limits)?;
    Ok(match witness {
        Some(w) => SatResult::sat(w, f),
        None if max_worlds >= bound => SatResult::none(SatStatus::Unsat),
        None => SatResult::none(SatStatus::UnknownAtBound),
    })
}

/// Tableau decision procedure. Never returns `UnknownAtBound`.
pub fn sat_tableau(f: &Formula) -> Result<SatResult, LimitExceeded> {
    sat_tableau_with(f, &Limits::default())
}

pub fn sat_tableau_with(f: &Formula, limits: &Limits) -> Result<SatResult, LimitExceeded> {
    let mut arena = nnf::Nnf::default();
    let root = arena.add(f, true);
    let mut tab = tableau::Tableau::new(&arena, limits.max_tableau_nodes);
    Ok(match tab.run(root)? {
        Some(tree) => SatResult::sat(tree_model(&tree, f), f),
        None => SatResult::none(SatStatus::Unsat),
    })
}

fn tree_model(tree: &tableau::TreeWitness, f: &Formula) -> PointedModel {
    fn walk(
        t: &tableau::TreeWitness,
        edges: &mut Vec<(crate::syntax::Modality, usize, usize)>,
        vals: &mut Vec<std::collections::BTreeSet<String>>,
    ) -> usize {
        let me = vals.len();
        vals.push(t.letters.clone());
        for (m, child) in &t.children {
            let c = walk(child, edges, vals);
            edges.push((m.clone(), me, c));
        }
        me
    }
    let (mut edges, mut vals) = (Vec::new(), Vec::new());
    walk(tree, &mut edges, &mut vals);
    let mut frame = KripkeFrame::numbered(vals.len());
    for (m, u, v) in &edges {
        frame.add_edge(m, *u, *v);
    }
    let model = KripkeModel::with_valuation(frame, f.letters(), vals).expect("witness letters come from the formula");
    PointedModel::at(model, 0)
}
