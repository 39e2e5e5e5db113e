//! Bounded checks of weak and strong translations, exhaustive search for
//! weak translations inside a fragment, and replays of the separation and
//! equivalence results.

pub mod closure;
pub mod corpus;
mod replay;
mod search;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::semantics::dense::{hit_model, scan, HitKind, Program, Space};
use crate::semantics::{ModelError, PointedModel};
use crate::syntax::{Formula, Modality};
use crate::{Limits, Result};

pub use closure::{intersection_closure_trials, monotonicity_trials, product_closure_trials, TrialConfig, TrialStats};
pub use replay::{catalogue, replay_all, replay_theorem, ReplayStep, TheoremReport};
pub use search::{candidates, search_weak_translation, search_weak_translation_with, SearchOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictStatus {
    EquivalentUpToBound,
    Counterexample,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Pointed model over the base alphabet on which the formulas disagree.
    pub model: PointedModel,
    /// For a strong check, the extension that satisfies the translation
    /// while the source formula fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extension: Option<PointedModel>,
    pub details: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub max_worlds: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        self.status == VerdictStatus::EquivalentUpToBound
    }

    fn equivalent(max_worlds: usize) -> Self {
        Verdict { status: VerdictStatus::EquivalentUpToBound, max_worlds, counterexample: None }
    }

    fn refuted(max_worlds: usize, c: Counterexample) -> Self {
        Verdict { status: VerdictStatus::Counterexample, max_worlds, counterexample: Some(c) }
    }
}

fn modalities_of(fs: &[&Formula]) -> Vec<Modality> {
    fs.iter().flat_map(|f| f.modalities()).collect::<BTreeSet<_>>().into_iter().collect()
}

/// Pointwise agreement of `f` and `g` on every pointed model over `alphabet`
/// and the modalities of the two formulas with at most `max_worlds` worlds.
pub fn weak_equiv_check(f: &Formula, g: &Formula, alphabet: &BTreeSet<String>, max_worlds: usize) -> Result<Verdict> {
    weak_equiv_check_with(f, g, alphabet, max_worlds, &Limits::default())
}

pub fn weak_equiv_check_with(
    f: &Formula,
    g: &Formula,
    alphabet: &BTreeSet<String>,
    max_worlds: usize,
    limits: &Limits,
) -> Result<Verdict> {
    if let Some(bad) = f.letters().union(&g.letters()).find(|l| !alphabet.contains(*l)) {
        return Err(ModelError::UnknownLetter(bad.clone()).into());
    }
    let mut program = Program::new(alphabet.iter().cloned().collect(), modalities_of(&[f, g]));
    let (fi, gi) = (program.add(f), program.add(g));
    let space = Space { max_worlds, base: alphabet.len(), fresh: 0 };
    let Some(hit) = scan(&program, fi, gi, space, limits)? else {
        return Ok(Verdict::equivalent(max_worlds));
    };
    let model = hit_model(&program, space, &hit, false);
    let details = match hit.kind {
        HitKind::Forward => format!("first formula holds and second fails at {}", model.world_name()),
        HitKind::Backward => format!("second formula holds and first fails at {}", model.world_name()),
    };
    Ok(Verdict::refuted(max_worlds, Counterexample { model, extension: None, details }))
}

/// `g` is a strong translation of `f` up to `max_worlds`: on every pointed
/// model over the letters of `f`, `f` holds iff some extension to the letters
/// of `g` satisfies `g`.
pub fn strong_translation_check(f: &Formula, g: &Formula, max_worlds: usize) -> Result<Verdict> {
    strong_translation_check_with(f, g, max_worlds, &Limits::default())
}

pub fn strong_translation_check_with(f: &Formula, g: &Formula, max_worlds: usize, limits: &Limits) -> Result<Verdict> {
    let base = f.letters();
    let fresh: Vec<String> = g.letters().difference(&base).cloned().collect();
    let letters: Vec<String> = base.iter().cloned().chain(fresh.iter().cloned()).collect();
    let mut program = Program::new(letters, modalities_of(&[f, g]));
    let (fi, gi) = (program.add(f), program.add(g));
    let space = Space { max_worlds, base: base.len(), fresh: fresh.len() };
    let Some(hit) = scan(&program, fi, gi, space, limits)? else {
        return Ok(Verdict::equivalent(max_worlds));
    };
    let model = hit_model(&program, space, &hit, false);
    let c = match hit.kind {
        HitKind::Forward => Counterexample {
            details: format!("source holds at {} but no extension satisfies the translation", model.world_name()),
            model,
            extension: None,
        },
        HitKind::Backward => Counterexample {
            details: format!("an extension satisfies the translation at {} but the source fails", model.world_name()),
            model,
            extension: Some(hit_model(&program, space, &hit, true)),
        },
    };
    Ok(Verdict::refuted(max_worlds, c))
}
