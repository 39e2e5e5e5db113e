//! Randomized trials of the model-closure properties behind the separation
//! results: Horn□ under intersection, Horn◇ under product, and positive
//! literals under valuation enlargement.

use serde::Serialize;

use crate::combinators::{intersect, pair_index, product};
use crate::sample::Sampler;
use crate::syntax::{Fragment, Modality};

/// Trial regime. A trial counts only when its premises hold; sampling stops
/// after `trials` such trials or `trials * 200` attempts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrialConfig {
    pub seed: u64,
    pub trials: u64,
    pub max_worlds: usize,
    pub modalities: usize,
    pub letters: usize,
    pub max_clauses: usize,
    pub max_depth: usize,
    pub density: f64,
}

impl Default for TrialConfig {
    fn default() -> Self {
        TrialConfig {
            seed: 0,
            trials: 10_000,
            max_worlds: 5,
            modalities: 2,
            letters: 3,
            max_clauses: 4,
            max_depth: 2,
            density: 0.3,
        }
    }
}

impl TrialConfig {
    pub fn with_trials(mut self, trials: u64) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn vocabulary(&self) -> (Vec<String>, Vec<Modality>) {
        let letters = ["p", "q", "r", "s", "t"].iter().take(self.letters.max(1)).map(|s| s.to_string()).collect();
        let mods = ["a", "b", "c"]
            .iter()
            .take(self.modalities.max(1))
            .map(|m| Modality::new(*m).expect("valid name"))
            .collect();
        (letters, mods)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TrialStats {
    /// Trials whose premises held.
    pub trials: u64,
    pub attempts: u64,
    pub violations: u64,
}

impl TrialStats {
    pub fn passed(&self, wanted: u64) -> bool {
        self.violations == 0 && self.trials >= wanted
    }
}

fn run(cfg: &TrialConfig, mut attempt: impl FnMut(&mut Sampler) -> Option<bool>) -> TrialStats {
    let mut s = Sampler::new(cfg.seed);
    let mut stats = TrialStats::default();
    while stats.trials < cfg.trials && stats.attempts < cfg.trials.saturating_mul(200) {
        stats.attempts += 1;
        if let Some(ok) = attempt(&mut s) {
            stats.trials += 1;
            stats.violations += u64::from(!ok);
        }
    }
    stats
}

/// If a Horn□ formula holds at `w` in two models on one frame, it holds at
/// `w` in their intersection.
pub fn intersection_closure_trials(cfg: &TrialConfig) -> TrialStats {
    let (letters, mods) = cfg.vocabulary();
    let alphabet = letters.iter().cloned().collect();
    run(cfg, |s| {
        let phi = s.clausal(Fragment::HORN_BOX, &letters, &mods, cfg.max_clauses, cfg.max_depth).to_formula();
        let frame = s.frame(cfg.max_worlds, &mods, cfg.density);
        let (m1, m2) = (s.model_on(&frame, &alphabet), s.model_on(&frame, &alphabet));
        let w = s.index(frame.len());
        if !(m1.satisfies(w, &phi) && m2.satisfies(w, &phi)) {
            return None;
        }
        Some(intersect(&m1, &m2).expect("same frame and alphabet").satisfies(w, &phi))
    })
}

/// If a Horn◇ formula holds at `w1` in one model and at `w2` in another, it
/// holds at `(w1, w2)` in their product.
pub fn product_closure_trials(cfg: &TrialConfig) -> TrialStats {
    let (letters, mods) = cfg.vocabulary();
    let alphabet = letters.iter().cloned().collect();
    run(cfg, |s| {
        let phi = s.clausal(Fragment::HORN_DIAMOND, &letters, &mods, cfg.max_clauses, cfg.max_depth).to_formula();
        let f1 = s.frame(cfg.max_worlds, &mods, cfg.density);
        let f2 = s.frame(cfg.max_worlds, &mods, cfg.density);
        let (m1, m2) = (s.model_on(&f1, &alphabet), s.model_on(&f2, &alphabet));
        let (w1, w2) = (s.index(f1.len()), s.index(f2.len()));
        if !(m1.satisfies(w1, &phi) && m2.satisfies(w2, &phi)) {
            return None;
        }
        let prod = product(&m1, &m2).expect("same alphabet");
        Some(prod.satisfies(pair_index(w1, w2, f2.len()), &phi))
    })
}

/// Enlarging a valuation never falsifies a positive literal: every world
/// satisfying it before still satisfies it after.
pub fn monotonicity_trials(cfg: &TrialConfig) -> TrialStats {
    let (letters, mods) = cfg.vocabulary();
    let alphabet = letters.iter().cloned().collect();
    run(cfg, |s| {
        let lit = s.literal(Fragment::KROM, &letters, &mods, cfg.max_depth + 1).to_formula();
        let frame = s.frame(cfg.max_worlds, &mods, cfg.density);
        let small = s.model_on(&frame, &alphabet);
        let big = s.enlarge(&small);
        Some((0..frame.len()).all(|w| !small.satisfies(w, &lit) || big.satisfies(w, &lit)))
    })
}
