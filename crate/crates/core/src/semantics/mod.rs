//! Kripke frames and models, the satisfaction relation and alphabet
//! extensions.

pub(crate) mod dense;
mod json;

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::syntax::{Formula, Modality, PositiveLiteral};

pub use json::ModelDocument;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("a frame needs at least one world")]
    NoWorlds,
    #[error("duplicate world `{0}`")]
    DuplicateWorld(String),
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("letter `{0}` is not in the alphabet")]
    UnknownLetter(String),
    #[error("letter `{0}` is already in the alphabet")]
    LetterClash(String),
    #[error("valuation has {found} cells for {expected} worlds")]
    ValuationLength { expected: usize, found: usize },
    #[error("the models are based on different frames")]
    FrameMismatch,
    #[error("the models have different alphabets")]
    AlphabetMismatch,
    #[error("{bits} extension bits are too many to enumerate")]
    TooManyExtensions { bits: usize },
    #[error("invalid modality `{0}`")]
    InvalidModality(String),
    #[error("malformed model document: {0}")]
    Json(String),
}

/// Worlds plus one accessibility relation per modality. Modalities without
/// edges are not stored, so two frames with the same edges compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeFrame {
    worlds: Vec<String>,
    succ: BTreeMap<Modality, Vec<Vec<usize>>>,
}

impl KripkeFrame {
    pub fn new<I, S>(worlds: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let worlds: Vec<String> = worlds.into_iter().map(Into::into).collect();
        if worlds.is_empty() {
            return Err(ModelError::NoWorlds);
        }
        let mut seen = BTreeSet::new();
        for w in &worlds {
            if !seen.insert(w.as_str()) {
                return Err(ModelError::DuplicateWorld(w.clone()));
            }
        }
        Ok(KripkeFrame { worlds, succ: BTreeMap::new() })
    }

    /// Worlds `w0`, …, `w{n-1}` and no edges.
    pub fn numbered(n: usize) -> Self {
        assert!(n > 0, "a frame needs at least one world");
        KripkeFrame { worlds: (0..n).map(|i| format!("w{i}")).collect(), succ: BTreeMap::new() }
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn index_of(&self, world: &str) -> Option<usize> {
        self.worlds.iter().position(|w| w == world)
    }

    pub fn world_index(&self, world: &str) -> Result<usize, ModelError> {
        self.index_of(world).ok_or_else(|| ModelError::UnknownWorld(world.to_string()))
    }

    pub fn name(&self, w: usize) -> &str {
        &self.worlds[w]
    }

    /// Appends a world and returns its index.
    pub fn add_world(&mut self, name: impl Into<String>) -> Result<usize, ModelError> {
        let name = name.into();
        if self.index_of(&name).is_some() {
            return Err(ModelError::DuplicateWorld(name));
        }
        self.worlds.push(name);
        for lists in self.succ.values_mut() {
            lists.push(Vec::new());
        }
        Ok(self.worlds.len() - 1)
    }

    /// Adds `from R_m to` by world index.
    pub fn add_edge(&mut self, m: &Modality, from: usize, to: usize) {
        let n = self.worlds.len();
        assert!(from < n && to < n, "edge endpoint out of range");
        let lists = self.succ.entry(m.clone()).or_insert_with(|| vec![Vec::new(); n]);
        if let Err(pos) = lists[from].binary_search(&to) {
            lists[from].insert(pos, to);
        }
    }

    /// Adds `from R_m to` by world name.
    pub fn connect(&mut self, m: &Modality, from: &str, to: &str) -> Result<(), ModelError> {
        let (f, t) = (self.world_index(from)?, self.world_index(to)?);
        self.add_edge(m, f, t);
        Ok(())
    }

    /// Sorted successor indices of `w` under `m`.
    pub fn successors(&self, m: &Modality, w: usize) -> &[usize] {
        self.succ.get(m).map_or(&[], |lists| lists[w].as_slice())
    }

    pub fn has_edge(&self, m: &Modality, from: usize, to: usize) -> bool {
        self.successors(m, from).binary_search(&to).is_ok()
    }

    /// Modalities with at least one edge.
    pub fn modalities(&self) -> impl Iterator<Item = &Modality> {
        self.succ.keys()
    }

    /// Edges of `m` in (source, target) order.
    pub fn edges(&self, m: &Modality) -> Vec<(usize, usize)> {
        self.succ.get(m).map_or_else(Vec::new, |lists| {
            lists
                .iter()
                .enumerate()
                .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
                .collect()
        })
    }
}

/// A frame with a valuation over a declared alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    frame: KripkeFrame,
    valuation: Vec<BTreeSet<String>>,
    alphabet: BTreeSet<String>,
}

impl KripkeModel {
    /// Model with every letter false everywhere.
    pub fn new(frame: KripkeFrame, alphabet: BTreeSet<String>) -> Self {
        let valuation = vec![BTreeSet::new(); frame.len()];
        KripkeModel { frame, valuation, alphabet }
    }

    pub fn with_valuation(
        frame: KripkeFrame,
        alphabet: BTreeSet<String>,
        valuation: Vec<BTreeSet<String>>,
    ) -> Result<Self, ModelError> {
        if valuation.len() != frame.len() {
            return Err(ModelError::ValuationLength {
                expected: frame.len(),
                found: valuation.len(),
            });
        }
        if let Some(bad) = valuation.iter().flatten().find(|l| !alphabet.contains(*l)) {
            return Err(ModelError::UnknownLetter(bad.clone()));
        }
        Ok(KripkeModel { frame, valuation, alphabet })
    }

    pub fn frame(&self) -> &KripkeFrame {
        &self.frame
    }

    pub fn alphabet(&self) -> &BTreeSet<String> {
        &self.alphabet
    }

    pub fn valuation(&self, w: usize) -> &BTreeSet<String> {
        &self.valuation[w]
    }

    pub fn valuations(&self) -> &[BTreeSet<String>] {
        &self.valuation
    }

    pub fn holds(&self, w: usize, letter: &str) -> bool {
        self.valuation[w].contains(letter)
    }

    pub fn world_count(&self) -> usize {
        self.frame.len()
    }

    /// Sets the truth value of a letter at a world.
    pub fn assign(&mut self, w: usize, letter: &str, value: bool) -> Result<(), ModelError> {
        if !self.alphabet.contains(letter) {
            return Err(ModelError::UnknownLetter(letter.to_string()));
        }
        if w >= self.frame.len() {
            return Err(ModelError::UnknownWorld(format!("#{w}")));
        }
        if value {
            self.valuation[w].insert(letter.to_string());
        } else {
            self.valuation[w].remove(letter);
        }
        Ok(())
    }

    pub(crate) fn into_parts(self) -> (KripkeFrame, Vec<BTreeSet<String>>, BTreeSet<String>) {
        (self.frame, self.valuation, self.alphabet)
    }

    /// Satisfaction at a world given by index. Letters outside the alphabet
    /// are false.
    pub fn satisfies(&self, w: usize, f: &Formula) -> bool {
        match f {
            Formula::Top => true,
            Formula::Prop(p) => self.holds(w, p),
            Formula::Not(a) => !self.satisfies(w, a),
            Formula::Or(a, b) => self.satisfies(w, a) || self.satisfies(w, b),
            Formula::And(a, b) => self.satisfies(w, a) && self.satisfies(w, b),
            Formula::Diamond(m, a) => {
                self.frame.successors(m, w).iter().any(|&v| self.satisfies(v, a))
            }
            Formula::Box(m, a) => self.frame.successors(m, w).iter().all(|&v| self.satisfies(v, a)),
        }
    }

    pub fn satisfies_literal(&self, w: usize, l: &PositiveLiteral) -> bool {
        match l {
            PositiveLiteral::Top => true,
            PositiveLiteral::Prop(p) => self.holds(w, p),
            PositiveLiteral::Diamond(m, l) => {
                self.frame.successors(m, w).iter().any(|&v| self.satisfies_literal(v, l))
            }
            PositiveLiteral::Box(m, l) => {
                self.frame.successors(m, w).iter().all(|&v| self.satisfies_literal(v, l))
            }
        }
    }

    /// Truth of `f` at every world, by world index.
    pub fn extension_of(&self, f: &Formula) -> Vec<bool> {
        (0..self.world_count()).map(|w| self.satisfies(w, f)).collect()
    }
}

/// A model with a designated world.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedModel {
    pub model: KripkeModel,
    pub world: usize,
}

impl PointedModel {
    pub fn new(model: KripkeModel, world: &str) -> Result<Self, ModelError> {
        let world = model.frame().world_index(world)?;
        Ok(PointedModel { model, world })
    }

    pub fn at(model: KripkeModel, world: usize) -> Self {
        assert!(world < model.world_count(), "designated world out of range");
        PointedModel { model, world }
    }

    pub fn world_name(&self) -> &str {
        self.model.frame().name(self.world)
    }

    pub fn satisfies(&self, f: &Formula) -> bool {
        self.model.satisfies(self.world, f)
    }
}

/// `M, w ⊩ f`, with `w` given by name.
pub fn check(m: &KripkeModel, w: &str, f: &Formula) -> Result<bool, ModelError> {
    Ok(m.satisfies(m.frame().world_index(w)?, f))
}

/// Same frame, larger alphabet, same valuation on the smaller alphabet.
pub fn is_extension(base: &KripkeModel, ext: &KripkeModel) -> bool {
    base.frame == ext.frame
        && base.alphabet.is_subset(&ext.alphabet)
        && base
            .valuation
            .iter()
            .zip(&ext.valuation)
            .all(|(b, e)| e.intersection(&base.alphabet).eq(b.iter()))
}

/// Every extension of `base` over `new_letters`, each exactly once.
///
/// The `k`-th extension sets letter `j` (in sorted order) at world `i` iff
/// bit `i * |new_letters| + j` of `k` is set.
pub fn enumerate_extensions(
    base: &KripkeModel,
    new_letters: &BTreeSet<String>,
) -> Result<Extensions, ModelError> {
    if let Some(clash) = new_letters.iter().find(|l| base.alphabet.contains(*l)) {
        return Err(ModelError::LetterClash(clash.clone()));
    }
    let bits = base.world_count() * new_letters.len();
    if bits >= 64 {
        return Err(ModelError::TooManyExtensions { bits });
    }
    let mut alphabet = base.alphabet.clone();
    alphabet.extend(new_letters.iter().cloned());
    Ok(Extensions {
        base: base.clone(),
        letters: new_letters.iter().cloned().collect(),
        alphabet,
        next: 0,
        total: 1u64 << bits,
    })
}

/// Iterator returned by [`enumerate_extensions`].
#[derive(Clone, Debug)]
pub struct Extensions {
    base: KripkeModel,
    letters: Vec<String>,
    alphabet: BTreeSet<String>,
    next: u64,
    total: u64,
}

impl Extensions {
    pub fn total(&self) -> u64 {
        self.total
    }
}

impl Iterator for Extensions {
    type Item = KripkeModel;

    fn next(&mut self) -> Option<KripkeModel> {
        if self.next >= self.total {
            return None;
        }
        let k = self.next;
        self.next += 1;
        let l = self.letters.len();
        let valuation = self
            .base
            .valuation
            .iter()
            .enumerate()
            .map(|(i, cell)| {
                let mut cell = cell.clone();
                for (j, letter) in self.letters.iter().enumerate() {
                    if k >> (i * l + j) & 1 == 1 {
                        cell.insert(letter.clone());
                    }
                }
                cell
            })
            .collect();
        Some(KripkeModel {
            frame: self.base.frame.clone(),
            valuation,
            alphabet: self.alphabet.clone(),
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = usize::try_from(self.total - self.next).unwrap_or(usize::MAX);
        (rest, usize::try_from(self.total - self.next).ok())
    }
}
