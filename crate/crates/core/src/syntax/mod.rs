//! Abstract syntax of K_N formulas, the concrete grammar, clausal-form
//! recognition and fragment classification.

mod clausal;
mod fragment;
mod parse;
mod print;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use clausal::{recognize_clausal, ClausalFormula, Clause, ClauseError, NotClausal};
pub use fragment::{classify, Fragment, FragmentDescriptor, UnknownFragment};
pub use parse::{parse, parse_with, ParseError, ParseOptions};

/// Prefix reserved for letters and worlds minted by the library itself.
pub const RESERVED_PREFIX: char = '_';

/// A modality index, compared by name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Modality(String);

impl Modality {
    pub fn new(name: impl Into<String>) -> Result<Self, InvalidModality> {
        let name = name.into();
        if !name.is_empty()
            && name
                .bytes()
                .all(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'_')
        {
            Ok(Modality(name))
        } else {
            Err(InvalidModality(name))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for Modality {
    type Error = InvalidModality;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        Modality::new(value)
    }
}

impl From<Modality> for String {
    fn from(m: Modality) -> String {
        m.0
    }
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid modality name `{0}` (expected a non-empty name over [a-z0-9_])")]
pub struct InvalidModality(pub String);

/// A formula of the full modal language. `And`, implication and `F` are
/// layered on top of `Top`, `Not`, `Or` and the two modal operators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "op", content = "args", rename_all = "snake_case")]
pub enum Formula {
    Top,
    Prop(String),
    Not(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Diamond(Modality, Box<Formula>),
    Box(Modality, Box<Formula>),
}

impl Formula {
    pub fn top() -> Formula {
        Formula::Top
    }

    /// `F`, i.e. `~T`.
    pub fn bottom() -> Formula {
        Formula::not(Formula::Top)
    }

    pub fn prop(letter: impl Into<String>) -> Formula {
        Formula::Prop(letter.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    /// `a -> b`, which desugars to `~a | b`.
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::or(Formula::not(a), b)
    }

    pub fn diamond(m: Modality, f: Formula) -> Formula {
        Formula::Diamond(m, Box::new(f))
    }

    pub fn boxed(m: Modality, f: Formula) -> Formula {
        Formula::Box(m, Box::new(f))
    }

    /// Left-nested conjunction of the given formulas, `None` when empty.
    pub fn conjunction(parts: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        parts.into_iter().reduce(Formula::and)
    }

    /// Left-nested disjunction of the given formulas, `None` when empty.
    pub fn disjunction(parts: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        parts.into_iter().reduce(Formula::or)
    }

    /// Number of constructors in the tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Top | Formula::Prop(_) => 1,
            Formula::Not(a) | Formula::Diamond(_, a) | Formula::Box(_, a) => 1 + a.size(),
            Formula::Or(a, b) | Formula::And(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Maximal nesting of modal operators.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Top | Formula::Prop(_) => 0,
            Formula::Not(a) => a.modal_depth(),
            Formula::Or(a, b) | Formula::And(a, b) => a.modal_depth().max(b.modal_depth()),
            Formula::Diamond(_, a) | Formula::Box(_, a) => 1 + a.modal_depth(),
        }
    }

    pub fn letters(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Top => {}
            Formula::Prop(p) => {
                out.insert(p.clone());
            }
            Formula::Not(a) | Formula::Diamond(_, a) | Formula::Box(_, a) => {
                a.collect_letters(out)
            }
            Formula::Or(a, b) | Formula::And(a, b) => {
                a.collect_letters(out);
                b.collect_letters(out);
            }
        }
    }

    pub fn modalities(&self) -> BTreeSet<Modality> {
        let mut out = BTreeSet::new();
        self.collect_modalities(&mut out);
        out
    }

    fn collect_modalities(&self, out: &mut BTreeSet<Modality>) {
        match self {
            Formula::Top | Formula::Prop(_) => {}
            Formula::Not(a) => a.collect_modalities(out),
            Formula::Diamond(m, a) | Formula::Box(m, a) => {
                out.insert(m.clone());
                a.collect_modalities(out);
            }
            Formula::Or(a, b) | Formula::And(a, b) => {
                a.collect_modalities(out);
                b.collect_modalities(out);
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print(self))
    }
}

/// Canonical text of a formula; `parse(&print(f)) == f`.
pub fn print(f: &Formula) -> String {
    print::print(f)
}

/// Positive literals: `T`, letters, and boxes/diamonds over positive literals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PositiveLiteral {
    Top,
    Prop(String),
    Diamond(Modality, Box<PositiveLiteral>),
    Box(Modality, Box<PositiveLiteral>),
}

impl PositiveLiteral {
    pub fn prop(letter: impl Into<String>) -> Self {
        PositiveLiteral::Prop(letter.into())
    }

    pub fn diamond(m: Modality, l: PositiveLiteral) -> Self {
        PositiveLiteral::Diamond(m, Box::new(l))
    }

    pub fn boxed(m: Modality, l: PositiveLiteral) -> Self {
        PositiveLiteral::Box(m, Box::new(l))
    }

    /// Reads a formula back as a positive literal, if it is one.
    pub fn from_formula(f: &Formula) -> Option<Self> {
        match f {
            Formula::Top => Some(PositiveLiteral::Top),
            Formula::Prop(p) => Some(PositiveLiteral::Prop(p.clone())),
            Formula::Diamond(m, a) => {
                Some(PositiveLiteral::diamond(m.clone(), Self::from_formula(a)?))
            }
            Formula::Box(m, a) => Some(PositiveLiteral::boxed(m.clone(), Self::from_formula(a)?)),
            Formula::Not(_) | Formula::Or(..) | Formula::And(..) => None,
        }
    }

    pub fn to_formula(&self) -> Formula {
        match self {
            PositiveLiteral::Top => Formula::Top,
            PositiveLiteral::Prop(p) => Formula::Prop(p.clone()),
            PositiveLiteral::Diamond(m, l) => Formula::diamond(m.clone(), l.to_formula()),
            PositiveLiteral::Box(m, l) => Formula::boxed(m.clone(), l.to_formula()),
        }
    }

    /// Number of boxes and diamonds.
    pub fn modal_depth(&self) -> usize {
        match self {
            PositiveLiteral::Top | PositiveLiteral::Prop(_) => 0,
            PositiveLiteral::Diamond(_, l) | PositiveLiteral::Box(_, l) => 1 + l.modal_depth(),
        }
    }

    /// Constructor count.
    pub fn size(&self) -> usize {
        self.modal_depth() + 1
    }

    /// The letter at the bottom of the literal, `None` for `T`.
    pub fn letter(&self) -> Option<&str> {
        match self {
            PositiveLiteral::Top => None,
            PositiveLiteral::Prop(p) => Some(p),
            PositiveLiteral::Diamond(_, l) | PositiveLiteral::Box(_, l) => l.letter(),
        }
    }

    pub fn contains_diamond(&self) -> bool {
        match self {
            PositiveLiteral::Top | PositiveLiteral::Prop(_) => false,
            PositiveLiteral::Diamond(..) => true,
            PositiveLiteral::Box(_, l) => l.contains_diamond(),
        }
    }

    pub fn contains_box(&self) -> bool {
        match self {
            PositiveLiteral::Top | PositiveLiteral::Prop(_) => false,
            PositiveLiteral::Box(..) => true,
            PositiveLiteral::Diamond(_, l) => l.contains_box(),
        }
    }
}

impl fmt::Display for PositiveLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print(&self.to_formula()))
    }
}

/// Modal depth of a positive literal.
pub fn modal_depth(l: &PositiveLiteral) -> usize {
    l.modal_depth()
}

/// All letters occurring in the literals of a clause.
pub fn clause_letters(c: &Clause) -> BTreeSet<String> {
    c.letters()
}

/// Letters occurring in the consequent (the positive literals) of a clause.
pub fn consequent_letters(c: &Clause) -> BTreeSet<String> {
    c.consequent_letters()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Modality {
        Modality::new("a").unwrap()
    }

    #[test]
    fn modality_names() {
        assert!(Modality::new("a_1").is_ok());
        assert!(Modality::new("").is_err());
        assert!(Modality::new("A").is_err());
    }

    #[test]
    fn modal_depth_examples() {
        let b = Modality::new("b").unwrap();
        assert_eq!(modal_depth(&PositiveLiteral::prop("p")), 0);
        assert_eq!(modal_depth(&PositiveLiteral::Top), 0);
        let l = PositiveLiteral::diamond(a(), PositiveLiteral::boxed(b, PositiveLiteral::prop("p")));
        assert_eq!(modal_depth(&l), 2);
    }

    #[test]
    fn literal_embedding_round_trips() {
        let l = PositiveLiteral::boxed(a(), PositiveLiteral::diamond(a(), PositiveLiteral::Top));
        assert_eq!(PositiveLiteral::from_formula(&l.to_formula()), Some(l));
        assert_eq!(PositiveLiteral::from_formula(&Formula::bottom()), None);
    }

    #[test]
    fn letters_and_modalities() {
        let f = parse("<a>p & [b](q | ~r)").unwrap();
        assert_eq!(
            f.letters().into_iter().collect::<Vec<_>>(),
            vec!["p".to_string(), "q".into(), "r".into()]
        );
        assert_eq!(f.modalities().len(), 2);
        assert_eq!(f.size(), 8);
    }
}
