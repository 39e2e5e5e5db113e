//! Krom → Krom□ and Krom → Krom◇ rewritings with fresh letters.
//!
//! Each step picks the first literal (left to right, clauses in order) that
//! still contains a forbidden modal constructor and splits its clause in two.
//! When the forbidden constructor is the head of the literal, the clause
//! `∇(λ₁ ∨ λ₂)` becomes one of
//!
//! ```text
//! ∇(◇αλ ∨ λ₂)   ⟶  ∇(¬□αp ∨ λ₂) ∧ ∇□α(p ∨ λ)        (to box)
//! ∇(¬◇αλ ∨ λ₂)  ⟶  ∇(□αp ∨ λ₂)  ∧ ∇□α(¬p ∨ ¬λ)
//! ∇(□αλ ∨ λ₂)   ⟶  ∇(¬◇αp ∨ λ₂) ∧ ∇□α(p ∨ λ)        (to diamond)
//! ∇(¬□αλ ∨ λ₂)  ⟶  ∇(◇αp ∨ λ₂)  ∧ ∇□α(¬p ∨ ¬λ)
//! ```
//!
//! with `p` fresh and `λ₂` dropped for unary clauses. When the forbidden
//! constructor sits below an allowed one, `Mβλ'` with `M` allowed, the
//! allowed head is first named:
//!
//! ```text
//! ∇(Mβλ' ∨ λ₂)   ⟶  ∇(Mβx ∨ λ₂)  ∧ ∇□β(¬x ∨ λ')
//! ∇(¬Mβλ' ∨ λ₂)  ⟶  ∇(¬Mβx ∨ λ₂) ∧ ∇□β(¬λ' ∨ x)
//! ```
//!
//! Every step adds one clause and one fresh letter and strictly decreases
//! [`offending_measure`], so the number of steps is bounded by its initial
//! value. Each fresh letter `p` can be read as `¬λ` (or `x` as `λ'`) in any
//! model of the input, which makes the rewriting model-conservative.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::syntax::{classify, ClausalFormula, Clause, Modality, PositiveLiteral};

/// Which modal constructor must disappear from literals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    /// Remove diamonds (Krom → Krom□).
    Box,
    /// Remove boxes (Krom → Krom◇).
    Diamond,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Box => "box",
            Target::Diamond => "diamond",
        })
    }
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "box" => Ok(Target::Box),
            "diamond" | "dia" => Ok(Target::Diamond),
            other => Err(format!("unknown translation target `{other}` (expected box or diamond)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TranslateError {
    #[error("not a Krom formula: clause {index} `{clause}` has {width} literals")]
    NotKrom { index: usize, clause: String, width: usize },
}

/// Mints `_f0`, `_f1`, … skipping letters already in use.
#[derive(Clone, Debug, Default)]
pub struct FreshLetterSource {
    counter: usize,
    reserved: BTreeSet<String>,
}

impl FreshLetterSource {
    pub fn new(reserved: BTreeSet<String>) -> Self {
        FreshLetterSource { counter: 0, reserved }
    }

    pub fn next_letter(&mut self) -> String {
        loop {
            let name = format!("_f{}", self.counter);
            self.counter += 1;
            if self.reserved.insert(name.clone()) {
                return name;
            }
        }
    }
}

/// Output of a translation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Translation {
    pub formula: ClausalFormula,
    /// Fresh letters in order of introduction; one per step.
    pub fresh_letters: Vec<String>,
}

impl Translation {
    pub fn steps(&self) -> usize {
        self.fresh_letters.len()
    }
}

/// Rewrites a Krom formula into an equi-satisfiable Krom□ formula.
pub fn krom_to_krom_box(cf: &ClausalFormula) -> Result<ClausalFormula, TranslateError> {
    Ok(translate(cf, Target::Box)?.formula)
}

/// Rewrites a Krom formula into an equi-satisfiable Krom◇ formula.
pub fn krom_to_krom_diamond(cf: &ClausalFormula) -> Result<ClausalFormula, TranslateError> {
    Ok(translate(cf, Target::Diamond)?.formula)
}

pub fn translate(cf: &ClausalFormula, target: Target) -> Result<Translation, TranslateError> {
    if !classify(cf).krom {
        let (index, c) = cf
            .clauses()
            .iter()
            .enumerate()
            .find(|(_, c)| c.width() > 2)
            .expect("a non-Krom formula has a wide clause");
        return Err(TranslateError::NotKrom { index, clause: c.to_string(), width: c.width() });
    }
    let mut fresh = FreshLetterSource::new(cf.letters());
    let mut fresh_letters = Vec::new();
    let mut clauses: Vec<Clause> = cf.clauses().to_vec();
    let mut i = 0;
    while i < clauses.len() {
        match rewrite(&clauses[i], target, &mut fresh) {
            Some((first, second, letter)) => {
                clauses[i] = first;
                clauses.insert(i + 1, second);
                fresh_letters.push(letter);
            }
            None => i += 1,
        }
    }
    let formula = ClausalFormula::new(clauses).expect("rewriting never empties a formula");
    Ok(Translation { formula, fresh_letters })
}

fn forbidden_head(l: &PositiveLiteral, target: Target) -> bool {
    matches!(
        (l, target),
        (PositiveLiteral::Diamond(..), Target::Box) | (PositiveLiteral::Box(..), Target::Diamond)
    )
}

fn contains_forbidden(l: &PositiveLiteral, target: Target) -> bool {
    match target {
        Target::Box => l.contains_diamond(),
        Target::Diamond => l.contains_box(),
    }
}

/// Σ over forbidden constructors inside literals of one plus the number of
/// allowed modal constructors above it in its literal.
pub fn offending_measure(cf: &ClausalFormula, target: Target) -> usize {
    fn go(l: &PositiveLiteral, target: Target, allowed_above: usize) -> usize {
        match l {
            PositiveLiteral::Top | PositiveLiteral::Prop(_) => 0,
            PositiveLiteral::Diamond(_, inner) | PositiveLiteral::Box(_, inner) => {
                if forbidden_head(l, target) {
                    1 + allowed_above + go(inner, target, allowed_above)
                } else {
                    go(inner, target, allowed_above + 1)
                }
            }
        }
    }
    cf.clauses().iter().flat_map(Clause::literals).map(|l| go(l, target, 0)).sum()
}

/// Number of forbidden constructors inside literals.
pub fn offending_count(cf: &ClausalFormula, target: Target) -> usize {
    fn go(l: &PositiveLiteral, target: Target) -> usize {
        match l {
            PositiveLiteral::Top | PositiveLiteral::Prop(_) => 0,
            PositiveLiteral::Diamond(_, inner) | PositiveLiteral::Box(_, inner) => {
                usize::from(forbidden_head(l, target)) + go(inner, target)
            }
        }
    }
    cf.clauses().iter().flat_map(Clause::literals).map(|l| go(l, target)).sum()
}

fn with_modality(prefix: &[Modality], m: &Modality) -> Vec<Modality> {
    let mut p = prefix.to_vec();
    p.push(m.clone());
    p
}

fn allowed(target: Target, m: &Modality, l: PositiveLiteral) -> PositiveLiteral {
    match target {
        Target::Box => PositiveLiteral::boxed(m.clone(), l),
        Target::Diamond => PositiveLiteral::diamond(m.clone(), l),
    }
}

fn clause(prefix: Vec<Modality>, negatives: Vec<PositiveLiteral>, positives: Vec<PositiveLiteral>) -> Clause {
    Clause::new(prefix, negatives, positives).expect("rewritten clauses keep a literal")
}

// One step on the first offending literal of `c`, if any.
fn rewrite(c: &Clause, target: Target, fresh: &mut FreshLetterSource) -> Option<(Clause, Clause, String)> {
    let (positive, idx) = c
        .negatives()
        .iter()
        .enumerate()
        .map(|(i, l)| (false, i, l))
        .chain(c.positives().iter().enumerate().map(|(i, l)| (true, i, l)))
        .find(|(_, _, l)| contains_forbidden(l, target))
        .map(|(pos, i, _)| (pos, i))?;
    let lit = if positive { &c.positives()[idx] } else { &c.negatives()[idx] };
    let (m, inner) = match lit {
        PositiveLiteral::Diamond(m, inner) | PositiveLiteral::Box(m, inner) => (m, (**inner).clone()),
        _ => unreachable!("letters and T contain no modal constructor"),
    };
    let letter = fresh.next_letter();
    let p = PositiveLiteral::prop(letter.clone());
    let prefix = c.prefix();
    let mut negs = c.negatives().to_vec();
    let mut poss = c.positives().to_vec();
    let below = with_modality(prefix, m);
    let (first, second) = if forbidden_head(lit, target) {
        // The replacement has the opposite polarity and the other modality.
        let replacement = allowed(target, m, p.clone());
        if positive {
            poss.remove(idx);
            negs.push(replacement);
            (clause(prefix.to_vec(), negs, poss), clause(below, vec![], vec![p, inner]))
        } else {
            negs.remove(idx);
            poss.insert(0, replacement);
            (clause(prefix.to_vec(), negs, poss), clause(below, vec![p, inner], vec![]))
        }
    } else {
        let renamed = allowed(target, m, p.clone());
        if positive {
            poss[idx] = renamed;
            (clause(prefix.to_vec(), negs, poss), clause(below, vec![p], vec![inner]))
        } else {
            negs[idx] = renamed;
            (clause(prefix.to_vec(), negs, poss), clause(below, vec![inner], vec![p]))
        }
    };
    Some((first, second, letter))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse, recognize_clausal};

    fn cf(text: &str) -> ClausalFormula {
        recognize_clausal(&parse(text).unwrap()).unwrap()
    }

    #[test]
    fn diamond_literal_to_box() {
        let t = translate(&cf("<a>p"), Target::Box).unwrap();
        assert_eq!(t.formula.to_string(), "~[a]_f0 & [a](_f0 | p)");
        assert_eq!(t.fresh_letters, vec!["_f0"]);
    }

    #[test]
    fn box_implication_to_diamond() {
        let t = translate(&cf("[a]p -> q"), Target::Diamond).unwrap();
        assert_eq!(t.formula.to_string(), "(<a>_f0 | q) & [a](~_f0 | ~p)");
    }

    #[test]
    fn nested_diamonds_take_two_steps() {
        let input = cf("<a><b>p");
        let t = translate(&input, Target::Box).unwrap();
        assert_eq!(t.steps(), 2);
        let d = classify(&t.formula);
        assert!(d.box_only && d.krom);
        assert_eq!(offending_count(&t.formula, Target::Box), 0);
    }

    #[test]
    fn nested_boxes_take_two_steps() {
        let t = translate(&cf("[a][b]p"), Target::Diamond).unwrap();
        assert_eq!(t.steps(), 2);
        let d = classify(&t.formula);
        assert!(d.diamond_only && d.krom);
    }

    #[test]
    fn clean_input_is_untouched() {
        let input = cf("[a](p | [b]q) & ~[a]r");
        let t = translate(&input, Target::Box).unwrap();
        assert_eq!(t.formula, input);
        assert!(t.fresh_letters.is_empty());
        let input = cf("<a>p | ~<b>q");
        assert_eq!(krom_to_krom_diamond(&input).unwrap(), input);
    }

    #[test]
    fn forbidden_below_allowed_is_named() {
        // [b]<a>p: the diamond sits under a box.
        let input = cf("[b]<a>p | q");
        assert_eq!(offending_measure(&input, Target::Box), 2);
        let t = translate(&input, Target::Box).unwrap();
        assert_eq!(t.steps(), 2);
        assert_eq!(t.formula.clauses().len(), 3);
        assert!(classify(&t.formula).box_only);
    }

    #[test]
    fn fresh_letters_avoid_input_letters() {
        let mut src = FreshLetterSource::new(["_f0".to_string(), "_f2".to_string()].into());
        assert_eq!(src.next_letter(), "_f1");
        assert_eq!(src.next_letter(), "_f3");
    }

    #[test]
    fn rejects_non_krom() {
        let err = translate(&cf("p & q -> r"), Target::Box).unwrap_err();
        assert!(matches!(err, TranslateError::NotKrom { width: 3, .. }));
    }

    #[test]
    fn negated_top_corner() {
        let t = translate(&cf("~<a>T"), Target::Box).unwrap();
        assert_eq!(t.formula.to_string(), "[a]_f0 & [a]~_f0");
        let t = translate(&cf("[a]T"), Target::Diamond).unwrap();
        assert!(classify(&t.formula).diamond_only);
    }
}
