use std::collections::BTreeSet;
use std::fmt;

use super::{print, Formula, Modality, PositiveLiteral};

/// `∇(¬λ₁ ∨ … ∨ ¬λₙ ∨ λₙ₊₁ ∨ … ∨ λₙ₊ₘ)` with `∇` a (possibly empty) box prefix.
///
/// A negated `T` among other literals is the `⊥` disjunct and is dropped on
/// construction, so `~T` only survives as the sole literal of a clause.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause {
    prefix: Vec<Modality>,
    negatives: Vec<PositiveLiteral>,
    positives: Vec<PositiveLiteral>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClauseError {
    #[error("a clause needs at least one literal")]
    Empty,
    #[error("a clausal formula needs at least one clause")]
    NoClauses,
}

impl Clause {
    pub fn new(
        prefix: Vec<Modality>,
        mut negatives: Vec<PositiveLiteral>,
        positives: Vec<PositiveLiteral>,
    ) -> Result<Self, ClauseError> {
        if negatives.len() + positives.len() == 0 {
            return Err(ClauseError::Empty);
        }
        if negatives.len() + positives.len() > 1 {
            negatives.retain(|l| *l != PositiveLiteral::Top);
            if negatives.is_empty() && positives.is_empty() {
                negatives.push(PositiveLiteral::Top);
            }
        }
        Ok(Clause { prefix, negatives, positives })
    }

    /// The clause `(T -> λ)`.
    pub fn literal(l: PositiveLiteral) -> Self {
        Clause { prefix: Vec::new(), negatives: Vec::new(), positives: vec![l] }
    }

    /// The clause `(λ -> F)`.
    pub fn negated_literal(l: PositiveLiteral) -> Self {
        Clause { prefix: Vec::new(), negatives: vec![l], positives: Vec::new() }
    }

    pub fn with_prefix(mut self, prefix: Vec<Modality>) -> Self {
        self.prefix = prefix;
        self
    }

    pub fn prefix(&self) -> &[Modality] {
        &self.prefix
    }

    pub fn negatives(&self) -> &[PositiveLiteral] {
        &self.negatives
    }

    pub fn positives(&self) -> &[PositiveLiteral] {
        &self.positives
    }

    /// `n + m`.
    pub fn width(&self) -> usize {
        self.negatives.len() + self.positives.len()
    }

    /// Literals in clause order, negatives first, tagged with polarity
    /// (`true` for positive).
    pub fn signed_literals(&self) -> impl Iterator<Item = (bool, &PositiveLiteral)> {
        self.negatives
            .iter()
            .map(|l| (false, l))
            .chain(self.positives.iter().map(|l| (true, l)))
    }

    pub fn literals(&self) -> impl Iterator<Item = &PositiveLiteral> {
        self.negatives.iter().chain(self.positives.iter())
    }

    pub fn letters(&self) -> BTreeSet<String> {
        self.literals().filter_map(|l| l.letter()).map(str::to_string).collect()
    }

    pub fn consequent_letters(&self) -> BTreeSet<String> {
        self.positives.iter().filter_map(|l| l.letter()).map(str::to_string).collect()
    }

    /// Constructor count of the plain `∇(¬λ₁ ∨ … ∨ λₙ₊ₘ)` reading.
    pub fn size(&self) -> usize {
        self.prefix.len()
            + self.literals().map(PositiveLiteral::size).sum::<usize>()
            + self.negatives.len()
            + (self.width() - 1)
    }

    /// Formula whose recognition gives this clause back.
    ///
    /// A prefixed clause with a single positive literal is emitted as
    /// `∇(F | λ)`; writing `∇λ` would read back as one boxed literal.
    pub fn to_formula(&self) -> Formula {
        let mut body = if self.prefix.is_empty() || self.negatives.len() + self.positives.len() > 1
        {
            Formula::disjunction(self.signed_literals().map(|(pos, l)| {
                if pos {
                    l.to_formula()
                } else {
                    Formula::not(l.to_formula())
                }
            }))
            .expect("clauses are non-empty")
        } else if let [l] = self.positives.as_slice() {
            Formula::or(Formula::bottom(), l.to_formula())
        } else {
            Formula::not(self.negatives[0].to_formula())
        };
        for m in self.prefix.iter().rev() {
            body = Formula::boxed(m.clone(), body);
        }
        body
    }

    // Implicative rendering; the flag says whether the text binds looser
    // than `&` and needs parentheses inside a conjunction.
    fn render(&self) -> (String, bool) {
        let lit = |l: &PositiveLiteral| print(&l.to_formula());
        let join = |ls: &[PositiveLiteral], sep: &str| {
            ls.iter().map(lit).collect::<Vec<_>>().join(sep)
        };
        let (n, m) = (self.negatives.len(), self.positives.len());
        let (body, loose) = match (n, m) {
            (0, 1) if !self.prefix.is_empty() => {
                (format!("T -> {}", lit(&self.positives[0])), true)
            }
            (0, 1) => (lit(&self.positives[0]), false),
            (0, _) => (join(&self.positives, " | "), true),
            (1, 0) => (format!("~{}", lit(&self.negatives[0])), false),
            (_, 0) => {
                let negated: Vec<String> =
                    self.negatives.iter().map(|l| format!("~{}", lit(l))).collect();
                (negated.join(" | "), true)
            }
            _ => (
                format!("{} -> {}", join(&self.negatives, " & "), join(&self.positives, " | ")),
                true,
            ),
        };
        if self.prefix.is_empty() {
            return (body, loose);
        }
        let prefix: String = self.prefix.iter().map(|m| format!("[{m}]")).collect();
        if loose {
            (format!("{prefix}({body})"), false)
        } else {
            (format!("{prefix}{body}"), false)
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render().0)
    }
}

/// A non-empty conjunction of clauses.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClausalFormula {
    clauses: Vec<Clause>,
}

impl ClausalFormula {
    pub fn new(clauses: Vec<Clause>) -> Result<Self, ClauseError> {
        if clauses.is_empty() {
            Err(ClauseError::NoClauses)
        } else {
            Ok(ClausalFormula { clauses })
        }
    }

    pub fn single(clause: Clause) -> Self {
        ClausalFormula { clauses: vec![clause] }
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn into_clauses(self) -> Vec<Clause> {
        self.clauses
    }

    pub fn to_formula(&self) -> Formula {
        Formula::conjunction(self.clauses.iter().map(Clause::to_formula))
            .expect("clausal formulas are non-empty")
    }

    pub fn letters(&self) -> BTreeSet<String> {
        self.clauses.iter().flat_map(Clause::letters).collect()
    }

    pub fn modalities(&self) -> BTreeSet<Modality> {
        self.to_formula().modalities()
    }

    /// Constructor count, prefix boxes included.
    pub fn size(&self) -> usize {
        self.clauses.iter().map(Clause::size).sum::<usize>() + self.clauses.len() - 1
    }
}

impl fmt::Display for ClausalFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [c] = self.clauses.as_slice() {
            return f.write_str(&c.render().0);
        }
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|c| match c.render() {
                (s, true) => format!("({s})"),
                (s, false) => s,
            })
            .collect();
        f.write_str(&parts.join(" & "))
    }
}

/// The input is not literally a conjunction of clauses.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not in clausal form: offending subformula `{subformula}` at path {path:?}")]
pub struct NotClausal {
    /// Child indices from the root to the offending node (0 = left/only
    /// child, 1 = right child).
    pub path: Vec<usize>,
    pub subformula: String,
}

/// Recognises the clausal shape syntactically. `And`/`Or` chains are
/// flattened; a disjunct `~(λ₁ & … & λₖ)` (the implicative form) contributes
/// `k` negative literals.
pub fn recognize_clausal(f: &Formula) -> Result<ClausalFormula, NotClausal> {
    let mut conjuncts = Vec::new();
    flatten(f, &mut Vec::new(), &mut conjuncts, |g| match g {
        Formula::And(a, b) => Some((a, b)),
        _ => None,
    });
    let clauses = conjuncts
        .into_iter()
        .map(|(path, c)| recognize_clause(c, path))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ClausalFormula { clauses })
}

type Located<'a> = (Vec<usize>, &'a Formula);

fn flatten<'a>(
    f: &'a Formula,
    path: &mut Vec<usize>,
    out: &mut Vec<Located<'a>>,
    split: fn(&'a Formula) -> Option<(&'a Formula, &'a Formula)>,
) {
    if let Some((a, b)) = split(f) {
        path.push(0);
        flatten(a, path, out, split);
        path.pop();
        path.push(1);
        flatten(b, path, out, split);
        path.pop();
    } else {
        out.push((path.clone(), f));
    }
}

fn not_clausal(path: Vec<usize>, f: &Formula) -> NotClausal {
    NotClausal { path, subformula: print(f) }
}

fn recognize_clause(f: &Formula, mut path: Vec<usize>) -> Result<Clause, NotClausal> {
    if let Some(l) = PositiveLiteral::from_formula(f) {
        return Ok(Clause::literal(l));
    }
    if let Formula::Not(inner) = f {
        if let Some(l) = PositiveLiteral::from_formula(inner) {
            return Ok(Clause::negated_literal(l));
        }
    }
    let mut prefix = Vec::new();
    let mut body = f;
    while let Formula::Box(m, inner) = body {
        prefix.push(m.clone());
        body = inner;
        path.push(0);
    }
    let mut disjuncts = Vec::new();
    flatten(body, &mut path, &mut disjuncts, |g| match g {
        Formula::Or(a, b) => Some((a, b)),
        _ => None,
    });
    let (mut negatives, mut positives) = (Vec::new(), Vec::new());
    for (dpath, d) in disjuncts {
        if let Some(l) = PositiveLiteral::from_formula(d) {
            positives.push(l);
            continue;
        }
        let Formula::Not(inner) = d else {
            return Err(not_clausal(dpath, d));
        };
        let mut conjuncts = Vec::new();
        let mut inner_path = dpath.clone();
        inner_path.push(0);
        flatten(inner, &mut inner_path, &mut conjuncts, |g| match g {
            Formula::And(a, b) => Some((a, b)),
            _ => None,
        });
        for (_, c) in conjuncts {
            match PositiveLiteral::from_formula(c) {
                Some(l) => negatives.push(l),
                None => return Err(not_clausal(dpath, d)),
            }
        }
    }
    Clause::new(prefix, negatives, positives).map_err(|_| not_clausal(path, body))
}
