// Mechanical replays of the separation and equivalence results.
//
// Each replay builds the concrete models of the proof and asserts every
// claim made about them. Where a proof argues about an arbitrary candidate
// translation, the replay runs the proof's construction against every
// candidate of the target fragment up to a small size and checks that the
// construction refutes it.

use std::collections::BTreeSet;

use serde::Serialize;

use super::closure::{intersection_closure_trials, monotonicity_trials, product_closure_trials, TrialConfig};
use super::corpus::{krom_corpus, literals_up_to_depth};
use super::search::candidates;
use super::{search_weak_translation, strong_translation_check};
use crate::combinators::{add_successor_world, intersect, override_valuation, pair_index, product};
use crate::semantics::dense::{canonical_frames, DenseFrame};
use crate::semantics::{enumerate_extensions, KripkeFrame, KripkeModel};
use crate::solver::{sat_bruteforce, tree_model_bound, SatStatus};
use crate::syntax::{ClausalFormula, Clause, Formula, Fragment, Modality, PositiveLiteral};
use crate::translate::{translate, Target};
use crate::{classify, parse, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReplayStep {
    pub description: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub id: String,
    pub steps: Vec<ReplayStep>,
    pub overall: bool,
}

impl TheoremReport {
    /// One JSON object per step: `theorem`, `step` (1-based), `description`
    /// and `pass`.
    pub fn json_lines(&self) -> Vec<String> {
        self.steps
            .iter()
            .enumerate()
            .map(|(i, s)| {
                serde_json::json!({
                    "theorem": self.id,
                    "step": i + 1,
                    "description": s.description,
                    "pass": s.pass,
                })
                .to_string()
            })
            .collect()
    }
}

/// Replay ids and the result each one covers.
pub fn catalogue() -> &'static [(&'static str, &'static str)] {
    &[
        ("horn-vs-bool", "Horn is weakly less expressive than Bool"),
        ("krom-vs-bool", "Krom is weakly less expressive than Bool"),
        ("horn-krom-incomparable", "Horn and Krom are weakly incomparable, core is weakly below both"),
        ("intersection-closure", "Horn-box is closed under intersection of models"),
        ("hornbox-vs-horn", "Horn-box is less expressive than Horn, core-box than core"),
        ("product-closure", "Horn-diamond is closed under product of models"),
        ("horndia-vs-horn", "Horn-diamond is less expressive than Horn, core-diamond than core"),
        ("krombox-equiv", "Krom-box is as expressive as Krom, and weakly less expressive"),
        ("kromdia-equiv", "Krom-diamond is as expressive as Krom, and weakly less expressive"),
        ("box-diamond-incomparable", "box and diamond variants of Horn, Krom and core are incomparable"),
        ("mixed-incomparable", "Horn and Krom variants are weakly incomparable, core variants lie below Krom"),
    ]
}

pub fn replay_theorem(id: &str) -> Result<TheoremReport> {
    let mut r = Steps::default();
    match id {
        "horn-vs-bool" => horn_vs_bool(&mut r)?,
        "krom-vs-bool" => krom_vs_bool(&mut r)?,
        "horn-krom-incomparable" => horn_krom_incomparable(&mut r)?,
        "intersection-closure" => intersection_closure(&mut r),
        "hornbox-vs-horn" => hornbox_vs_horn(&mut r)?,
        "product-closure" => product_closure(&mut r),
        "horndia-vs-horn" => horndia_vs_horn(&mut r)?,
        "krombox-equiv" => krom_equiv(&mut r, Target::Box)?,
        "kromdia-equiv" => krom_equiv(&mut r, Target::Diamond)?,
        "box-diamond-incomparable" => box_diamond_incomparable(&mut r)?,
        "mixed-incomparable" => mixed_incomparable(&mut r)?,
        _ => return Err(Error::UnknownTheorem(id.to_string())),
    }
    let overall = r.0.iter().all(|s| s.pass);
    Ok(TheoremReport { id: id.to_string(), steps: r.0, overall })
}

pub fn replay_all() -> Result<Vec<TheoremReport>> {
    catalogue().iter().map(|(id, _)| replay_theorem(id)).collect()
}

#[derive(Default)]
struct Steps(Vec<ReplayStep>);

impl Steps {
    fn check(&mut self, description: impl Into<String>, pass: bool) -> bool {
        self.0.push(ReplayStep { description: description.into(), pass });
        pass
    }
}

fn f(src: &str) -> Formula {
    parse(src).expect("replay formulas are well formed")
}

fn a() -> Modality {
    Modality::new("a").expect("valid name")
}

fn letters(xs: &[&str]) -> BTreeSet<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn is_fragment(src: &str, frag: Fragment) -> bool {
    crate::recognize_clausal(&f(src)).map(|cf| frag.contains(&cf)).unwrap_or(false)
}

/// Every model over `alphabet` and the modality `a` with at most
/// `max_worlds` worlds, frames up to isomorphism.
fn small_models(alphabet: &BTreeSet<String>, max_worlds: usize) -> Vec<KripkeModel> {
    let mods = [a()];
    let names: Vec<&String> = alphabet.iter().collect();
    let mut out = Vec::new();
    for n in 1..=max_worlds {
        let frames = canonical_frames(n, 1).expect("tiny frame space");
        for &code in frames.iter() {
            let frame = DenseFrame::from_code(code, n, 1).to_kripke(&mods);
            let bits = n * names.len();
            for v in 0..1u64 << bits {
                let valuation = (0..n)
                    .map(|w| {
                        (0..names.len()).filter(|j| v >> (w * names.len() + j) & 1 == 1).map(|j| names[j].clone()).collect()
                    })
                    .collect();
                out.push(KripkeModel::with_valuation(frame.clone(), alphabet.clone(), valuation).expect("alphabet letters"));
            }
        }
    }
    out
}

fn pointed(models: &[KripkeModel]) -> impl Iterator<Item = (&KripkeModel, usize)> {
    models.iter().flat_map(|m| (0..m.world_count()).map(move |w| (m, w)))
}

/// A clause of `cf` false at `w`, with the world `w'` (reached through its
/// prefix) where its body fails.
fn failing_clause(m: &KripkeModel, w: usize, cf: &ClausalFormula) -> Option<(Clause, usize)> {
    for c in cf.clauses() {
        let mut frontier: BTreeSet<usize> = BTreeSet::from([w]);
        for alpha in c.prefix() {
            frontier = frontier.iter().flat_map(|&u| m.frame().successors(alpha, u).iter().copied()).collect();
        }
        let body = c.clone().with_prefix(Vec::new()).to_formula();
        if let Some(&w2) = frontier.iter().find(|&&v| !m.satisfies(v, &body)) {
            return Some((c.clone(), w2));
        }
    }
    None
}

/// Outcome of running a proof construction against a candidate set.
#[derive(Default)]
struct Tally {
    candidates: usize,
    by_construction: usize,
    direct: usize,
    failures: Vec<String>,
}

impl Tally {
    fn ok(&self) -> bool {
        self.failures.is_empty() && self.by_construction + self.direct == self.candidates
    }

    fn summary(&self, what: &str) -> String {
        let mut s = format!(
            "{what}: {} candidates, {} refuted by the construction, {} refuted by a model where the target fails and the candidate holds",
            self.candidates, self.by_construction, self.direct
        );
        if let Some(first) = self.failures.first() {
            s.push_str(&format!("; first failure: {first}"));
        }
        s
    }
}

/// For every candidate, finds a pointed model falsifying both `psi` and the
/// candidate (subject to `admissible`) and applies `construct`, which must
/// return a model on which `psi` holds at the same world and the candidate
/// still fails. Candidates with no such model are checked to be refuted by a
/// model where `psi` fails and the candidate holds.
fn run_construction(
    psi: &Formula,
    cands: &[ClausalFormula],
    models: &[KripkeModel],
    admissible: impl Fn(&KripkeModel, usize) -> bool,
    construct: impl Fn(&KripkeModel, usize, &Clause, usize) -> Option<KripkeModel>,
) -> Tally {
    let mut t = Tally { candidates: cands.len(), ..Tally::default() };
    for cf in cands {
        let phi = cf.to_formula();
        let start = pointed(models).find(|&(m, w)| admissible(m, w) && !m.satisfies(w, psi) && !m.satisfies(w, &phi));
        match start {
            Some((m, w)) => {
                let (clause, w2) = failing_clause(m, w, cf).expect("a false conjunction has a false clause");
                match construct(m, w, &clause, w2) {
                    Some(m2) if m2.satisfies(w, psi) && !m2.satisfies(w, &phi) => t.by_construction += 1,
                    _ => t.failures.push(format!("{cf}")),
                }
            }
            None => {
                if pointed(models).any(|(m, w)| !m.satisfies(w, psi) && m.satisfies(w, &phi)) {
                    t.direct += 1;
                } else {
                    t.failures.push(format!("{cf} (no separating model)"));
                }
            }
        }
    }
    t
}

fn horn_vs_bool(r: &mut Steps) -> Result<()> {
    let psi = f("p | q");
    let pq = letters(&["p", "q"]);
    r.check("p | q is a Krom clause and not a Horn clause", is_fragment("p | q", Fragment::KROM) && !is_fragment("p | q", Fragment::HORN));
    let empty = KripkeModel::new(KripkeFrame::numbered(1), pq.clone());
    r.check("p | q fails at a one-world model with empty valuation", !empty.satisfies(0, &psi));
    let all: BTreeSet<String> = empty.frame().worlds().iter().cloned().collect();
    let filled = override_valuation(&empty, "q", &all)?;
    r.check("making q true everywhere makes p | q hold everywhere", (0..filled.world_count()).all(|w| filled.satisfies(w, &psi)));
    let mono = monotonicity_trials(&TrialConfig::default().with_trials(500).with_seed(1));
    r.check(
        format!("enlarging a valuation preserves positive literals ({} trials, {} violations)", mono.trials, mono.violations),
        mono.passed(500),
    );

    let models = small_models(&pq, 2);
    let cands = candidates(Fragment::HORN, &pq, &BTreeSet::from([a()]), 5);
    let tally = run_construction(&psi, &cands, &models, |_, _| true, |m, _, clause, w2| {
        let consequent = clause.consequent_letters();
        let mut m2 = m.clone();
        let everywhere: BTreeSet<String> = m.frame().worlds().iter().cloned().collect();
        for letter in ["p", "q"] {
            if !consequent.contains(letter) {
                m2 = override_valuation(&m2, letter, &everywhere).ok()?;
            }
        }
        // The antecedent stays true and the consequent stays false at w'.
        let body_ok = clause.negatives().iter().all(|l| m2.satisfies_literal(w2, l))
            && clause.positives().iter().all(|l| !m2.satisfies_literal(w2, l));
        body_ok.then_some(m2)
    });
    r.check(tally.summary("case split on consequent letters over Horn candidates up to size 5, models up to 2 worlds"), tally.ok());
    let found = search_weak_translation(&psi, Fragment::HORN, &pq, 5, 2)?;
    r.check("no Horn formula up to size 5 agrees with p | q on models up to 2 worlds", found.is_none());
    Ok(())
}

fn krom_vs_bool(r: &mut Steps) -> Result<()> {
    let src = "p & q -> r";
    let psi = f(src);
    let pqr = letters(&["p", "q", "r"]);
    r.check("p & q -> r is a Horn clause of width 3, not Krom", is_fragment(src, Fragment::HORN) && !is_fragment(src, Fragment::KROM));
    let models = small_models(&pqr, 1);
    let cands = candidates(Fragment::KROM, &pqr, &BTreeSet::from([a()]), 4);
    let tally = run_construction(&psi, &cands, &models, |_, _| true, |m, _, clause, _| {
        let used = clause.letters();
        let everywhere: BTreeSet<String> = m.frame().worlds().iter().cloned().collect();
        let nowhere = BTreeSet::new();
        if used.is_subset(&letters(&["p", "q"])) {
            override_valuation(m, "r", &everywhere).ok()
        } else if used.is_subset(&letters(&["p", "r"])) {
            override_valuation(m, "q", &nowhere).ok()
        } else if used.is_subset(&letters(&["q", "r"])) {
            override_valuation(m, "p", &nowhere).ok()
        } else {
            None
        }
    });
    r.check(tally.summary("case split on clause letters over Krom candidates up to size 4, one-world models"), tally.ok());
    let found = search_weak_translation(&psi, Fragment::KROM, &pqr, 5, 2)?;
    r.check("no Krom formula up to size 5 agrees with p & q -> r on models up to 2 worlds", found.is_none());
    Ok(())
}

fn horn_krom_incomparable(r: &mut Steps) -> Result<()> {
    let (pq, pqr) = (letters(&["p", "q"]), letters(&["p", "q", "r"]));
    r.check("p | q is Krom and p & q -> r is Horn", is_fragment("p | q", Fragment::KROM) && is_fragment("p & q -> r", Fragment::HORN));
    r.check(
        "p | q has no Horn counterpart up to size 5 on models up to 2 worlds",
        search_weak_translation(&f("p | q"), Fragment::HORN, &pq, 5, 2)?.is_none(),
    );
    r.check(
        "p & q -> r has no Krom counterpart up to size 5 on models up to 2 worlds",
        search_weak_translation(&f("p & q -> r"), Fragment::KROM, &pqr, 5, 2)?.is_none(),
    );
    let core = candidates(Fragment::CORE, &pq, &BTreeSet::from([a()]), 4);
    r.check(
        format!("all {} core candidates up to size 4 are both Horn and Krom", core.len()),
        core.iter().all(|cf| Fragment::HORN.contains(cf) && Fragment::KROM.contains(cf)),
    );
    r.check(
        "p | q has no core counterpart, so core is strictly below Krom",
        search_weak_translation(&f("p | q"), Fragment::CORE, &pq, 5, 2)?.is_none(),
    );
    r.check(
        "p & q -> r has no core counterpart, so core is strictly below Horn",
        search_weak_translation(&f("p & q -> r"), Fragment::CORE, &pqr, 5, 2)?.is_none(),
    );
    Ok(())
}

fn fan(leaf: usize) -> KripkeModel {
    let mut frame = KripkeFrame::numbered(3);
    frame.add_edge(&a(), 0, 1);
    frame.add_edge(&a(), 0, 2);
    let mut m = KripkeModel::new(frame, letters(&["p"]));
    m.assign(leaf, "p", true).expect("p in alphabet");
    m
}

fn chain_and_point() -> (KripkeModel, KripkeModel) {
    let mut chain = KripkeFrame::numbered(2);
    chain.add_edge(&a(), 0, 1);
    let m1 = KripkeModel::new(chain, letters(&["p", "q"]));
    let mut m2 = KripkeModel::new(KripkeFrame::new(["v0"]).expect("one world"), letters(&["p", "q"]));
    m2.assign(0, "q", true).expect("q in alphabet");
    (m1, m2)
}

fn intersection_closure(r: &mut Steps) {
    let stats = intersection_closure_trials(&TrialConfig::default().with_trials(500).with_seed(2));
    r.check(
        format!("Horn-box formulas survive intersection ({} trials, {} violations)", stats.trials, stats.violations),
        stats.passed(500),
    );
    let (m1, m2) = (fan(1), fan(2));
    let both = intersect(&m1, &m2).expect("same frame");
    let phi = f("[a][a]F & (p -> [a]p)");
    r.check(
        "a Horn-box formula true at the fan root in both fan models stays true in their intersection",
        m1.satisfies(0, &phi) && m2.satisfies(0, &phi) && both.satisfies(0, &phi),
    );
}

fn hornbox_vs_horn(r: &mut Steps) -> Result<()> {
    let psi = f("<a>p");
    r.check("<a>p is core (hence Horn) and uses a diamond", is_fragment("<a>p", Fragment::CORE) && !is_fragment("<a>p", Fragment::HORN_BOX));
    let (m1, m2) = (fan(1), fan(2));
    r.check("M1, w0 satisfies <a>p (p at w1 only)", m1.satisfies(0, &psi));
    r.check("M2, w0 satisfies <a>p (p at w2 only)", m2.satisfies(0, &psi));
    let both = intersect(&m1, &m2)?;
    r.check("p holds nowhere in the intersection of the two fans", (0..3).all(|w| !both.holds(w, "p")));
    r.check("<a>p fails at w0 in the intersection", !both.satisfies(0, &psi));

    // Any Horn-box candidate over {p, x} satisfied by extensions of both fans
    // is satisfied by their intersection, an extension of a model where <a>p
    // fails; otherwise it already fails on one of the fans.
    let fresh = letters(&["x"]);
    let cands = candidates(Fragment::HORN_BOX, &letters(&["p", "x"]), &BTreeSet::from([a()]), 4);
    let (mut closed, mut direct, mut bad) = (0, 0, 0);
    for cf in &cands {
        let phi = cf.to_formula();
        let e1: Vec<KripkeModel> = enumerate_extensions(&m1, &fresh)?.filter(|e| e.satisfies(0, &phi)).collect();
        let e2: Vec<KripkeModel> = enumerate_extensions(&m2, &fresh)?.filter(|e| e.satisfies(0, &phi)).collect();
        if e1.is_empty() || e2.is_empty() {
            direct += 1;
            continue;
        }
        let ok = e1.iter().all(|x| e2.iter().all(|y| intersect(x, y).map(|i| i.satisfies(0, &phi) && !i.satisfies(0, &psi)).unwrap_or(false)));
        if ok {
            closed += 1;
        } else {
            bad += 1;
        }
    }
    r.check(
        format!(
            "{} Horn-box candidates over {{p, x}} up to size 4: {closed} hold on the intersection of every pair of satisfying extensions, {direct} fail on a fan outright",
            cands.len()
        ),
        bad == 0 && closed + direct == cands.len(),
    );
    let v = strong_translation_check(&psi, &f("[a]p"), 3)?;
    r.check("[a]p is not a strong translation of <a>p (bounded counterexample)", !v.is_equivalent());
    Ok(())
}

fn product_closure(r: &mut Steps) {
    let stats = product_closure_trials(&TrialConfig::default().with_trials(500).with_seed(3));
    r.check(
        format!("Horn-diamond formulas survive products ({} trials, {} violations)", stats.trials, stats.violations),
        stats.passed(500),
    );
    let (m1, m2) = chain_and_point();
    let prod = product(&m1, &m2).expect("same alphabet");
    let phi = f("<a><a>T -> q");
    let w = pair_index(0, 0, m2.world_count());
    r.check(
        "a Horn-diamond formula true at w0 and at v0 stays true at (w0,v0) in the product",
        m1.satisfies(0, &phi) && m2.satisfies(0, &phi) && prod.satisfies(w, &phi),
    );
}

fn horndia_vs_horn(r: &mut Steps) -> Result<()> {
    let src = "[a]p -> q";
    let psi = f(src);
    r.check(
        "[a]p -> q is core (hence Horn) and uses a box",
        is_fragment(src, Fragment::CORE) && !is_fragment(src, Fragment::HORN_DIAMOND),
    );
    let (m1, m2) = chain_and_point();
    r.check("the chain model satisfies [a]p -> q at w0 (its successor lacks p)", m1.satisfies(0, &psi));
    r.check("the one-world model satisfies [a]p -> q at v0 (q holds there)", m2.satisfies(0, &psi));
    let prod = product(&m1, &m2)?;
    let w = pair_index(0, 0, m2.world_count());
    r.check("(w0,v0) has no a-successor in the product", prod.frame().successors(&a(), w).is_empty());
    r.check("q is false at (w0,v0)", !prod.holds(w, "q"));
    r.check("[a]p holds and [a]p -> q fails at (w0,v0)", prod.satisfies(w, &f("[a]p")) && !prod.satisfies(w, &psi));

    let fresh = letters(&["x"]);
    let cands = candidates(Fragment::HORN_DIAMOND, &letters(&["p", "q", "x"]), &BTreeSet::from([a()]), 4);
    let (mut closed, mut direct, mut bad) = (0, 0, 0);
    for cf in &cands {
        let phi = cf.to_formula();
        let e1: Vec<KripkeModel> = enumerate_extensions(&m1, &fresh)?.filter(|e| e.satisfies(0, &phi)).collect();
        let e2: Vec<KripkeModel> = enumerate_extensions(&m2, &fresh)?.filter(|e| e.satisfies(0, &phi)).collect();
        if e1.is_empty() || e2.is_empty() {
            direct += 1;
            continue;
        }
        let ok = e1
            .iter()
            .all(|x| e2.iter().all(|y| product(x, y).map(|p| p.satisfies(w, &phi) && !p.satisfies(w, &psi)).unwrap_or(false)));
        if ok {
            closed += 1;
        } else {
            bad += 1;
        }
    }
    r.check(
        format!(
            "{} Horn-diamond candidates over {{p, q, x}} up to size 4: {closed} hold on the product of every pair of satisfying extensions, {direct} fail on a factor outright",
            cands.len()
        ),
        bad == 0 && closed + direct == cands.len(),
    );
    Ok(())
}

fn krom_equiv(r: &mut Steps, target: Target) -> Result<()> {
    let (frag, name) = match target {
        Target::Box => (Fragment::KROM_BOX, "Krom-box"),
        Target::Diamond => (Fragment::KROM_DIAMOND, "Krom-diamond"),
    };
    // Every 16th corpus formula keeps the replay quick; the full corpus is
    // covered by the acceptance suite.
    let corpus: Vec<ClausalFormula> = krom_corpus().into_iter().step_by(16).collect();
    let mut in_fragment = true;
    let (mut agree, mut strong) = (0, 0);
    for cf in &corpus {
        let t = translate(cf, target)?;
        in_fragment &= frag.contains(&t.formula);
        let (src, dst) = (cf.to_formula(), t.formula.to_formula());
        let s1 = sat_bruteforce(&src, tree_model_bound(&src))?.status;
        let s2 = sat_bruteforce(&dst, tree_model_bound(&dst))?.status;
        agree += usize::from(s1 == s2 && s1 != SatStatus::UnknownAtBound);
        strong += usize::from(strong_translation_check(&src, &dst, 2)?.is_equivalent());
    }
    r.check(format!("all {} sampled corpus translations are {name}", corpus.len()), in_fragment);
    r.check(format!("{agree}/{} translations are equi-satisfiable with their source", corpus.len()), agree == corpus.len());
    r.check(
        format!("{strong}/{} translations are strong translations on models up to 2 worlds", corpus.len()),
        strong == corpus.len(),
    );

    match target {
        Target::Box => {
            let psi = f("<a>p");
            let p = letters(&["p"]);
            let models = small_models(&p, 2);
            r.check(
                "box literals up to depth 2 keep their truth at old worlds after adding a p-successor",
                literal_stability(&models, &p, true),
            );
            let cands = candidates(Fragment::KROM_BOX, &p, &BTreeSet::from([a()]), 5);
            let tally = run_construction(&psi, &cands, &models, |_, _| true, |m, w, _, _| {
                add_successor_world(m, m.frame().name(w), &a(), &p).ok().map(|(m2, _)| m2)
            });
            r.check(tally.summary("adding an a-successor satisfying p, over Krom-box candidates up to size 5"), tally.ok());
            r.check(
                "no Krom-box formula up to size 5 agrees with <a>p on models up to 2 worlds",
                search_weak_translation(&psi, Fragment::KROM_BOX, &p, 5, 2)?.is_none(),
            );
        }
        Target::Diamond => {
            let psi = f("[a]p -> q");
            let pq = letters(&["p", "q"]);
            let models = small_models(&pq, 2);
            r.check(
                "diamond literals up to depth 2 keep their truth at old worlds with a successor after adding an empty successor",
                literal_stability(&models, &pq, false),
            );
            let cands = candidates(Fragment::KROM_DIAMOND, &pq, &BTreeSet::from([a()]), 4);
            let has_successor = |m: &KripkeModel, w: usize| !m.frame().successors(&a(), w).is_empty();
            let tally = run_construction(&psi, &cands, &models, has_successor, |m, w, _, _| {
                add_successor_world(m, m.frame().name(w), &a(), &BTreeSet::new()).ok().map(|(m2, _)| m2)
            });
            r.check(tally.summary("adding an empty a-successor, over Krom-diamond candidates up to size 4"), tally.ok());
            r.check(
                "no Krom-diamond formula up to size 4 agrees with [a]p -> q on models up to 2 worlds",
                search_weak_translation(&psi, Fragment::KROM_DIAMOND, &pq, 4, 2)?.is_none(),
            );
        }
    }
    Ok(())
}

/// Box literals (`boxes`) or diamond literals (otherwise) over `alphabet` up
/// to depth 2 keep their truth at every old world after a successor is added
/// below any world: with the full alphabet for boxes, empty for diamonds
/// (only below worlds that already have a successor).
fn literal_stability(models: &[KripkeModel], alphabet: &BTreeSet<String>, boxes: bool) -> bool {
    let names: Vec<&str> = alphabet.iter().map(String::as_str).collect();
    let lits: Vec<PositiveLiteral> = literals_up_to_depth(&names, &a(), 2)
        .into_iter()
        .chain([PositiveLiteral::Top, PositiveLiteral::boxed(a(), PositiveLiteral::Top), PositiveLiteral::diamond(a(), PositiveLiteral::Top)])
        .filter(|l| if boxes { !l.contains_diamond() } else { !l.contains_box() })
        .collect();
    pointed(models).all(|(m, w)| {
        if !boxes && m.frame().successors(&a(), w).is_empty() {
            return true;
        }
        let val = if boxes { alphabet.clone() } else { BTreeSet::new() };
        let (m2, _) = add_successor_world(m, m.frame().name(w), &a(), &val).expect("valid surgery");
        (0..m.world_count()).all(|t| lits.iter().all(|l| m.satisfies_literal(t, l) == m2.satisfies_literal(t, l)))
    })
}

fn box_diamond_incomparable(r: &mut Steps) -> Result<()> {
    r.check(
        "<a>p lies in Horn-diamond, core-diamond and Krom-diamond",
        ["<a>p"].iter().all(|s| {
            is_fragment(s, Fragment::HORN_DIAMOND) && is_fragment(s, Fragment::CORE_DIAMOND) && is_fragment(s, Fragment::KROM_DIAMOND)
        }),
    );
    r.check(
        "[a]p -> q lies in Horn-box, core-box and Krom-box",
        is_fragment("[a]p -> q", Fragment::HORN_BOX) && is_fragment("[a]p -> q", Fragment::CORE_BOX) && is_fragment("[a]p -> q", Fragment::KROM_BOX),
    );
    let (m1, m2) = (fan(1), fan(2));
    let both = intersect(&m1, &m2)?;
    r.check(
        "intersection of the fans kills <a>p, so it has no Horn-box or core-box translation",
        m1.satisfies(0, &f("<a>p")) && m2.satisfies(0, &f("<a>p")) && !both.satisfies(0, &f("<a>p")),
    );
    let (c1, c2) = chain_and_point();
    let prod = product(&c1, &c2)?;
    r.check(
        "product of chain and point kills [a]p -> q, so it has no Horn-diamond or core-diamond translation",
        c1.satisfies(0, &f("[a]p -> q")) && c2.satisfies(0, &f("[a]p -> q")) && !prod.satisfies(0, &f("[a]p -> q")),
    );
    r.check(
        "<a>p has no Krom-box counterpart up to size 5 on models up to 2 worlds",
        search_weak_translation(&f("<a>p"), Fragment::KROM_BOX, &letters(&["p"]), 5, 2)?.is_none(),
    );
    r.check(
        "[a]p -> q has no Krom-diamond counterpart up to size 4 on models up to 2 worlds",
        search_weak_translation(&f("[a]p -> q"), Fragment::KROM_DIAMOND, &letters(&["p", "q"]), 4, 2)?.is_none(),
    );
    Ok(())
}

fn mixed_incomparable(r: &mut Steps) -> Result<()> {
    let (pq, pqr) = (letters(&["p", "q"]), letters(&["p", "q", "r"]));
    r.check(
        "p | q lies in Krom, Krom-box and Krom-diamond",
        [Fragment::KROM, Fragment::KROM_BOX, Fragment::KROM_DIAMOND].iter().all(|fr| is_fragment("p | q", *fr)),
    );
    r.check(
        "p & q -> r lies in Horn, Horn-box and Horn-diamond",
        [Fragment::HORN, Fragment::HORN_BOX, Fragment::HORN_DIAMOND].iter().all(|fr| is_fragment("p & q -> r", *fr)),
    );
    r.check(
        "p | q has no Horn counterpart (hence none in Horn-box or Horn-diamond) up to size 5",
        search_weak_translation(&f("p | q"), Fragment::HORN, &pq, 5, 2)?.is_none(),
    );
    r.check(
        "p & q -> r has no Krom counterpart (hence none in Krom-box or Krom-diamond) up to size 5",
        search_weak_translation(&f("p & q -> r"), Fragment::KROM, &pqr, 5, 2)?.is_none(),
    );
    r.check(
        "p & q -> r has no core-box or core-diamond counterpart up to size 5",
        search_weak_translation(&f("p & q -> r"), Fragment::CORE_BOX, &pqr, 5, 2)?.is_none()
            && search_weak_translation(&f("p & q -> r"), Fragment::CORE_DIAMOND, &pqr, 5, 2)?.is_none(),
    );
    r.check(
        "<a>p and [a]p -> q are Krom formulas",
        is_fragment("<a>p", Fragment::KROM) && is_fragment("[a]p -> q", Fragment::KROM),
    );
    let (m1, m2) = (fan(1), fan(2));
    r.check("the fan intersection separates <a>p from core-box", !intersect(&m1, &m2)?.satisfies(0, &f("<a>p")));
    let (c1, c2) = chain_and_point();
    r.check("the chain-point product separates [a]p -> q from core-diamond", !product(&c1, &c2)?.satisfies(0, &f("[a]p -> q")));
    let mut strong = true;
    for (src, target) in [("<a>p", Target::Box), ("[a]p -> q", Target::Diamond)] {
        let cf = crate::recognize_clausal(&f(src))?;
        let t = translate(&cf, target)?;
        strong &= strong_translation_check(&f(src), &t.formula.to_formula(), 3)?.is_equivalent();
    }
    r.check("<a>p has a strong Krom-box translation and [a]p -> q a strong Krom-diamond translation up to 3 worlds", strong);
    let d = classify(&crate::recognize_clausal(&f("<a>p"))?);
    r.check("<a>p is core-diamond but not core-box", d.core && d.diamond_only && !d.box_only);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_clause_follows_prefix() {
        let mut frame = KripkeFrame::numbered(2);
        frame.add_edge(&a(), 0, 1);
        let m = KripkeModel::new(frame, letters(&["p"]));
        let cf = crate::recognize_clausal(&f("~p & [a](p -> F)")).unwrap();
        assert_eq!(failing_clause(&m, 0, &cf), None);
        let cf = crate::recognize_clausal(&f("[a]p")).unwrap();
        assert_eq!(failing_clause(&m, 0, &cf).map(|(_, w)| w), Some(0));
        let cf = crate::recognize_clausal(&f("[a](F | p)")).unwrap();
        assert_eq!(failing_clause(&m, 0, &cf).map(|(_, w)| w), Some(1));
    }

    #[test]
    fn small_model_counts() {
        assert_eq!(small_models(&letters(&["p"]), 2).len(), 2 * 2 + 10 * 4);
    }

    #[test]
    fn unknown_id() {
        assert!(matches!(replay_theorem("nope"), Err(Error::UnknownTheorem(_))));
    }

    #[test]
    fn catalogue_replays_pass() {
        for (id, _) in catalogue() {
            let rep = replay_theorem(id).unwrap();
            for s in &rep.steps {
                assert!(s.pass, "{id}: {}", s.description);
            }
            assert!(rep.overall);
        }
    }

    #[test]
    fn json_lines_shape() {
        let rep = replay_theorem("hornbox-vs-horn").unwrap();
        let first: serde_json::Value = serde_json::from_str(&rep.json_lines()[0]).unwrap();
        assert_eq!(first["theorem"], "hornbox-vs-horn");
        assert_eq!(first["step"], 1);
        assert_eq!(first["pass"], true);
    }
}
