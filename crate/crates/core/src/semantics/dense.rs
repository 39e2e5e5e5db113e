// Bit-sliced evaluation over many valuations at once.
//
// A formula is compiled to a hash-consed post-order program. Each node's value
// at a world is a u64 whose lane `i` is the truth value under the `i`-th of 64
// consecutive valuations. Valuation bits below 6 vary inside a word (the
// `LANES` patterns); higher bits are constant across a batch of 64.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::{KripkeFrame, KripkeModel, PointedModel};
use crate::syntax::{Formula, Modality};
use crate::{par, LimitExceeded, Limits};

pub(crate) const LANES: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

const NO_MODALITY: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Op {
    Top,
    Letter(u32),
    Absent,
    Not(u32),
    Or(u32, u32),
    And(u32, u32),
    Dia(u32, u32),
    Box(u32, u32),
}

/// Shared evaluation program for one or more formulas over a fixed letter
/// and modality numbering.
#[derive(Clone, Debug)]
pub(crate) struct Program {
    ops: Vec<Op>,
    memo: HashMap<Op, u32>,
    letters: Vec<String>,
    modalities: Vec<Modality>,
}

impl Program {
    pub fn new(letters: Vec<String>, modalities: Vec<Modality>) -> Self {
        Program { ops: Vec::new(), memo: HashMap::new(), letters, modalities }
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn modalities(&self) -> &[Modality] {
        &self.modalities
    }


    fn push(&mut self, op: Op) -> u32 {
        if let Some(&id) = self.memo.get(&op) {
            return id;
        }
        let id = self.ops.len() as u32;
        self.ops.push(op);
        self.memo.insert(op, id);
        id
    }

    /// Compiles `f` and returns its root node.
    pub fn add(&mut self, f: &Formula) -> u32 {
        let op = match f {
            Formula::Top => Op::Top,
            Formula::Prop(p) => match self.letters.iter().position(|l| l == p) {
                Some(i) => Op::Letter(i as u32),
                None => Op::Absent,
            },
            Formula::Not(a) => Op::Not(self.add(a)),
            Formula::Or(a, b) => Op::Or(self.add(a), self.add(b)),
            Formula::And(a, b) => Op::And(self.add(a), self.add(b)),
            Formula::Diamond(m, a) => Op::Dia(self.modality(m), self.add(a)),
            Formula::Box(m, a) => Op::Box(self.modality(m), self.add(a)),
        };
        self.push(op)
    }

    fn modality(&self, m: &Modality) -> u32 {
        self.modalities.iter().position(|x| x == m).map_or(NO_MODALITY, |i| i as u32)
    }

    /// Fills `out[node * n + w]`. `letters[w * L + j]` holds the lanes of
    /// letter `j` at world `w`.
    pub fn eval(&self, frame: &DenseFrame, letters: &[u64], out: &mut Vec<u64>) {
        let n = frame.n;
        let l = self.letters.len();
        out.clear();
        out.resize(self.ops.len() * n, 0);
        for (i, op) in self.ops.iter().enumerate() {
            for w in 0..n {
                let v = match *op {
                    Op::Top => !0,
                    Op::Letter(j) => letters[w * l + j as usize],
                    Op::Absent => 0,
                    Op::Not(a) => !out[a as usize * n + w],
                    Op::Or(a, b) => out[a as usize * n + w] | out[b as usize * n + w],
                    Op::And(a, b) => out[a as usize * n + w] & out[b as usize * n + w],
                    Op::Dia(m, a) => {
                        let mut acc = 0;
                        if m != NO_MODALITY {
                            let mut s = frame.succ[m as usize * n + w];
                            while s != 0 {
                                acc |= out[a as usize * n + s.trailing_zeros() as usize];
                                s &= s - 1;
                            }
                        }
                        acc
                    }
                    Op::Box(m, a) => {
                        let mut acc = !0;
                        if m != NO_MODALITY {
                            let mut s = frame.succ[m as usize * n + w];
                            while s != 0 {
                                acc &= out[a as usize * n + s.trailing_zeros() as usize];
                                s &= s - 1;
                            }
                        }
                        acc
                    }
                };
                out[i * n + w] = v;
            }
        }
    }
}

/// Successor bitmasks, `succ[m * n + w]`, for at most 64 worlds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct DenseFrame {
    pub n: usize,
    pub succ: Vec<u64>,
}

impl DenseFrame {
    pub fn empty(n: usize, modalities: usize) -> Self {
        assert!(n <= 64);
        DenseFrame { n, succ: vec![0; n * modalities] }
    }

    /// Bit `(m * n + u) * n + v` of `code` is the edge `u R_m v`.
    pub fn from_code(code: u64, n: usize, modalities: usize) -> Self {
        let mut f = DenseFrame::empty(n, modalities);
        let mut c = code;
        while c != 0 {
            let bit = c.trailing_zeros() as usize;
            let (mu, v) = (bit / n, bit % n);
            f.succ[mu] |= 1 << v;
            c &= c - 1;
        }
        f
    }

    pub fn to_kripke(&self, modalities: &[Modality]) -> KripkeFrame {
        let mut frame = KripkeFrame::numbered(self.n);
        for (mi, m) in modalities.iter().enumerate() {
            for u in 0..self.n {
                let mut s = self.succ[mi * self.n + u];
                while s != 0 {
                    frame.add_edge(m, u, s.trailing_zeros() as usize);
                    s &= s - 1;
                }
            }
        }
        frame
    }
}

/// Lanes of valuation bit `pos` in the batch starting at `base`.
#[inline]
pub(crate) fn lane(pos: usize, base: u64) -> u64 {
    if pos < 6 {
        LANES[pos]
    } else if base >> pos & 1 == 1 {
        !0
    } else {
        0
    }
}

/// Lanes that carry a real valuation when only `bits` bits vary.
#[inline]
pub(crate) fn valid_mask(bits: usize) -> u64 {
    if bits >= 6 {
        !0
    } else {
        (1u64 << (1u32 << bits)) - 1
    }
}

#[inline]
pub(crate) fn batch_count(bits: usize) -> u64 {
    if bits <= 6 {
        1
    } else {
        1u64 << (bits - 6)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn permute_code(code: u64, n: usize, perm: &[usize]) -> u64 {
    let mut out = 0;
    let mut c = code;
    while c != 0 {
        let bit = c.trailing_zeros() as usize;
        let (m, rest) = (bit / (n * n), bit % (n * n));
        let (u, v) = (rest / n, rest % n);
        out |= 1 << ((m * n + perm[u]) * n + perm[v]);
        c &= c - 1;
    }
    out
}

/// Largest frame code space we are willing to walk.
const MAX_FRAME_BITS: usize = 36;

/// Frame codes over `n` worlds and `modalities` relations, one per
/// isomorphism class (the numerically least code), ascending.
pub(crate) fn canonical_frames(n: usize, modalities: usize) -> Result<Arc<Vec<u64>>, LimitExceeded> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<Vec<u64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("frame cache poisoned").get(&(n, modalities)) {
        return Ok(hit.clone());
    }
    let bits = n * n * modalities;
    if bits > MAX_FRAME_BITS {
        return Err(LimitExceeded { what: "frame enumeration bits", limit: MAX_FRAME_BITS as u64 });
    }
    let perms: Vec<Vec<usize>> = permutations(n).into_iter().skip(1).collect();
    let codes: Vec<u64> = (0..1u64 << bits)
        .filter(|&c| perms.iter().all(|p| permute_code(c, n, p) >= c))
        .collect();
    let codes = Arc::new(codes);
    cache.lock().expect("frame cache poisoned").insert((n, modalities), codes.clone());
    Ok(codes)
}

/// How a pointed model separates the two formulas of a scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum HitKind {
    /// `f` holds but no assignment of the fresh letters makes `g` hold.
    Forward,
    /// `g` holds under some assignment but `f` does not.
    Backward,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Hit {
    pub n: usize,
    pub frame: u64,
    /// Full valuation index: fresh bits low, base bits above them.
    pub index: u64,
    pub world: usize,
    pub kind: HitKind,
}

/// Search space of a pointwise scan: all frames up to `max_worlds` worlds
/// (up to isomorphism), all valuations of the first `base` program letters,
/// and, existentially, of the remaining `fresh` letters.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Space {
    pub max_worlds: usize,
    pub base: usize,
    pub fresh: usize,
}

/// First pointed model, in (worlds, frame code, valuation) order, at which
/// `f` and "some fresh assignment satisfies `g`" disagree. With no fresh
/// letters this is plain pointwise disagreement.
pub(crate) fn scan(
    program: &Program,
    f: u32,
    g: u32,
    space: Space,
    limits: &Limits,
) -> Result<Option<Hit>, LimitExceeded> {
    debug_assert_eq!(program.letters().len(), space.base + space.fresh);
    let mcount = program.modalities().len();
    let mut budget = 0u64;
    for n in 1..=space.max_worlds {
        let frames = canonical_frames(n, mcount)?;
        let bits = n * (space.base + space.fresh);
        if bits >= 63 {
            return Err(LimitExceeded { what: "valuation bits", limit: 62 });
        }
        budget = budget.saturating_add((frames.len() as u64).saturating_mul(1u64 << bits));
        if budget > limits.max_models {
            return Err(LimitExceeded { what: "enumerated models", limit: limits.max_models });
        }
        let hit = par::find_map_first(&frames, limits.parallel, |&code| {
            let frame = DenseFrame::from_code(code, n, mcount);
            scan_frame(program, f, g, &frame, space).map(|(index, world, kind)| Hit {
                n,
                frame: code,
                index,
                world,
                kind,
            })
        });
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

fn scan_frame(
    program: &Program,
    f: u32,
    g: u32,
    frame: &DenseFrame,
    space: Space,
) -> Option<(u64, usize, HitKind)> {
    let n = frame.n;
    let (l, k) = (space.base, space.fresh);
    let width = l + k;
    let fresh_bits = n * k;
    let bits = n * width;
    let valid = valid_mask(bits);
    let (f, g) = (f as usize, g as usize);
    let mut letters = vec![0u64; n * width];
    let mut out = Vec::new();
    let group_batches = if fresh_bits >= 6 { 1u64 << (fresh_bits - 6) } else { 1 };
    let mut any = vec![false; n];
    for b in 0..batch_count(bits) {
        let base = b << 6;
        for w in 0..n {
            for i in 0..l {
                letters[w * width + i] = lane(fresh_bits + w * l + i, base);
            }
            for j in 0..k {
                letters[w * width + l + j] = lane(w * k + j, base);
            }
        }
        program.eval(frame, &letters, &mut out);
        for w in 0..n {
            let (fv, gv) = (out[f * n + w], out[g * n + w]);
            let back = gv & !fv & valid;
            if back != 0 {
                return Some((base + back.trailing_zeros() as u64, w, HitKind::Backward));
            }
        }
        if fresh_bits >= 6 {
            for (w, seen) in any.iter_mut().enumerate() {
                *seen |= out[g * n + w] != 0;
            }
            if (b + 1) % group_batches == 0 {
                let start = (b + 1 - group_batches) << 6;
                for (w, seen) in any.iter_mut().enumerate() {
                    if out[f * n + w] & 1 == 1 && !*seen {
                        return Some((start, w, HitKind::Forward));
                    }
                    *seen = false;
                }
            }
        } else {
            let size = 1usize << fresh_bits;
            let gmask = (1u64 << size) - 1;
            let lanes = if bits >= 6 { 64 } else { 1usize << bits };
            for gi in (0..lanes).step_by(size) {
                for w in 0..n {
                    let (fv, gv) = (out[f * n + w], out[g * n + w]);
                    if fv >> gi & 1 == 1 && gv >> gi & gmask == 0 {
                        return Some((base + gi as u64, w, HitKind::Forward));
                    }
                }
            }
        }
    }
    None
}

/// Truth of each root over every pointed model with at most `max_worlds`
/// worlds and all letters of `program` free, one word of 64 valuations per
/// (worlds, frame, batch, world) in scan order. Unused lanes are zero.
pub(crate) fn truth_words(
    program: &Program,
    roots: &[u32],
    max_worlds: usize,
    limits: &Limits,
) -> Result<Vec<Vec<u64>>, LimitExceeded> {
    let mcount = program.modalities().len();
    let l = program.letters().len();
    let mut words: Vec<Vec<u64>> = vec![Vec::new(); roots.len()];
    let mut budget = 0u64;
    for n in 1..=max_worlds {
        let frames = canonical_frames(n, mcount)?;
        let bits = n * l;
        if bits >= 63 {
            return Err(LimitExceeded { what: "valuation bits", limit: 62 });
        }
        budget = budget.saturating_add((frames.len() as u64).saturating_mul(1u64 << bits));
        if budget > limits.max_models {
            return Err(LimitExceeded { what: "enumerated models", limit: limits.max_models });
        }
        let per_frame = par::map_collect(&frames, limits.parallel, |&code| {
            let frame = DenseFrame::from_code(code, n, mcount);
            let valid = valid_mask(bits);
            let mut letters = vec![0u64; n * l];
            let mut out = Vec::new();
            let mut local: Vec<Vec<u64>> = vec![Vec::new(); roots.len()];
            for b in 0..batch_count(bits) {
                let base = b << 6;
                for (pos, slot) in letters.iter_mut().enumerate() {
                    *slot = lane(pos, base);
                }
                program.eval(&frame, &letters, &mut out);
                for (r, &root) in roots.iter().enumerate() {
                    for w in 0..n {
                        local[r].push(out[root as usize * n + w] & valid);
                    }
                }
            }
            local
        });
        for local in per_frame {
            for (acc, part) in words.iter_mut().zip(local) {
                acc.extend(part);
            }
        }
    }
    Ok(words)
}

/// Letters of `program` true at each world under valuation `index`, using
/// the scan bit layout. Fresh letters are included when `with_fresh`.
pub(crate) fn decode_valuation(
    program: &Program,
    n: usize,
    space: Space,
    index: u64,
    with_fresh: bool,
) -> Vec<BTreeSet<String>> {
    let (l, k) = (space.base, space.fresh);
    let letters = program.letters();
    (0..n)
        .map(|w| {
            let mut cell = BTreeSet::new();
            for i in 0..l {
                if index >> (n * k + w * l + i) & 1 == 1 {
                    cell.insert(letters[i].clone());
                }
            }
            if with_fresh {
                for j in 0..k {
                    if index >> (w * k + j) & 1 == 1 {
                        cell.insert(letters[l + j].clone());
                    }
                }
            }
            cell
        })
        .collect()
}

/// Pointed model described by a scan hit.
pub(crate) fn hit_model(program: &Program, space: Space, hit: &Hit, with_fresh: bool) -> PointedModel {
    let frame = DenseFrame::from_code(hit.frame, hit.n, program.modalities().len())
        .to_kripke(program.modalities());
    let valuation = decode_valuation(program, hit.n, space, hit.index, with_fresh);
    let alphabet: BTreeSet<String> = if with_fresh {
        program.letters().iter().cloned().collect()
    } else {
        program.letters()[..space.base].iter().cloned().collect()
    };
    let model = KripkeModel::with_valuation(frame, alphabet, valuation)
        .expect("decoded valuations stay inside the alphabet");
    PointedModel::at(model, hit.world)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn a() -> Modality {
        Modality::new("a").unwrap()
    }

    #[test]
    fn canonical_frame_counts() {
        // Directed graphs with loops allowed, up to isomorphism: 2, 10, 104.
        assert_eq!(canonical_frames(1, 1).unwrap().len(), 2);
        assert_eq!(canonical_frames(2, 1).unwrap().len(), 10);
        assert_eq!(canonical_frames(3, 1).unwrap().len(), 104);
    }

    #[test]
    fn dense_eval_matches_reference() {
        let letters = vec!["p".to_string(), "q".to_string()];
        let formulas = ["<a>p", "[a](p | ~q)", "<a>[a]q & ~p", "[b]F", "~<a>T | q"];
        for text in formulas {
            let f = parse(text).unwrap();
            let mut prog = Program::new(letters.clone(), vec![a()]);
            let root = prog.add(&f) as usize;
            for code in 0..(1u64 << 4) {
                let frame = DenseFrame::from_code(code, 2, 1);
                let kframe = frame.to_kripke(&[a()]);
                // 2 worlds x 2 letters = 4 bits, all in one batch.
                let mut lanes = vec![0u64; 4];
                for w in 0..2 {
                    for j in 0..2 {
                        lanes[w * 2 + j] = lane(w * 2 + j, 0);
                    }
                }
                let mut out = Vec::new();
                prog.eval(&frame, &lanes, &mut out);
                for v in 0..16u64 {
                    let cells = (0..2)
                        .map(|w| {
                            (0..2)
                                .filter(|j| v >> (w * 2 + j) & 1 == 1)
                                .map(|j| letters[j].clone())
                                .collect()
                        })
                        .collect();
                    let m = KripkeModel::with_valuation(
                        kframe.clone(),
                        letters.iter().cloned().collect(),
                        cells,
                    )
                    .unwrap();
                    for w in 0..2 {
                        assert_eq!(
                            out[root * 2 + w] >> v & 1 == 1,
                            m.satisfies(w, &f),
                            "{text} frame {code} valuation {v} world {w}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn weak_scan_finds_smallest_disagreement() {
        let mut prog = Program::new(vec!["p".into(), "q".into()], vec![a()]);
        let f = prog.add(&parse("p | q").unwrap());
        let g = prog.add(&parse("p").unwrap());
        let space = Space { max_worlds: 3, base: 2, fresh: 0 };
        let hit = scan(&prog, f, g, space, &Limits::default()).unwrap().unwrap();
        assert_eq!(hit.n, 1);
        let pm = hit_model(&prog, space, &hit, false);
        assert!(pm.satisfies(&parse("q & ~p").unwrap()));
    }

    #[test]
    fn strong_scan_with_fresh_letters() {
        // <a>p versus ~[a]f & [a](f | p): equivalent up to extension.
        let mut prog = Program::new(vec!["p".into(), "_f0".into()], vec![a()]);
        let f = prog.add(&parse("<a>p").unwrap());
        let g = prog.add(
            &crate::syntax::parse_with(
                "~[a]_f0 & [a](_f0 | p)",
                crate::syntax::ParseOptions { allow_reserved: true },
            )
            .unwrap(),
        );
        let space = Space { max_worlds: 3, base: 1, fresh: 1 };
        assert_eq!(scan(&prog, f, g, space, &Limits::default()).unwrap(), None);
        // [a]p is not: the chain separates them.
        let h = prog.add(&parse("[a]p").unwrap());
        let hit = scan(&prog, f, h, space, &Limits::default()).unwrap().unwrap();
        assert_eq!(hit.kind, HitKind::Backward);
    }
}
