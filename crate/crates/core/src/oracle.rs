//! Exhaustive computation of reduced parameters on small trigraphs.
//!
//! The search runs over partitions of the base vertex set. Every reduction
//! sequence visits a chain of coarsenings and the trigraph at each step only
//! depends on the current partition, so
//! `W(P) = min over part pairs of max(f(red graph of P'), W(P'))`
//! with `W` of the one-part partition equal to zero.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use thiserror::Error;

use crate::graph::Graph;
use crate::params::{ParamError, RedParam};
use crate::sequence::{sequence_from_pairs, ReductionSequence, SequenceError};
use crate::trigraph::{Colour, Trigraph};

/// Hard ceiling on `max_n`: partitions are packed four bits per element into a `u64`.
pub const ORACLE_HARD_MAX_N: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("trigraph has {n} vertices, above the oracle limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("parameter evaluation failed: {0}")]
    Param(#[from] ParamError),
    #[error("sequence replay failed: {0}")]
    Sequence(#[from] SequenceError),
}

pub struct OracleConfig<'f> {
    pub f: &'f dyn RedParam,
    pub max_n: usize,
    /// Largest number of memoised partitions before the search gives up.
    pub memo_budget: usize,
}

impl<'f> OracleConfig<'f> {
    pub fn new(f: &'f dyn RedParam) -> Self {
        OracleConfig {
            f,
            max_n: 12,
            memo_budget: 1 << 22,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub value: usize,
    pub sequence: ReductionSequence,
    pub states_explored: usize,
    /// False for greedy bounds and for exact searches that ran out of budget.
    pub exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Merge the pair minimising `f` of the next red graph; ties go to the
    /// lexicographically smallest pair of ids.
    MinRedParam,
    /// Merge the smallest-id leaf of the underlying graph into its neighbour;
    /// without leaves, merge the two smallest ids.
    LeafMerge,
}

fn eval_red(f: &dyn RedParam, t: &Trigraph) -> Result<usize, OracleError> {
    Ok(f.eval(&t.red_graph().0)?)
}

/// Greedy upper bound on reduced-`f`: the best sequence among `strategies`.
pub fn reduced_f_upper_greedy(
    g: &Trigraph,
    f: &dyn RedParam,
    strategies: &[Strategy],
) -> Result<OracleResult, OracleError> {
    let mut best: Option<OracleResult> = None;
    for &s in strategies {
        let r = greedy_run(g, f, s)?;
        if best.as_ref().is_none_or(|b| r.value < b.value) {
            best = Some(r);
        }
    }
    best.map_or_else(|| greedy_run(g, f, Strategy::MinRedParam), Ok)
}

fn greedy_run(g: &Trigraph, f: &dyn RedParam, strategy: Strategy) -> Result<OracleResult, OracleError> {
    let mut t = g.clone();
    let mut pairs = Vec::new();
    let mut value = eval_red(f, &t)?;
    let mut explored = 0;
    while t.n() > 1 {
        let live: Vec<usize> = t.vertices().collect();
        let (u, v) = match strategy {
            Strategy::MinRedParam => {
                let mut best: Option<(usize, usize, usize)> = None;
                for (i, &u) in live.iter().enumerate() {
                    for &v in &live[i + 1..] {
                        let (c, _) = t.contract(u, v).map_err(SequenceError::from_merge(pairs.len()))?;
                        let x = eval_red(f, &c)?;
                        explored += 1;
                        if best.is_none_or(|b| x < b.0) {
                            best = Some((x, u, v));
                        }
                    }
                }
                let (_, u, v) = best.unwrap_or((0, live[0], live[1]));
                (u, v)
            }
            Strategy::LeafMerge => {
                let (ug, ids) = t.underlying_graph();
                let leaf = ug.leaves().next();
                match leaf {
                    Some(i) => (ids[i], ids[ug.neighbours(i).first().unwrap_or(0)]),
                    None => (live[0], live[1]),
                }
            }
        };
        t.contract_in_place(u, v).map_err(SequenceError::from_merge(pairs.len()))?;
        value = value.max(eval_red(f, &t)?);
        pairs.push((u, v));
    }
    Ok(OracleResult {
        value,
        sequence: sequence_from_pairs(g.clone(), &pairs)?,
        states_explored: explored,
        exact: false,
    })
}

impl SequenceError {
    fn from_merge(step: usize) -> impl Fn(crate::trigraph::TrigraphError) -> SequenceError {
        move |source| SequenceError::Merge { step, source }
    }
}

/// Exact reduced-`f` with an optimal sequence.
///
/// A greedy bound seeds the search. When the memo budget runs out the greedy
/// sequence comes back with `exact = false`.
pub fn reduced_f_exact(g: &Trigraph, cfg: &OracleConfig<'_>) -> Result<OracleResult, OracleError> {
    let n = g.n();
    let max = cfg.max_n.min(ORACLE_HARD_MAX_N);
    if n > max {
        return Err(OracleError::TooLarge { n, max });
    }
    let incumbent = reduced_f_upper_greedy(g, cfg.f, &[Strategy::MinRedParam, Strategy::LeafMerge])?;
    if n <= 1 {
        return Ok(OracleResult { exact: true, ..incumbent });
    }
    let mut s = Search::new(g, cfg);
    let floor = s.f_of(&s.singletons())?;
    s.floor = floor;
    let root = s.singletons();
    let value = match s.solve(&root, incumbent.value + 1) {
        Ok(Outcome::Exact(v)) => v,
        Ok(Outcome::AtLeast) => unreachable!("greedy sequence bounds the search"),
        Err(Abort::Budget) => {
            return Ok(OracleResult {
                states_explored: s.memo.len(),
                ..incumbent
            })
        }
        Err(Abort::Fail(e)) => return Err(e),
    };
    let pairs = match s.reconstruct(root, value) {
        Ok(p) => p,
        Err(Abort::Budget) => {
            return Ok(OracleResult {
                states_explored: s.memo.len(),
                ..incumbent
            })
        }
        Err(Abort::Fail(e)) => return Err(e),
    };
    // translate part indices into live trigraph ids
    let anchors: Vec<usize> = g.vertices().map(|v| g.label(v).first().unwrap_or(v)).collect();
    let mut t = g.clone();
    let mut id_pairs = Vec::with_capacity(pairs.len());
    for (step, (a, b)) in pairs.into_iter().enumerate() {
        let find = |t: &Trigraph, x: usize| t.vertices().find(|&v| t.label(v).contains(anchors[x]));
        let (u, v) = (find(&t, a).unwrap_or(a), find(&t, b).unwrap_or(b));
        t.contract_in_place(u, v).map_err(SequenceError::from_merge(step))?;
        id_pairs.push((u, v));
    }
    let sequence = sequence_from_pairs(g.clone(), &id_pairs)?;
    Ok(OracleResult {
        value,
        sequence,
        states_explored: s.memo.len(),
        exact: true,
    })
}

#[derive(Clone, Copy)]
enum Outcome {
    Exact(usize),
    AtLeast,
}

#[derive(Clone, Copy)]
enum Memo {
    Exact(usize),
    LowerBound(usize),
}

enum Abort {
    Budget,
    Fail(OracleError),
}

impl From<OracleError> for Abort {
    fn from(e: OracleError) -> Self {
        Abort::Fail(e)
    }
}

/// A partition as a restricted growth string: `blocks[x]` is the index of the
/// part holding `x`, parts numbered by first occurrence.
#[derive(Clone, PartialEq, Eq)]
struct Part {
    blocks: Vec<u8>,
    k: usize,
}

impl Part {
    fn code(&self) -> u64 {
        self.blocks.iter().rev().fold(0u64, |c, &b| c << 4 | u64::from(b))
    }

    fn merged(&self, i: usize, j: usize) -> Part {
        debug_assert!(i < j);
        let blocks = self
            .blocks
            .iter()
            .map(|&b| {
                let b = usize::from(b);
                let nb = if b == j {
                    i
                } else if b > j {
                    b - 1
                } else {
                    b
                };
                nb as u8
            })
            .collect();
        Part { blocks, k: self.k - 1 }
    }

    /// Smallest base vertex of each part.
    fn mins(&self) -> Vec<usize> {
        let mut m = vec![usize::MAX; self.k];
        for (x, &b) in self.blocks.iter().enumerate() {
            let b = usize::from(b);
            m[b] = m[b].min(x);
        }
        m
    }
}

struct Search<'a, 'f> {
    cfg: &'a OracleConfig<'f>,
    n: usize,
    black: Vec<u32>,
    touch: Vec<u32>,
    memo: HashMap<u64, Memo>,
    fmemo: HashMap<(usize, u128), usize>,
    floor: usize,
}

impl<'a, 'f> Search<'a, 'f> {
    fn new(g: &Trigraph, cfg: &'a OracleConfig<'f>) -> Self {
        let ids: Vec<usize> = g.vertices().collect();
        let mut black = vec![0u32; ids.len()];
        let mut touch = vec![0u32; ids.len()];
        for (i, &u) in ids.iter().enumerate() {
            for (j, &v) in ids.iter().enumerate() {
                match g.colour(u, v) {
                    Colour::Black => {
                        black[i] |= 1 << j;
                        touch[i] |= 1 << j;
                    }
                    Colour::Red => touch[i] |= 1 << j,
                    Colour::Absent => {}
                }
            }
        }
        Search {
            cfg,
            n: ids.len(),
            black,
            touch,
            memo: HashMap::new(),
            fmemo: HashMap::new(),
            floor: 0,
        }
    }

    fn singletons(&self) -> Part {
        Part {
            blocks: (0..self.n as u8).collect(),
            k: self.n,
        }
    }

    /// Red-edge bitmap of the quotient over part pairs `(i,j)`, `i < j`, in row order.
    fn red_bits(&self, p: &Part) -> u128 {
        let mut masks = vec![0u32; p.k];
        for (x, &b) in p.blocks.iter().enumerate() {
            masks[usize::from(b)] |= 1 << x;
        }
        let mut bits = 0u128;
        let mut idx = 0;
        for i in 0..p.k {
            for j in i + 1..p.k {
                let (mut all_black, mut none) = (true, true);
                let mut xs = masks[i];
                while xs != 0 {
                    let x = xs.trailing_zeros() as usize;
                    xs &= xs - 1;
                    all_black &= self.black[x] & masks[j] == masks[j];
                    none &= self.touch[x] & masks[j] == 0;
                }
                if !all_black && !none {
                    bits |= 1 << idx;
                }
                idx += 1;
            }
        }
        bits
    }

    fn f_of(&mut self, p: &Part) -> Result<usize, OracleError> {
        let bits = self.red_bits(p);
        if let Some(&v) = self.fmemo.get(&(p.k, bits)) {
            return Ok(v);
        }
        let mut g = Graph::new(p.k);
        let mut idx = 0;
        for i in 0..p.k {
            for j in i + 1..p.k {
                if bits >> idx & 1 == 1 {
                    g.add_edge(i, j);
                }
                idx += 1;
            }
        }
        let v = self.cfg.f.eval(&g)?;
        self.fmemo.insert((p.k, bits), v);
        Ok(v)
    }

    /// Children of `p` with their `f` values (clamped to the floor), cheapest first.
    fn children(&mut self, p: &Part) -> Result<Vec<(usize, usize, usize, Part)>, OracleError> {
        let mut out = Vec::with_capacity(p.k * (p.k - 1) / 2);
        for i in 0..p.k {
            for j in i + 1..p.k {
                let c = p.merged(i, j);
                let fv = self.f_of(&c)?.max(self.floor);
                out.push((fv, i, j, c));
            }
        }
        out.sort_by_key(|c| (c.0, c.1, c.2));
        Ok(out)
    }

    /// `max(floor, W(p))` if it is below `beta`, otherwise a lower bound `>= beta`.
    fn solve(&mut self, p: &Part, beta: usize) -> Result<Outcome, Abort> {
        if p.k == 1 {
            return Ok(Outcome::Exact(self.floor));
        }
        let key = p.code();
        match self.memo.get(&key) {
            Some(&Memo::Exact(v)) => return Ok(Outcome::Exact(v)),
            Some(&Memo::LowerBound(lb)) if lb >= beta => return Ok(Outcome::AtLeast),
            _ => {}
        }
        if self.memo.len() >= self.cfg.memo_budget {
            return Err(Abort::Budget);
        }
        let mut best = beta;
        let mut found = false;
        for (fv, _, _, c) in self.children(p)? {
            if fv >= best {
                break;
            }
            if let Outcome::Exact(v) = self.solve(&c, best)? {
                let val = v.max(fv);
                if val < best {
                    best = val;
                    found = true;
                    if best == self.floor {
                        break;
                    }
                }
            }
        }
        if found {
            self.memo.insert(key, Memo::Exact(best));
            Ok(Outcome::Exact(best))
        } else {
            let lb = match self.memo.get(&key) {
                Some(&Memo::LowerBound(old)) => old.max(beta),
                _ => beta,
            };
            self.memo.insert(key, Memo::LowerBound(lb));
            Ok(Outcome::AtLeast)
        }
    }

    /// Part-minimum pairs of an optimal sequence from `p` with value `target`.
    fn reconstruct(&mut self, mut p: Part, target: usize) -> Result<Vec<(usize, usize)>, Abort> {
        let mut out = Vec::new();
        while p.k > 1 {
            let mins = p.mins();
            let mut next = None;
            for (fv, i, j, c) in self.children(&p)? {
                if fv > target {
                    break;
                }
                if let Outcome::Exact(v) = self.solve(&c, target + 1)? {
                    if v <= target {
                        next = Some((mins[i], mins[j], c));
                        break;
                    }
                }
            }
            let (a, b, c) = next.expect("an optimal child exists");
            out.push((a, b));
            p = c;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ParamKind;

    fn tww(g: &Graph) -> OracleResult {
        let f = ParamKind::MaxDegree;
        reduced_f_exact(&Trigraph::from_graph(g), &OracleConfig::new(&f)).unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(tww(&Graph::new(1)).value, 0);
        assert_eq!(tww(&Graph::complete(6)).value, 0);
        assert_eq!(tww(&Graph::path(4)).value, 1);
        assert_eq!(tww(&Graph::cycle(5)).value, 2);
    }

    #[test]
    fn witness_replays_to_value() {
        for g in [Graph::path(6), Graph::cycle(6), Graph::star(4)] {
            let r = tww(&g);
            assert!(r.exact);
            assert!(!r.sequence.is_partial());
            assert_eq!(r.sequence.width(&ParamKind::MaxDegree).unwrap(), r.value);
        }
    }

    #[test]
    fn greedy_on_clique() {
        let f = ParamKind::MaxDegree;
        let r = reduced_f_upper_greedy(&Trigraph::from_graph(&Graph::complete(5)), &f, &[Strategy::MinRedParam]).unwrap();
        assert_eq!(r.value, 0);
        assert!(!r.exact);
    }

    #[test]
    fn budget_falls_back_to_greedy() {
        let f = ParamKind::Bandwidth;
        let mut cfg = OracleConfig::new(&f);
        cfg.memo_budget = 0;
        let g = Trigraph::from_graph(&Graph::cycle(7));
        let r = reduced_f_exact(&g, &cfg).unwrap();
        assert!(!r.exact);
        assert_eq!(r.sequence.width(&f).unwrap(), r.value);
    }

    #[test]
    fn rejects_large_inputs() {
        let f = ParamKind::MaxDegree;
        let r = reduced_f_exact(&Trigraph::new(13), &OracleConfig::new(&f));
        assert!(matches!(r, Err(OracleError::TooLarge { n: 13, max: 12 })));
    }
}
