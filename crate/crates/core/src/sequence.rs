//! Reduction sequences: validation, replay and scoring.

use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::Graph;
use crate::params::{ParamError, RedParam};
use crate::trigraph::{Trigraph, TrigraphError};

/// One contraction: `u` and `v` are replaced by the fresh vertex `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Merge {
    pub u: usize,
    pub v: usize,
    pub w: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("merge {step}: {source}")]
    Merge { step: usize, source: TrigraphError },
    #[error("witness list has {got} entries, expected {expected}")]
    WitnessCount { expected: usize, got: usize },
    #[error("step {step}: witness ordering misses red-edge endpoint {vertex}")]
    WitnessIncomplete { step: usize, vertex: usize },
    #[error("step {step}: parameter evaluation failed: {source}")]
    Param { step: usize, source: ParamError },
}

/// A sequence of merges applied to `base`.
///
/// `witnesses`, when present, holds one vertex ordering per trigraph of the
/// replay (the base first), each listing at least every vertex incident to a
/// red edge at that step.
#[derive(Debug, Clone)]
pub struct ReductionSequence {
    pub base: Trigraph,
    pub merges: Vec<Merge>,
    pub witnesses: Option<Vec<Vec<usize>>>,
}

impl ReductionSequence {
    pub fn new(base: Trigraph) -> Self {
        ReductionSequence {
            base,
            merges: Vec::new(),
            witnesses: None,
        }
    }

    /// True when the final trigraph still has more than one vertex.
    pub fn is_partial(&self) -> bool {
        self.base.n().saturating_sub(self.merges.len()) > 1
    }

    pub fn replayer(&self) -> Replayer<'_> {
        Replayer {
            current: self.base.clone(),
            merges: &self.merges,
            next: 0,
        }
    }

    /// Replays every merge, checking fresh ids, and returns the final trigraph.
    pub fn validate(&self) -> Result<Trigraph, SequenceError> {
        let mut r = self.replayer();
        while r.advance()?.is_some() {}
        if let Some(w) = &self.witnesses {
            if w.len() != self.merges.len() + 1 {
                return Err(SequenceError::WitnessCount {
                    expected: self.merges.len() + 1,
                    got: w.len(),
                });
            }
        }
        Ok(r.current)
    }

    /// Every trigraph of the replay, the base first.
    pub fn snapshots(&self) -> Result<Vec<Trigraph>, SequenceError> {
        let mut r = self.replayer();
        let mut out = Vec::with_capacity(self.merges.len() + 1);
        out.push(r.current.clone());
        while r.advance()?.is_some() {
            out.push(r.current.clone());
        }
        Ok(out)
    }

    /// `max_i f(red graph of G_i)`, the base included.
    pub fn width<F: RedParam + ?Sized>(&self, f: &F) -> Result<usize, SequenceError> {
        let mut r = self.replayer();
        let mut best = f
            .eval(&r.current.red_graph().0)
            .map_err(|source| SequenceError::Param { step: 0, source })?;
        while r.advance()?.is_some() {
            let v = f
                .eval(&r.current.red_graph().0)
                .map_err(|source| SequenceError::Param { step: r.next, source })?;
            best = best.max(v);
        }
        Ok(best)
    }

    /// Largest red-edge stretch under the witness orderings, or `None` without witnesses.
    pub fn witness_width(&self) -> Result<Option<usize>, SequenceError> {
        let Some(ws) = &self.witnesses else {
            return Ok(None);
        };
        self.validate()?;
        let mut r = self.replayer();
        let mut best = 0;
        let mut step = 0;
        loop {
            best = best.max(ordering_stretch(&r.current, &ws[step], step)?);
            if r.advance()?.is_none() {
                break;
            }
            step += 1;
        }
        Ok(Some(best))
    }
}

/// Largest position gap across a red edge of `t` under `order`.
pub fn ordering_stretch(t: &Trigraph, order: &[usize], step: usize) -> Result<usize, SequenceError> {
    let mut pos = hashbrown::HashMap::with_capacity(order.len());
    for (i, &v) in order.iter().enumerate() {
        pos.insert(v, i);
    }
    let mut best = 0;
    for (u, v) in t.red_edges() {
        let pu = *pos.get(&u).ok_or(SequenceError::WitnessIncomplete { step, vertex: u })?;
        let pv = *pos.get(&v).ok_or(SequenceError::WitnessIncomplete { step, vertex: v })?;
        best = best.max(pu.abs_diff(pv));
    }
    Ok(best)
}

/// Streaming replay that mutates one trigraph in place.
pub struct Replayer<'a> {
    current: Trigraph,
    merges: &'a [Merge],
    next: usize,
}

impl Replayer<'_> {
    pub fn current(&self) -> &Trigraph {
        &self.current
    }

    /// Number of merges applied so far.
    pub fn step(&self) -> usize {
        self.next
    }

    /// Applies the next merge; `Ok(None)` once the sequence is exhausted.
    pub fn advance(&mut self) -> Result<Option<Merge>, SequenceError> {
        let Some(&m) = self.merges.get(self.next) else {
            return Ok(None);
        };
        let step = self.next;
        let expected = self.current.next_id();
        if m.w != expected {
            return Err(SequenceError::Merge {
                step,
                source: TrigraphError::BadFreshId { expected, got: m.w },
            });
        }
        self.current
            .contract_in_place(m.u, m.v)
            .map_err(|source| SequenceError::Merge { step, source })?;
        self.next += 1;
        Ok(Some(m))
    }

    pub fn into_current(self) -> Trigraph {
        self.current
    }
}

/// Builds a sequence by contracting pairs in order, allocating fresh ids.
pub fn sequence_from_pairs(
    base: Trigraph,
    pairs: &[(usize, usize)],
) -> Result<ReductionSequence, SequenceError> {
    let mut t = base.clone();
    let mut merges = Vec::with_capacity(pairs.len());
    for (step, &(u, v)) in pairs.iter().enumerate() {
        let w = t
            .contract_in_place(u, v)
            .map_err(|source| SequenceError::Merge { step, source })?;
        merges.push(Merge { u, v, w });
    }
    Ok(ReductionSequence {
        base,
        merges,
        witnesses: None,
    })
}

/// The red graph of every step, the base first.
pub fn red_graphs(seq: &ReductionSequence) -> Result<Vec<(Graph, Vec<usize>)>, SequenceError> {
    Ok(seq.snapshots()?.iter().map(Trigraph::red_graph).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ParamKind;
    use crate::trigraph::trigraph_of_partition;

    #[test]
    fn twins_of_clique_have_width_zero() {
        let base = Trigraph::from_graph(&Graph::complete(5));
        let pairs = [(0, 1), (2, 5), (3, 6), (4, 7)];
        let s = sequence_from_pairs(base, &pairs).unwrap();
        assert!(!s.is_partial());
        assert_eq!(s.width(&ParamKind::MaxDegree).unwrap(), 0);
        assert_eq!(s.snapshots().unwrap().len(), 5);
    }

    #[test]
    fn p4_sequence_width_one() {
        let base = Trigraph::from_graph(&Graph::path(4));
        let s = sequence_from_pairs(base, &[(0, 1), (4, 2), (5, 3)]).unwrap();
        assert_eq!(s.width(&ParamKind::MaxDegree).unwrap(), 1);
    }

    #[test]
    fn replay_matches_partitions() {
        let base = Trigraph::from_graph(&Graph::path(4));
        let s = sequence_from_pairs(base.clone(), &[(1, 3), (0, 4), (2, 5)]).unwrap();
        for t in s.snapshots().unwrap() {
            let q = trigraph_of_partition(&base, &t.partition()).unwrap();
            assert!(q.same_by_labels(&t));
        }
    }

    #[test]
    fn bad_fresh_id_rejected() {
        let base = Trigraph::from_graph(&Graph::path(3));
        let s = ReductionSequence {
            base,
            merges: alloc::vec![Merge { u: 0, v: 1, w: 7 }],
            witnesses: None,
        };
        assert!(matches!(s.validate(), Err(SequenceError::Merge { step: 0, .. })));
    }

    #[test]
    fn empty_sequence_on_k1() {
        let s = ReductionSequence::new(Trigraph::new(1));
        assert!(!s.is_partial());
        assert_eq!(s.snapshots().unwrap().len(), 1);
    }

    #[test]
    fn witness_width_checks_orderings() {
        let base = Trigraph::from_graph(&Graph::path(3));
        let mut s = sequence_from_pairs(base, &[(0, 1), (2, 3)]).unwrap();
        s.witnesses = Some(alloc::vec![alloc::vec![0, 1, 2], alloc::vec![3, 2], alloc::vec![4]]);
        assert_eq!(s.witness_width().unwrap(), Some(1));
        s.witnesses = Some(alloc::vec![alloc::vec![], alloc::vec![3], alloc::vec![4]]);
        assert!(s.witness_width().is_err());
    }
}
