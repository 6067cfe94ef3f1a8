//! Trigraphs and the contraction `G/u,v`.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrigraphError {
    #[error("vertex {0} is not live")]
    DeadVertex(usize),
    #[error("cannot merge vertex {0} with itself")]
    SameVertex(usize),
    #[error("merge target {got} is not the next fresh id {expected}")]
    BadFreshId { expected: usize, got: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(&'static str),
    #[error("base trigraph has red edges")]
    RedInBase,
    #[error("pair ({0},{1}) is a loop or references a missing vertex")]
    BadPair(usize, usize),
}

/// Colour of a vertex pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Colour {
    Absent,
    Black,
    Red,
}

/// A trigraph with stable vertex ids.
///
/// Ids `0..n` are the base vertices; every contraction allocates the next
/// unused id, so ids are never reused. Each live vertex carries a label: the
/// set of base vertices it stands for.
#[derive(Clone, Debug)]
pub struct Trigraph {
    black: Vec<VertexSet>,
    red: Vec<VertexSet>,
    alive: VertexSet,
    labels: Vec<VertexSet>,
    base_n: usize,
}

impl Trigraph {
    /// Edgeless trigraph on `0..n`.
    pub fn new(n: usize) -> Self {
        Trigraph {
            black: vec![VertexSet::with_capacity(n); n],
            red: vec![VertexSet::with_capacity(n); n],
            alive: VertexSet::from_iter_with_capacity(n, 0..n),
            labels: (0..n)
                .map(|v| VertexSet::from_iter_with_capacity(n, [v]))
                .collect(),
            base_n: n,
        }
    }

    pub fn from_graph(g: &Graph) -> Self {
        let mut t = Trigraph::new(g.n());
        for (u, v) in g.edges() {
            t.black[u].insert(v);
            t.black[v].insert(u);
        }
        t
    }

    /// Builds a trigraph from black and red pair lists. A pair listed in both is red.
    pub fn from_pairs(
        n: usize,
        black: &[(usize, usize)],
        red: &[(usize, usize)],
    ) -> Result<Self, TrigraphError> {
        let mut t = Trigraph::new(n);
        for &(u, v) in black {
            t.set_colour(u, v, Colour::Black)?;
        }
        for &(u, v) in red {
            t.set_colour(u, v, Colour::Red)?;
        }
        Ok(t)
    }

    pub fn set_colour(&mut self, u: usize, v: usize, c: Colour) -> Result<(), TrigraphError> {
        if u == v || !self.is_live(u) || !self.is_live(v) {
            return Err(TrigraphError::BadPair(u, v));
        }
        self.black[u].remove(v);
        self.black[v].remove(u);
        self.red[u].remove(v);
        self.red[v].remove(u);
        match c {
            Colour::Absent => {}
            Colour::Black => {
                self.black[u].insert(v);
                self.black[v].insert(u);
            }
            Colour::Red => {
                self.red[u].insert(v);
                self.red[v].insert(u);
            }
        }
        Ok(())
    }

    /// Number of base vertices.
    pub fn base_n(&self) -> usize {
        self.base_n
    }

    /// Number of live vertices.
    pub fn n(&self) -> usize {
        self.alive.len()
    }

    /// The id the next contraction will allocate.
    pub fn next_id(&self) -> usize {
        self.black.len()
    }

    #[inline]
    pub fn is_live(&self, v: usize) -> bool {
        self.alive.contains(v)
    }

    /// Live ids in increasing order.
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.alive.iter()
    }

    pub fn alive(&self) -> &VertexSet {
        &self.alive
    }

    pub fn black_neighbours(&self, v: usize) -> &VertexSet {
        &self.black[v]
    }

    pub fn red_neighbours(&self, v: usize) -> &VertexSet {
        &self.red[v]
    }

    pub fn red_degree(&self, v: usize) -> usize {
        self.red[v].len()
    }

    pub fn max_red_degree(&self) -> usize {
        self.vertices().map(|v| self.red_degree(v)).max().unwrap_or(0)
    }

    pub fn colour(&self, u: usize, v: usize) -> Colour {
        if self.black[u].contains(v) {
            Colour::Black
        } else if self.red[u].contains(v) {
            Colour::Red
        } else {
            Colour::Absent
        }
    }

    /// Base vertices represented by `v`.
    pub fn label(&self, v: usize) -> &VertexSet {
        &self.labels[v]
    }

    pub fn black_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices()
            .flat_map(move |u| self.black[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn red_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices()
            .flat_map(move |u| self.red[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn has_red(&self) -> bool {
        self.vertices().any(|v| !self.red[v].is_empty())
    }

    /// Contracts `u` and `v` into a fresh vertex, returning its id.
    pub fn contract_in_place(&mut self, u: usize, v: usize) -> Result<usize, TrigraphError> {
        if u == v {
            return Err(TrigraphError::SameVertex(u));
        }
        for x in [u, v] {
            if !self.is_live(x) {
                return Err(TrigraphError::DeadVertex(x));
            }
        }
        let w = self.next_id();

        let mut bl = self.black[u].clone();
        bl.intersect_with(&self.black[v]);
        let mut any = self.black[u].clone();
        any.union_with(&self.black[v]);
        any.union_with(&self.red[u]);
        any.union_with(&self.red[v]);
        any.remove(u);
        any.remove(v);
        let mut rd = any;
        rd.difference_with(&bl);

        for x in [u, v] {
            for y in self.black[x].to_vec() {
                self.black[y].remove(x);
            }
            for y in self.red[x].to_vec() {
                self.red[y].remove(x);
            }
            self.black[x].clear();
            self.red[x].clear();
            self.alive.remove(x);
        }
        for y in bl.iter() {
            self.black[y].insert(w);
        }
        for y in rd.iter() {
            self.red[y].insert(w);
        }
        let mut lab = self.labels[u].clone();
        lab.union_with(&self.labels[v]);
        self.labels[u].clear();
        self.labels[v].clear();

        self.black.push(bl);
        self.red.push(rd);
        self.labels.push(lab);
        self.alive.insert(w);
        Ok(w)
    }

    /// `G/u,v` as a new value.
    pub fn contract(&self, u: usize, v: usize) -> Result<(Trigraph, usize), TrigraphError> {
        let mut t = self.clone();
        let w = t.contract_in_place(u, v)?;
        Ok((t, w))
    }

    /// The red graph on the live vertices, relabelled to `0..n()` in increasing id
    /// order, together with the id of each new index.
    pub fn red_graph(&self) -> (Graph, Vec<usize>) {
        let ids: Vec<usize> = self.vertices().collect();
        (self.relabelled(&ids, &self.red), ids)
    }

    /// The underlying graph (black and red edges), relabelled like [`Trigraph::red_graph`].
    pub fn underlying_graph(&self) -> (Graph, Vec<usize>) {
        let ids: Vec<usize> = self.vertices().collect();
        let mut g = self.relabelled(&ids, &self.red);
        let b = self.relabelled(&ids, &self.black);
        for (x, y) in b.edges() {
            g.add_edge(x, y);
        }
        (g, ids)
    }

    fn relabelled(&self, ids: &[usize], adj: &[VertexSet]) -> Graph {
        let mut idx = HashMap::with_capacity(ids.len());
        for (i, &v) in ids.iter().enumerate() {
            idx.insert(v, i);
        }
        let mut g = Graph::new(ids.len());
        for (i, &v) in ids.iter().enumerate() {
            for y in adj[v].iter() {
                let j = idx[&y];
                if i < j {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// The current partition of the base vertex set.
    pub fn partition(&self) -> Partition {
        Partition::from_parts_unchecked(self.vertices().map(|v| self.labels[v].to_vec()).collect())
    }

    /// Compares two trigraphs through their labels, ignoring ids.
    pub fn same_by_labels(&self, other: &Trigraph) -> bool {
        if self.n() != other.n() {
            return false;
        }
        let key = |t: &Trigraph| {
            let mut m = HashMap::new();
            for v in t.vertices() {
                m.insert(t.labels[v].to_vec(), v);
            }
            m
        };
        let (ka, kb) = (key(self), key(other));
        let mut pairs = Vec::with_capacity(ka.len());
        for (lab, &a) in &ka {
            match kb.get(lab) {
                Some(&b) => pairs.push((a, b)),
                None => return false,
            }
        }
        pairs.iter().all(|&(a, b)| {
            pairs
                .iter()
                .all(|&(a2, b2)| a == a2 || self.colour(a, a2) == other.colour(b, b2))
        })
    }
}

/// A partition of `0..n`, stored canonically: parts sorted internally and
/// ordered by their smallest element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, parts: Vec<Vec<usize>>) -> Result<Self, TrigraphError> {
        let mut seen = vec![false; n];
        for p in &parts {
            if p.is_empty() {
                return Err(TrigraphError::InvalidPartition("empty part"));
            }
            for &v in p {
                if v >= n {
                    return Err(TrigraphError::InvalidPartition("element out of range"));
                }
                if core::mem::replace(&mut seen[v], true) {
                    return Err(TrigraphError::InvalidPartition("parts overlap"));
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(TrigraphError::InvalidPartition("parts do not cover the vertex set"));
        }
        Ok(Self::from_parts_unchecked(parts))
    }

    fn from_parts_unchecked(mut parts: Vec<Vec<usize>>) -> Self {
        for p in &mut parts {
            p.sort_unstable();
        }
        parts.sort_unstable_by_key(|p| p[0]);
        Partition { parts }
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            parts: (0..n).map(|v| vec![v]).collect(),
        }
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn ground_size(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }
}

/// The quotient trigraph of `g0` by `p`: a pair of parts is black iff every
/// cross pair is black, absent iff every cross pair is absent, red otherwise.
/// Vertex `i` of the result is part `i` of `p`; labels are the parts.
pub fn quotient(g0: &Trigraph, p: &Partition) -> Result<Trigraph, TrigraphError> {
    let n = g0.base_n();
    if g0.n() != n || p.ground_size() != n {
        return Err(TrigraphError::InvalidPartition("partition does not match the base vertices"));
    }
    Partition::new(n, p.parts.clone())?;
    let k = p.len();
    let mut t = Trigraph::new(k);
    t.base_n = n;
    for (i, part) in p.parts.iter().enumerate() {
        t.labels[i] = VertexSet::from_iter_with_capacity(n, part.iter().copied());
    }
    for i in 0..k {
        for j in i + 1..k {
            let (mut all_black, mut all_absent) = (true, true);
            for &x in &p.parts[i] {
                for &y in &p.parts[j] {
                    match g0.colour(x, y) {
                        Colour::Black => all_absent = false,
                        Colour::Red => {
                            all_absent = false;
                            all_black = false;
                        }
                        Colour::Absent => all_black = false,
                    }
                }
            }
            let c = if all_black {
                Colour::Black
            } else if all_absent {
                Colour::Absent
            } else {
                Colour::Red
            };
            t.set_colour(i, j, c)?;
        }
    }
    Ok(t)
}

/// [`quotient`] restricted to bases without red edges.
pub fn trigraph_of_partition(g0: &Trigraph, p: &Partition) -> Result<Trigraph, TrigraphError> {
    if g0.has_red() {
        return Err(TrigraphError::RedInBase);
    }
    quotient(g0, p)
}

/// The trigraph with the edges of `g`, all red.
pub fn red_of(g: &Graph) -> Trigraph {
    let mut t = Trigraph::new(g.n());
    for (u, v) in g.edges() {
        t.red[u].insert(v);
        t.red[v].insert(u);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contract_k2() {
        let t = Trigraph::from_graph(&Graph::complete(2));
        let (c, w) = t.contract(0, 1).unwrap();
        assert_eq!(w, 2);
        assert_eq!(c.n(), 1);
        assert_eq!(c.black_edges().count() + c.red_edges().count(), 0);
    }

    #[test]
    fn contract_path_ends_is_black() {
        let t = Trigraph::from_graph(&Graph::path(3));
        let (c, w) = t.contract(0, 2).unwrap();
        assert_eq!(c.colour(w, 1), Colour::Black);
        assert_eq!(c.label(w).to_vec(), vec![0, 2]);
    }

    #[test]
    fn contract_adjacent_is_red() {
        let t = Trigraph::from_graph(&Graph::path(3));
        let (c, w) = t.contract(0, 1).unwrap();
        assert_eq!(c.colour(w, 2), Colour::Red);
    }

    #[test]
    fn contract_errors() {
        let mut t = Trigraph::from_graph(&Graph::path(3));
        assert_eq!(t.contract_in_place(1, 1), Err(TrigraphError::SameVertex(1)));
        t.contract_in_place(0, 1).unwrap();
        assert_eq!(t.contract_in_place(0, 2), Err(TrigraphError::DeadVertex(0)));
    }

    #[test]
    fn partition_c4_black() {
        let t = Trigraph::from_graph(&Graph::cycle(4));
        let p = Partition::new(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        let q = trigraph_of_partition(&t, &p).unwrap();
        assert_eq!(q.colour(0, 1), Colour::Black);
    }

    #[test]
    fn partition_p4_red() {
        let t = Trigraph::from_graph(&Graph::path(4));
        let p = Partition::new(4, vec![vec![2, 3], vec![0, 1]]).unwrap();
        let q = trigraph_of_partition(&t, &p).unwrap();
        assert_eq!(q.colour(0, 1), Colour::Red);
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(3, vec![vec![0, 1]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1], vec![], vec![2]]).is_err());
        let t = red_of(&Graph::path(2));
        assert_eq!(
            trigraph_of_partition(&t, &Partition::singletons(2)).unwrap_err(),
            TrigraphError::RedInBase
        );
    }

    #[test]
    fn singletons_reproduce_graph() {
        let g = Graph::cycle(5);
        let t = Trigraph::from_graph(&g);
        let q = trigraph_of_partition(&t, &Partition::singletons(5)).unwrap();
        assert!(q.same_by_labels(&t));
        assert_eq!(q.black_edges().count(), 5);
    }
}
