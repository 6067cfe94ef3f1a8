//! Simple undirected graphs on vertices `0..n`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::VertexSet;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    adj: Vec<VertexSet>,
    m: usize,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![VertexSet::with_capacity(n); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Loops and repeated edges are ignored.
    ///
    /// # Panics
    ///
    /// Panics if an endpoint is `>= n`.
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Self {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0);
        }
        g
    }

    pub fn star(leaves: usize) -> Self {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u < self.n() && v < self.n(), "edge ({u},{v}) out of range");
        if u == v || self.adj[u].contains(v) {
            return false;
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.m += 1;
        true
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u < self.n() && v < self.n() && self.adj[u].remove(v) {
            self.adj[v].remove(u);
            self.m -= 1;
            true
        } else {
            false
        }
    }

    /// Appends an isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        let n = self.n() + 1;
        for s in &mut self.adj {
            s.grow(n);
        }
        self.adj.push(VertexSet::with_capacity(n));
        n - 1
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbours(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        Graph::from_edges(
            n,
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !self.has_edge(u, v)),
        )
    }

    /// The subgraph induced by `vertices`, relabelled to `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut idx = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            idx[v] = i;
        }
        let mut g = Graph::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for w in self.adj[v].iter() {
                let j = idx[w];
                if j != usize::MAX && i < j {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Truncated BFS distances from `src`: `None` beyond `limit` or unreachable.
    pub fn distances_within(&self, src: usize, limit: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or(0);
            if d == limit {
                continue;
            }
            for w in self.adj[u].iter() {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distances(&self, src: usize) -> Vec<Option<usize>> {
        self.distances_within(src, usize::MAX)
    }

    /// The r-th power: vertices adjacent iff their distance is at most `r`.
    pub fn power(&self, r: usize) -> Graph {
        let n = self.n();
        let mut g = Graph::new(n);
        for u in 0..n {
            for (v, d) in self.distances_within(u, r).into_iter().enumerate() {
                if v > u && d.is_some() {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for w in self.adj[u].iter() {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Diameter of a connected graph; `None` if disconnected or empty.
    pub fn diameter(&self) -> Option<usize> {
        if self.n() == 0 {
            return None;
        }
        let mut best = 0;
        for v in 0..self.n() {
            for d in self.distances(v) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Adjacency as `u128` masks. Only valid for `n <= 128`.
    pub(crate) fn masks(&self) -> Vec<u128> {
        debug_assert!(self.n() <= 128);
        self.adj
            .iter()
            .map(|s| s.iter().fold(0u128, |m, v| m | 1u128 << v))
            .collect()
    }

    /// Vertices of degree 1 in increasing order.
    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(|&v| self.degree(v) == 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_constructors() {
        assert_eq!(Graph::complete(4).m(), 6);
        assert_eq!(Graph::path(5).m(), 4);
        assert_eq!(Graph::cycle(5).m(), 5);
        assert_eq!(Graph::star(3).degree(0), 3);
    }

    #[test]
    fn power_of_path() {
        let p = Graph::path(5).power(2);
        assert!(p.has_edge(0, 2));
        assert!(!p.has_edge(0, 3));
        assert_eq!(p.m(), 4 + 3);
    }

    #[test]
    fn complement_and_induced() {
        let c = Graph::path(4).complement();
        assert_eq!(c.edges().collect::<Vec<_>>(), vec![(0, 2), (0, 3), (1, 3)]);
        let g = Graph::cycle(5).induced(&[0, 1, 2]);
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn distances_and_diameter() {
        let g = Graph::cycle(6);
        assert_eq!(g.distances(0)[3], Some(3));
        assert_eq!(g.distances_within(0, 2)[3], None);
        assert_eq!(g.diameter(), Some(3));
        assert_eq!(Graph::new(2).diameter(), None);
    }

    #[test]
    fn add_vertex_grows() {
        let mut g = Graph::path(64);
        let v = g.add_vertex();
        g.add_edge(0, v);
        assert!(g.has_edge(v, 0));
        assert_eq!(g.n(), 65);
    }
}
