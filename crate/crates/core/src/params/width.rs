//! Exact pathwidth (vertex separation) and treewidth (elimination orderings).
//!
//! Both searches run over vertex subsets encoded as `u128` masks, remember
//! subsets already explored, and stop at the configured state budget.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashSet;

use super::{colouring::degeneracy, Limits, ParamError, ParamResult, Witness};
use crate::bitset::mask_bits;
use crate::graph::Graph;

/// A tree-decomposition. `parent[i]` is `None` for the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub parent: Vec<Option<usize>>,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }

    /// Checks that the parent pointers form a tree, that every vertex and edge
    /// of `g` is covered, and that the bags containing each vertex are connected.
    pub fn validate(&self, g: &Graph) -> bool {
        let t = self.bags.len();
        if self.parent.len() != t || (t == 0 && g.n() > 0) {
            return false;
        }
        if t > 0 && self.parent.iter().filter(|p| p.is_none()).count() != 1 {
            return false;
        }
        // every node must reach the root without cycling
        for i in 0..t {
            let (mut x, mut steps) = (i, 0);
            while let Some(p) = self.parent[x] {
                if p >= t || steps > t {
                    return false;
                }
                x = p;
                steps += 1;
            }
        }
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
        for (i, b) in self.bags.iter().enumerate() {
            for &v in b {
                if v >= g.n() {
                    return false;
                }
                holders[v].push(i);
            }
        }
        if holders.iter().any(Vec::is_empty) {
            return false;
        }
        for (u, v) in g.edges() {
            if !holders[u].iter().any(|i| self.bags[*i].contains(&v)) {
                return false;
            }
        }
        // a set of nodes is connected iff exactly one of them has its parent outside it
        holders.iter().all(|h| {
            h.iter()
                .filter(|&&i| self.parent[i].is_none_or(|p| !h.contains(&p)))
                .count()
                == 1
        })
    }

    fn path(bags: Vec<Vec<usize>>) -> Self {
        let parent = (0..bags.len()).map(|i| i.checked_sub(1)).collect();
        TreeDecomposition { bags, parent }
    }
}

fn check_size(g: &Graph, limits: &Limits, what: &'static str) -> Result<(), ParamError> {
    if g.n() > limits.width_max_n.min(128) {
        return Err(ParamError::TooLarge {
            what,
            n: g.n(),
            max: limits.width_max_n.min(128),
        });
    }
    Ok(())
}

/// Exact pathwidth with a path-decomposition witness.
pub fn pathwidth_exact(g: &Graph, limits: &Limits) -> Result<ParamResult, ParamError> {
    check_size(g, limits, "exact pathwidth")?;
    let mut order = Vec::with_capacity(g.n());
    let mut value = 0;
    let mut budget = limits.state_budget;
    for comp in g.components() {
        let sub = g.induced(&comp);
        let (w, ord) = vsn_component(&sub, &mut budget)
            .ok_or(ParamError::Budget { budget: limits.state_budget })?;
        value = value.max(w);
        order.extend(ord.into_iter().map(|i| comp[i]));
    }
    let adj = g.masks();
    let mut bags = Vec::with_capacity(order.len());
    let mut prefix = 0u128;
    for &v in &order {
        let mut bag: Vec<usize> = mask_bits(boundary(&adj, prefix)).collect();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        prefix |= 1 << v;
    }
    Ok(ParamResult {
        value,
        witness: Witness::Decomposition(TreeDecomposition::path(bags)),
        exact: true,
    })
}

/// Vertices of `s` with a neighbour outside `s`.
fn boundary(adj: &[u128], s: u128) -> u128 {
    mask_bits(s).filter(|&u| adj[u] & !s != 0).fold(0, |m, u| m | 1 << u)
}

fn vsn_component(g: &Graph, budget: &mut usize) -> Option<(usize, Vec<usize>)> {
    let n = g.n();
    let adj = g.masks();
    let full = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    // greedy upper bound: always add the vertex giving the smallest boundary
    let mut s = 0u128;
    let mut greedy = Vec::with_capacity(n);
    let mut ub = 0;
    while s != full {
        let v = mask_bits(full & !s)
            .min_by_key(|&v| (boundary(&adj, s | 1 << v).count_ones(), v))
            .unwrap_or(0);
        s |= 1 << v;
        ub = ub.max(boundary(&adj, s).count_ones() as usize);
        greedy.push(v);
    }
    let lb = degeneracy(g).value;
    for k in lb..ub {
        let mut st = VsnSearch {
            adj: &adj,
            full,
            k,
            seen: HashSet::new(),
            order: Vec::with_capacity(n),
        };
        match st.dfs(0, budget) {
            Some(true) => return Some((k, st.order)),
            Some(false) => {}
            None => return None,
        }
    }
    Some((ub, greedy))
}

struct VsnSearch<'a> {
    adj: &'a [u128],
    full: u128,
    k: usize,
    seen: HashSet<u128>,
    order: Vec<usize>,
}

impl VsnSearch<'_> {
    /// Applies the two boundary-safe rules until neither fires. Neither can
    /// enlarge the boundary, and both are safe to apply first.
    fn close(&mut self, mut s: u128) -> u128 {
        loop {
            let rest = self.full & !s;
            let next = mask_bits(rest).find(|&v| self.adj[v] & !s & !(1 << v) == 0).or_else(|| {
                mask_bits(s).find_map(|u| {
                    let out = self.adj[u] & !s;
                    (out.count_ones() == 1).then(|| out.trailing_zeros() as usize)
                })
            });
            match next {
                Some(v) => {
                    s |= 1 << v;
                    self.order.push(v);
                }
                None => return s,
            }
        }
    }

    fn dfs(&mut self, s: u128, budget: &mut usize) -> Option<bool> {
        let mark = self.order.len();
        let s = self.close(s);
        if s == self.full {
            return Some(true);
        }
        if !self.seen.insert(s) {
            self.order.truncate(mark);
            return Some(false);
        }
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        let mut cand: Vec<(u32, usize)> = mask_bits(self.full & !s)
            .map(|v| (boundary(self.adj, s | 1 << v).count_ones(), v))
            .filter(|&(b, _)| b as usize <= self.k)
            .collect();
        cand.sort_unstable();
        for (_, v) in cand {
            self.order.push(v);
            if self.dfs(s | 1 << v, budget)? {
                return Some(true);
            }
            self.order.pop();
        }
        self.order.truncate(mark);
        Some(false)
    }
}

/// Neighbours of `v` in the graph obtained by eliminating the vertices of `s`.
fn elim_neighbours(adj: &[u128], s: u128, v: usize) -> u128 {
    let mut reach = adj[v] & s;
    let mut frontier = reach;
    while frontier != 0 {
        let mut next = 0;
        for x in mask_bits(frontier) {
            next |= adj[x] & s;
        }
        next &= !reach;
        reach |= next;
        frontier = next;
    }
    let mut out = adj[v];
    for x in mask_bits(reach) {
        out |= adj[x];
    }
    out & !s & !(1 << v)
}

/// Exact treewidth with a tree-decomposition witness.
pub fn treewidth_exact(g: &Graph, limits: &Limits) -> Result<ParamResult, ParamError> {
    check_size(g, limits, "exact treewidth")?;
    let n = g.n();
    let adj = g.masks();
    let mut order = Vec::with_capacity(n);
    let mut value = 0;
    let mut budget = limits.state_budget;
    for comp in g.components() {
        let sub = g.induced(&comp);
        let (w, ord) = tw_component(&sub, &mut budget)
            .ok_or(ParamError::Budget { budget: limits.state_budget })?;
        value = value.max(w);
        order.extend(ord.into_iter().map(|i| comp[i]));
    }
    Ok(ParamResult {
        value,
        witness: Witness::Decomposition(decomposition_from_elimination(&adj, &order)),
        exact: true,
    })
}

/// Bag of `v` is `v` plus its neighbours at elimination time; its parent is the
/// bag of the first of those neighbours to be eliminated.
fn decomposition_from_elimination(adj: &[u128], order: &[usize]) -> TreeDecomposition {
    let n = order.len();
    let mut rank = vec![0; adj.len()];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut bags = Vec::with_capacity(n);
    let mut parent = Vec::with_capacity(n);
    let mut s = 0u128;
    let mut last_root: Option<usize> = None;
    for (i, &v) in order.iter().enumerate() {
        let q = elim_neighbours(adj, s, v);
        let mut bag: Vec<usize> = mask_bits(q).collect();
        parent.push(bag.iter().map(|&w| rank[w]).min());
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        if q == 0 {
            // chain the roots of separate components together
            if let Some(r) = last_root {
                parent[r] = Some(i);
            }
            last_root = Some(i);
        }
        s |= 1 << v;
    }
    TreeDecomposition { bags, parent }
}

fn tw_component(g: &Graph, budget: &mut usize) -> Option<(usize, Vec<usize>)> {
    let n = g.n();
    let adj = g.masks();
    let full = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    // min-fill-free greedy: repeatedly eliminate a vertex of minimum current degree
    let mut s = 0u128;
    let mut greedy = Vec::with_capacity(n);
    let mut ub = 0;
    while s != full {
        let (d, v) = mask_bits(full & !s)
            .map(|v| (elim_neighbours(&adj, s, v).count_ones() as usize, v))
            .min()
            .unwrap_or((0, 0));
        ub = ub.max(d);
        greedy.push(v);
        s |= 1 << v;
    }
    let lb = degeneracy(g).value;
    for k in lb..ub {
        let mut st = TwSearch {
            adj: &adj,
            full,
            k,
            seen: HashSet::new(),
            order: Vec::with_capacity(n),
        };
        match st.dfs(0, budget) {
            Some(true) => return Some((k, st.order)),
            Some(false) => {}
            None => return None,
        }
    }
    Some((ub, greedy))
}

struct TwSearch<'a> {
    adj: &'a [u128],
    full: u128,
    k: usize,
    seen: HashSet<u128>,
    order: Vec<usize>,
}

impl TwSearch<'_> {
    /// Eliminates simplicial and almost simplicial vertices of degree at most
    /// `k`; for those, treewidth at most `k` is preserved in both directions.
    fn close(&mut self, mut s: u128) -> u128 {
        'outer: loop {
            for v in mask_bits(self.full & !s) {
                let q = elim_neighbours(self.adj, s, v);
                if q.count_ones() as usize > self.k {
                    continue;
                }
                let miss: Vec<(usize, u128)> = mask_bits(q)
                    .map(|w| (w, q & !(1 << w) & !elim_neighbours(self.adj, s, w)))
                    .collect();
                let simplicial_ish = miss.iter().all(|&(_, m)| m == 0)
                    || mask_bits(q).any(|u| miss.iter().all(|&(w, m)| w == u || m & !(1 << u) == 0));
                if simplicial_ish {
                    self.order.push(v);
                    s |= 1 << v;
                    continue 'outer;
                }
            }
            return s;
        }
    }

    fn dfs(&mut self, s: u128, budget: &mut usize) -> Option<bool> {
        let mark = self.order.len();
        let s = self.close(s);
        if s == self.full {
            return Some(true);
        }
        if !self.seen.insert(s) {
            self.order.truncate(mark);
            return Some(false);
        }
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        let mut cand: Vec<(u32, usize)> = mask_bits(self.full & !s)
            .map(|v| (elim_neighbours(self.adj, s, v).count_ones(), v))
            .filter(|&(d, _)| d as usize <= self.k)
            .collect();
        cand.sort_unstable();
        for (_, v) in cand {
            self.order.push(v);
            if self.dfs(s | 1 << v, budget)? {
                return Some(true);
            }
            self.order.pop();
        }
        self.order.truncate(mark);
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn both(g: &Graph) -> (usize, usize) {
        let l = Limits::default();
        let p = pathwidth_exact(g, &l).unwrap();
        let t = treewidth_exact(g, &l).unwrap();
        for r in [&p, &t] {
            let Witness::Decomposition(d) = &r.witness else { panic!() };
            assert!(d.validate(g), "{d:?}");
            assert_eq!(d.width(), r.value);
        }
        (t.value, p.value)
    }

    #[test]
    fn families() {
        assert_eq!(both(&Graph::complete(4)), (3, 3));
        assert_eq!(both(&Graph::path(6)), (1, 1));
        assert_eq!(both(&Graph::cycle(7)), (2, 2));
        assert_eq!(both(&Graph::star(5)), (1, 1));
        assert_eq!(both(&Graph::new(3)), (0, 0));
    }

    #[test]
    fn spider_has_pathwidth_two() {
        // three legs of length 2 around a centre: a tree with pathwidth 2
        let g = Graph::from_edges(10, [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6), (0, 7), (7, 8), (8, 9)]);
        assert_eq!(both(&g), (1, 2));
    }

    #[test]
    fn grid_widths() {
        let g = Graph::from_edges(9, [(0, 1), (1, 2), (3, 4), (4, 5), (6, 7), (7, 8), (0, 3), (3, 6), (1, 4), (4, 7), (2, 5), (5, 8)]);
        assert_eq!(both(&g), (3, 3));
    }

    #[test]
    fn validate_rejects_broken_decompositions() {
        let g = Graph::path(3);
        let bad = TreeDecomposition { bags: vec![vec![0, 1], vec![2]], parent: vec![None, Some(0)] };
        assert!(!bad.validate(&g));
        let split = TreeDecomposition {
            bags: vec![vec![0, 1], vec![2], vec![1, 2]],
            parent: vec![None, Some(0), Some(1)],
        };
        assert!(!split.validate(&g));
    }
}
