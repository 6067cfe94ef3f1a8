//! Degeneracy and strong colouring numbers.
//!
//! `reach_s(v)` only depends on the set of vertices placed after `v`, not on
//! their order: a vertex `w` is reached when some path of length at most `s`
//! runs from `v` to `w` through later vertices only, and `w` itself is not
//! later than `v`. That makes a subset search over suffix sets exact.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashSet;

use super::{Limits, ParamError, ParamResult, Witness};
use crate::bitset::mask_bits;
use crate::graph::Graph;

/// Degeneracy with its peeling order (repeatedly remove a minimum-degree vertex,
/// smallest id first).
pub fn degeneracy(g: &Graph) -> ParamResult {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut value = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .unwrap_or(0);
        value = value.max(deg[v]);
        removed[v] = true;
        order.push(v);
        for w in g.neighbours(v).iter() {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    ParamResult {
        value,
        witness: Witness::Peeling(order),
        exact: true,
    }
}

/// Mask of `reach_s(v)` when `later` is the set of vertices after `v`.
fn reach(adj: &[u128], v: usize, later: u128, s: usize) -> u128 {
    let mut seen = 1u128 << v;
    let mut frontier = seen;
    let mut out = seen;
    for _ in 0..s {
        let mut next = 0;
        for x in mask_bits(frontier) {
            next |= adj[x];
        }
        next &= !seen;
        seen |= next;
        out |= next & !later;
        frontier = next & later;
        if frontier == 0 {
            break;
        }
    }
    out
}

/// `|reach_s(v)|` for every vertex under `order` (earliest first).
pub fn reach_sizes(g: &Graph, order: &[usize], s: usize) -> Vec<usize> {
    let adj = g.masks();
    let mut later = 0u128;
    let mut out = vec![0; g.n()];
    for &v in order.iter().rev() {
        out[v] = reach(&adj, v, later, s).count_ones() as usize;
        later |= 1 << v;
    }
    out
}

fn full_mask(n: usize) -> u128 {
    if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Greedy upper bound on `col_s`: fill the order from the back, always placing
/// the vertex whose reach is currently smallest.
pub fn col_s_greedy(g: &Graph, s: usize) -> ParamResult {
    let n = g.n();
    assert!(n <= 128, "col_s_greedy supports at most 128 vertices");
    let adj = g.masks();
    let mut later = 0u128;
    let mut rev = Vec::with_capacity(n);
    let mut value = 0;
    while later != full_mask(n) {
        let (r, v) = mask_bits(full_mask(n) & !later)
            .map(|v| (reach(&adj, v, later, s).count_ones() as usize, v))
            .min()
            .unwrap_or((0, 0));
        value = value.max(r);
        rev.push(v);
        later |= 1 << v;
    }
    rev.reverse();
    ParamResult {
        value,
        witness: Witness::Ordering(rev),
        exact: false,
    }
}

/// Exact `col_s` with a witness ordering.
pub fn col_s_exact(g: &Graph, s: usize, limits: &Limits) -> Result<ParamResult, ParamError> {
    let n = g.n();
    if n > limits.col_max_n.min(128) {
        return Err(ParamError::TooLarge {
            what: "exact strong colouring number",
            n,
            max: limits.col_max_n.min(128),
        });
    }
    let greedy = col_s_greedy(g, s);
    if n == 0 {
        return Ok(ParamResult { exact: true, ..greedy });
    }
    let adj = g.masks();
    let lb = degeneracy(g).value + 1;
    let mut budget = limits.state_budget;
    for k in lb..greedy.value {
        let mut st = ColSearch {
            adj: &adj,
            full: full_mask(n),
            s,
            k,
            failed: HashSet::new(),
            rev: Vec::with_capacity(n),
        };
        let found = st
            .dfs(0, &mut budget)
            .ok_or(ParamError::Budget { budget: limits.state_budget })?;
        if found {
            st.rev.reverse();
            return Ok(ParamResult {
                value: k,
                witness: Witness::Ordering(st.rev),
                exact: true,
            });
        }
    }
    Ok(ParamResult { exact: true, ..greedy })
}

struct ColSearch<'a> {
    adj: &'a [u128],
    full: u128,
    s: usize,
    k: usize,
    failed: HashSet<u128>,
    rev: Vec<usize>,
}

impl ColSearch<'_> {
    fn dfs(&mut self, later: u128, budget: &mut usize) -> Option<bool> {
        if later == self.full {
            return Some(true);
        }
        if self.failed.contains(&later) {
            return Some(false);
        }
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        let mut cand: Vec<(u32, usize)> = mask_bits(self.full & !later)
            .map(|v| (reach(self.adj, v, later, self.s).count_ones(), v))
            .filter(|&(r, _)| r as usize <= self.k)
            .collect();
        cand.sort_unstable();
        for (_, v) in cand {
            self.rev.push(v);
            if self.dfs(later | 1 << v, budget)? {
                return Some(true);
            }
            self.rev.pop();
        }
        self.failed.insert(later);
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(g: &Graph, s: usize) -> usize {
        let r = col_s_exact(g, s, &Limits::default()).unwrap();
        let Witness::Ordering(o) = &r.witness else { panic!() };
        assert_eq!(reach_sizes(g, o, s).into_iter().max().unwrap_or(0), r.value);
        r.value
    }

    #[test]
    fn col1_is_degeneracy_plus_one() {
        assert_eq!(col(&Graph::cycle(5), 1), 3);
        assert_eq!(col(&Graph::complete(4), 1), 4);
    }

    #[test]
    fn paths_have_col_two() {
        for s in 1..5 {
            assert_eq!(col(&Graph::path(7), s), 2);
        }
    }

    #[test]
    fn cycle_grows_with_s() {
        assert_eq!(col(&Graph::cycle(8), 1), 3);
        assert_eq!(col(&Graph::cycle(8), 6), 3);
    }

    #[test]
    fn degeneracy_values() {
        assert_eq!(degeneracy(&Graph::cycle(6)).value, 2);
        assert_eq!(degeneracy(&Graph::complete(5)).value, 4);
        assert_eq!(degeneracy(&Graph::new(2)).value, 0);
    }
}
