//! Bandwidth: exact branch and bound plus a level-ordering heuristic.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashSet;

use super::{Limits, ParamError, ParamResult, Witness};
use crate::graph::Graph;

/// Bandwidth of `order` on `g`, or `None` if `order` is not a permutation of `0..n`.
pub fn ordering_bandwidth(g: &Graph, order: &[usize]) -> Option<usize> {
    let n = g.n();
    if order.len() != n {
        return None;
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return None;
        }
        pos[v] = i;
    }
    Some(g.edges().map(|(u, v)| pos[u].abs_diff(pos[v])).max().unwrap_or(0))
}

/// Ball-growth lower bound: a radius-`d` ball around any vertex occupies at
/// most `2dk+1` consecutive positions of a width-`k` layout.
pub fn bandwidth_lower_bound(g: &Graph) -> usize {
    let mut lb = usize::from(g.m() > 0);
    for v in 0..g.n() {
        let dist = g.distances(v);
        let ecc = dist.iter().flatten().copied().max().unwrap_or(0);
        let mut count = vec![0usize; ecc + 1];
        for d in dist.iter().flatten() {
            count[*d] += 1;
        }
        let mut ball = 1;
        for (d, c) in count.iter().enumerate().skip(1) {
            ball += c;
            lb = lb.max((ball - 1).div_ceil(2 * d));
        }
    }
    lb
}

fn cuthill_mckee(g: &Graph, comp: &[usize], start: usize) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::with_capacity(comp.len());
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(u) = queue.pop_front() {
        out.push(u);
        let mut nb: Vec<usize> = g.neighbours(u).iter().filter(|&w| !seen[w]).collect();
        nb.sort_by_key(|&w| (g.degree(w), w));
        for w in nb {
            seen[w] = true;
            queue.push_back(w);
        }
    }
    out
}

fn component_heuristic(g: &Graph, comp: &[usize]) -> (usize, Vec<usize>) {
    let sub = g.induced(comp);
    let mut best: Option<(usize, Vec<usize>)> = None;
    for s in 0..sub.n() {
        let ord = cuthill_mckee(&sub, &(0..sub.n()).collect::<Vec<_>>(), s);
        let w = ordering_bandwidth(&sub, &ord).unwrap_or(usize::MAX);
        if best.as_ref().is_none_or(|(b, _)| w < *b) {
            best = Some((w, ord));
        }
    }
    let (w, ord) = best.unwrap_or((0, Vec::new()));
    (w, ord.into_iter().map(|i| comp[i]).collect())
}

/// Upper bound from Cuthill-McKee level orderings, improved by `seed` if it is
/// a valid ordering with smaller width.
pub fn bandwidth_heuristic(g: &Graph, seed: Option<&[usize]>) -> ParamResult {
    let mut order = Vec::with_capacity(g.n());
    for comp in g.components() {
        order.extend(component_heuristic(g, &comp).1);
    }
    let mut value = ordering_bandwidth(g, &order).unwrap_or(0);
    if let Some(s) = seed {
        if let Some(w) = ordering_bandwidth(g, s) {
            if w < value {
                value = w;
                order = s.to_vec();
            }
        }
    }
    ParamResult {
        value,
        witness: Witness::Ordering(order),
        exact: false,
    }
}

/// Exact bandwidth with a witness ordering.
///
/// With `cap = Some(c)` the search stops once every layout of width `<= c`
/// has been ruled out and reports [`ParamError::ExceedsCap`].
pub fn bandwidth_exact(
    g: &Graph,
    cap: Option<usize>,
    limits: &Limits,
) -> Result<ParamResult, ParamError> {
    if g.n() > limits.bandwidth_max_n {
        return Err(ParamError::TooLarge {
            what: "exact bandwidth",
            n: g.n(),
            max: limits.bandwidth_max_n,
        });
    }
    let mut order = Vec::with_capacity(g.n());
    let mut value = 0;
    let mut budget = limits.state_budget;
    for comp in g.components() {
        if comp.len() == 1 {
            order.push(comp[0]);
            continue;
        }
        let sub = g.induced(&comp);
        let (w, ord) = component_exact(&sub, cap, &mut budget, limits.state_budget)?;
        value = value.max(w);
        order.extend(ord.into_iter().map(|i| comp[i]));
    }
    Ok(ParamResult {
        value,
        witness: Witness::Ordering(order),
        exact: true,
    })
}

fn component_exact(
    g: &Graph,
    cap: Option<usize>,
    budget: &mut usize,
    total: usize,
) -> Result<(usize, Vec<usize>), ParamError> {
    let all: Vec<usize> = (0..g.n()).collect();
    let (ub, ub_order) = component_heuristic(g, &all);
    let lb = bandwidth_lower_bound(g);
    let limit = cap.map_or(ub, |c| c.min(ub));
    for k in lb..=limit {
        if k == ub {
            return Ok((ub, ub_order));
        }
        let mut s = Search::new(g, k, budget);
        if s.dfs().map_err(|_| ParamError::Budget { budget: total })? {
            return Ok((k, s.order));
        }
    }
    Err(ParamError::ExceedsCap {
        cap: cap.unwrap_or(0),
    })
}

struct Search<'a> {
    n: usize,
    k: usize,
    adj: Vec<u128>,
    order: Vec<usize>,
    placed: u128,
    failed: HashSet<(u128, Vec<u8>)>,
    budget: &'a mut usize,
}

impl<'a> Search<'a> {
    fn new(g: &Graph, k: usize, budget: &'a mut usize) -> Self {
        Search {
            n: g.n(),
            k,
            adj: g.masks(),
            order: Vec::with_capacity(g.n()),
            placed: 0,
            failed: HashSet::new(),
            budget,
        }
    }

    /// Deadlines of unplaced vertices, or `None` when they cannot all be met.
    fn deadlines(&self) -> Option<Vec<usize>> {
        let i = self.order.len();
        let mut dl = vec![usize::MAX; self.n];
        for p in i.saturating_sub(self.k)..i {
            let u = self.order[p];
            let mut open = self.adj[u] & !self.placed;
            while open != 0 {
                let v = open.trailing_zeros() as usize;
                open &= open - 1;
                dl[v] = dl[v].min(p + self.k);
            }
        }
        // A vertex placed before the window with an unplaced neighbour is already overdue.
        if i > self.k {
            for p in 0..i - self.k {
                if self.adj[self.order[p]] & !self.placed != 0 {
                    return None;
                }
            }
        }
        let mut sorted: Vec<usize> = (0..self.n)
            .filter(|&v| self.placed >> v & 1 == 0 && dl[v] != usize::MAX)
            .map(|v| dl[v])
            .collect();
        sorted.sort_unstable();
        for (j, d) in sorted.into_iter().enumerate() {
            if d < i + j {
                return None;
            }
        }
        Some(dl)
    }

    fn key(&self) -> (u128, Vec<u8>) {
        let i = self.order.len();
        let window = self.order[i.saturating_sub(self.k)..]
            .iter()
            .map(|&u| {
                if self.adj[u] & !self.placed != 0 {
                    u as u8
                } else {
                    u8::MAX
                }
            })
            .collect();
        (self.placed, window)
    }

    fn dfs(&mut self) -> Result<bool, ParamError> {
        let i = self.order.len();
        if i == self.n {
            return Ok(true);
        }
        let Some(dl) = self.deadlines() else {
            return Ok(false);
        };
        let key = self.key();
        if self.failed.contains(&key) {
            return Ok(false);
        }
        if *self.budget == 0 {
            return Err(ParamError::Budget { budget: 0 });
        }
        *self.budget -= 1;

        let mut cand: Vec<usize> = (0..self.n).filter(|&v| self.placed >> v & 1 == 0).collect();
        if let Some(&forced) = cand.iter().find(|&&v| dl[v] == i) {
            cand = vec![forced];
        } else {
            cand.sort_by_key(|&v| (dl[v], v));
        }
        for v in cand {
            self.order.push(v);
            self.placed |= 1 << v;
            if self.dfs()? {
                return Ok(true);
            }
            self.placed &= !(1 << v);
            self.order.pop();
        }
        self.failed.insert(key);
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(g: &Graph) -> usize {
        let r = bandwidth_exact(g, None, &Limits::default()).unwrap();
        let Witness::Ordering(o) = &r.witness else { panic!() };
        assert_eq!(ordering_bandwidth(g, o), Some(r.value));
        r.value
    }

    #[test]
    fn small_families() {
        assert_eq!(exact(&Graph::path(7)), 1);
        assert_eq!(exact(&Graph::complete(5)), 4);
        assert_eq!(exact(&Graph::cycle(4)), 2);
        assert_eq!(exact(&Graph::cycle(9)), 2);
        assert_eq!(exact(&Graph::star(6)), 3);
        assert_eq!(exact(&Graph::new(3)), 0);
    }

    #[test]
    fn cap_is_reported() {
        let r = bandwidth_exact(&Graph::complete(5), Some(2), &Limits::default());
        assert_eq!(r, Err(ParamError::ExceedsCap { cap: 2 }));
    }

    #[test]
    fn too_large() {
        let r = bandwidth_exact(&Graph::path(30), None, &Limits::default());
        assert!(matches!(r, Err(ParamError::TooLarge { .. })));
    }

    #[test]
    fn heuristic_uses_seed() {
        let g = Graph::path(5);
        let r = bandwidth_heuristic(&g, Some(&[0, 1, 2, 3, 4]));
        assert_eq!(r.value, 1);
        assert_eq!(bandwidth_heuristic(&Graph::new(4), None).value, 0);
    }

    #[test]
    fn brute_force_agrees_on_small_graphs() {
        // every graph on 5 vertices, compared with the minimum over all 120 orderings
        let pairs: Vec<(usize, usize)> =
            (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        let mut perms = Vec::new();
        permute(&mut (0..5).collect(), 0, &mut perms);
        for mask in 0u32..1 << pairs.len() {
            let g = Graph::from_edges(5, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p));
            let brute = perms.iter().map(|p| ordering_bandwidth(&g, p).unwrap()).min().unwrap();
            assert_eq!(exact(&g), brute, "mask {mask}");
        }
    }

    fn permute(v: &mut Vec<usize>, i: usize, out: &mut Vec<Vec<usize>>) {
        if i == v.len() {
            out.push(v.clone());
            return;
        }
        for j in i..v.len() {
            v.swap(i, j);
            permute(v, i + 1, out);
            v.swap(i, j);
        }
    }
}
