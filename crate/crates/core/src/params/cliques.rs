//! Clique counting along a degeneracy ordering.

use alloc::vec;
use alloc::vec::Vec;

use super::colouring::degeneracy;
use super::Witness;
use crate::bitset::VertexSet;
use crate::graph::Graph;

/// `C(G,k)` for `k = 0..=kmax`; with `kmax = None` the vector runs up to the
/// clique number.
pub fn clique_counts(g: &Graph, kmax: Option<usize>) -> Vec<u64> {
    let mut counts = vec![0u64; kmax.map_or(2, |k| k + 1)];
    counts[0] = 1;
    let Witness::Peeling(order) = degeneracy(g).witness else {
        unreachable!()
    };
    let mut rank = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    for &v in &order {
        let mut cand = VertexSet::with_capacity(g.n());
        for w in g.neighbours(v).iter().filter(|&w| rank[w] > rank[v]) {
            cand.insert(w);
        }
        extend(g, &cand, 1, kmax, &mut counts);
    }
    if kmax.is_none() {
        while counts.len() > 1 && counts[counts.len() - 1] == 0 {
            counts.pop();
        }
    }
    counts
}

fn extend(g: &Graph, cand: &VertexSet, size: usize, kmax: Option<usize>, counts: &mut Vec<u64>) {
    if counts.len() <= size {
        counts.resize(size + 1, 0);
    }
    counts[size] += 1;
    if kmax.is_some_and(|k| size >= k) {
        return;
    }
    for w in cand.iter() {
        let mut next = cand.clone();
        next.intersect_with(g.neighbours(w));
        // keep only later candidates so each clique is counted once
        for x in cand.iter().take_while(|&x| x <= w) {
            next.remove(x);
        }
        extend(g, &next, size + 1, kmax, counts);
    }
}

/// Total number of cliques with at most `k` vertices, the empty clique included.
pub fn cliques_up_to(g: &Graph, k: usize) -> u64 {
    clique_counts(g, Some(k)).iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        assert_eq!(clique_counts(&Graph::complete(3), None), vec![1, 3, 3, 1]);
        assert_eq!(clique_counts(&Graph::complete(5), Some(2)), vec![1, 5, 10]);
    }

    #[test]
    fn low_order_counts() {
        let g = Graph::cycle(6);
        let c = clique_counts(&g, Some(3));
        assert_eq!(c, vec![1, 6, 6, 0]);
        assert_eq!(clique_counts(&Graph::new(0), None), vec![1]);
    }

    #[test]
    fn cocktail_party() {
        // K_{2,2,2}: complement of a perfect matching on six vertices
        let g = Graph::from_edges(6, [(0, 1), (2, 3), (4, 5)]).complement();
        assert_eq!(clique_counts(&g, None).iter().sum::<u64>(), 27);
    }
}
