//! Planarity, via the left-right test.

use rustworkx_core::petgraph::graph::UnGraph;
use twinreduce_core::Graph;

pub fn is_planar(g: &Graph) -> bool {
    let mut h = UnGraph::<(), ()>::with_capacity(g.n(), g.m());
    let nodes: Vec<_> = (0..g.n()).map(|_| h.add_node(())).collect();
    for (u, v) in g.edges() {
        h.add_edge(nodes[u], nodes[v], ());
    }
    rustworkx_core::planar::is_planar(&h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kuratowski() {
        assert!(is_planar(&Graph::complete(4)));
        assert!(!is_planar(&Graph::complete(5)));
        let k33 = Graph::from_edges(6, (0..3).flat_map(|u| (3..6).map(move |v| (u, v))));
        assert!(!is_planar(&k33));
        assert!(is_planar(&twinreduce_core::gadgets::gen_grid(5, 5).unwrap().0));
    }
}
