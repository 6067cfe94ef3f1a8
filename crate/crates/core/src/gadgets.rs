//! Deterministic generators for the named constructions.
//!
//! Vertex numbering is part of each generator's contract and is documented on
//! the function; checkers rely on it.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use thiserror::Error;

use crate::graph::Graph;
use crate::product::{ProductCertificate, RootedTreeDecomposition};
use crate::sequence::{Merge, ReductionSequence};
use crate::trigraph::Trigraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("parameter {name} = {value} is below its minimum {min}")]
    TooSmall { name: &'static str, value: usize, min: usize },
    #[error("input graph is disconnected")]
    Disconnected,
    #[error("input is not a triangulation of the sphere: {0}")]
    NotTriangulation(&'static str),
}

fn at_least(name: &'static str, value: usize, min: usize) -> Result<(), GadgetError> {
    if value < min {
        Err(GadgetError::TooSmall { name, value, min })
    } else {
        Ok(())
    }
}

/// The generators known to the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GadgetKind {
    SStar,
    SXqr,
    QTree,
    Grid,
    BinaryTree,
    Blowup2,
    RedOf,
    TOf,
    TightSurfacePi1,
    TightKtreePi1,
    StackedTriangulation,
    KTree,
}

impl GadgetKind {
    pub const ALL: [GadgetKind; 12] = [
        GadgetKind::SStar,
        GadgetKind::SXqr,
        GadgetKind::QTree,
        GadgetKind::Grid,
        GadgetKind::BinaryTree,
        GadgetKind::Blowup2,
        GadgetKind::RedOf,
        GadgetKind::TOf,
        GadgetKind::TightSurfacePi1,
        GadgetKind::TightKtreePi1,
        GadgetKind::StackedTriangulation,
        GadgetKind::KTree,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GadgetKind::SStar => "s_star",
            GadgetKind::SXqr => "s_xqr",
            GadgetKind::QTree => "q_tree",
            GadgetKind::Grid => "grid",
            GadgetKind::BinaryTree => "binary_tree",
            GadgetKind::Blowup2 => "blowup2",
            GadgetKind::RedOf => "red_of",
            GadgetKind::TOf => "t_of",
            GadgetKind::TightSurfacePi1 => "tight_surface_pi1",
            GadgetKind::TightKtreePi1 => "tight_ktree_pi1",
            GadgetKind::StackedTriangulation => "stacked_triangulation",
            GadgetKind::KTree => "ktree",
        }
    }

    pub fn parse(s: &str) -> Option<GadgetKind> {
        Self::ALL.into_iter().find(|k| k.as_str() == s)
    }
}

/// Vertex groups of the blob gadget: the centre `Q` and three arms of
/// levels `1..=x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SGroup {
    Q,
    A(usize),
    B(usize),
    C(usize),
}

impl SGroup {
    /// `(arm, level)`, `None` for the centre.
    fn arm(self) -> Option<(u8, usize)> {
        match self {
            SGroup::Q => None,
            SGroup::A(i) => Some((0, i)),
            SGroup::B(i) => Some((1, i)),
            SGroup::C(i) => Some((2, i)),
        }
    }

    pub fn level(self) -> usize {
        self.arm().map_or(0, |(_, i)| i)
    }

    pub fn capacity(self, q: usize) -> usize {
        match self {
            SGroup::Q => (2 * q).saturating_sub(1),
            _ => q,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SVertex {
    pub group: SGroup,
    pub slot: usize,
}

impl SVertex {
    pub fn new(group: SGroup, slot: usize) -> Self {
        SVertex { group, slot }
    }

    /// Sort key of the layered ordering `A_x, ..., A_1, Q, B_1, C_1, B_2, C_2, ...`.
    pub fn layout_key(self) -> (u8, Reverse<usize>, usize, u8, usize) {
        match self.group {
            SGroup::A(i) => (0, Reverse(i), 0, 0, self.slot),
            SGroup::Q => (1, Reverse(0), 0, 0, self.slot),
            SGroup::B(i) => (2, Reverse(0), i, 0, self.slot),
            SGroup::C(i) => (2, Reverse(0), i, 1, self.slot),
        }
    }
}

/// Distance between two vertices of `S*_{x,q}`, computed from the group
/// structure alone.
pub fn s_star_distance(a: SVertex, b: SVertex) -> usize {
    if a == b {
        return 0;
    }
    match (a.group.arm(), b.group.arm()) {
        (None, None) => 1,
        (None, Some((_, i))) | (Some((_, i)), None) => i,
        (Some((x, i)), Some((y, j))) if x == y => i.abs_diff(j).max(1),
        (Some((_, i)), Some((_, j))) => i + j,
    }
}

/// Adjacency in `S_{x,q,r}`.
pub fn s_adjacent(a: SVertex, b: SVertex, r: usize) -> bool {
    let bc = matches!(
        (a.group, b.group),
        (SGroup::B(_), SGroup::C(_)) | (SGroup::C(_), SGroup::B(_))
    );
    a != b && !bc && s_star_distance(a, b) <= r
}

/// A blob gadget with its group labels.
#[derive(Debug, Clone)]
pub struct SGadget {
    pub graph: Graph,
    pub vertices: Vec<SVertex>,
    pub x: usize,
    pub q: usize,
    pub r: usize,
}

impl SGadget {
    /// The layered ordering, as a list of vertex ids.
    pub fn layered_ordering(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = (0..self.vertices.len()).collect();
        ids.sort_by_key(|&v| self.vertices[v].layout_key());
        ids
    }

    pub fn degree_bound(&self) -> usize {
        (3 * self.r + 2) * self.q - 2
    }

    pub fn bandwidth_bound(&self) -> usize {
        (2 * self.r + 2) * self.q - 2
    }
}

/// `S*_{x,q}`. Ids: `Q` first (`2q-1` vertices), then `A_i, B_i, C_i` for
/// `i = 1..=x`, `q` vertices each.
pub fn gen_s_star(x: usize, q: usize) -> Result<SGadget, GadgetError> {
    at_least("x", x, 1)?;
    at_least("q", q, 2)?;
    let mut vertices: Vec<SVertex> = (0..2 * q - 1).map(|s| SVertex::new(SGroup::Q, s)).collect();
    for i in 1..=x {
        for g in [SGroup::A(i), SGroup::B(i), SGroup::C(i)] {
            vertices.extend((0..q).map(|s| SVertex::new(g, s)));
        }
    }
    let n = vertices.len();
    let mut graph = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if s_star_distance(vertices[u], vertices[v]) == 1 {
                graph.add_edge(u, v);
            }
        }
    }
    Ok(SGadget { graph, vertices, x, q, r: 1 })
}

/// `S_{x,q,r}`: the `r`-th power of `S*_{x,q}` without the edges between the
/// `B` and `C` arms. Same ids as [`gen_s_star`].
pub fn gen_s(x: usize, q: usize, r: usize) -> Result<SGadget, GadgetError> {
    at_least("r", r, 1)?;
    let star = gen_s_star(x, q)?;
    let power = star.graph.power(r);
    let mut graph = power.clone();
    let vs = &star.vertices;
    for (u, v) in power.edges() {
        if !s_adjacent(vs[u], vs[v], r) {
            graph.remove_edge(u, v);
        }
    }
    Ok(SGadget { graph, r, ..star })
}

/// `Q_n`: `n` paths on `n` vertices whose first vertices form a path.
/// Vertex `j` of path `i` has id `i*n + j`.
pub fn gen_q_tree(n: usize) -> Result<Graph, GadgetError> {
    at_least("n", n, 1)?;
    let mut g = Graph::new(n * n);
    for i in 0..n {
        for j in 1..n {
            g.add_edge(i * n + j - 1, i * n + j);
        }
        if i + 1 < n {
            g.add_edge(i * n, (i + 1) * n);
        }
    }
    Ok(g)
}

/// The `m x n` grid, vertex `(i, j)` with id `i*n + j`, together with its
/// embedding into `P_m ⊠ P_n`: `H = P_m` decomposed as the chain
/// `∅ - {0,1} - {1,2} - ... - {m-2,m-1}`, and `(i, j) ↦ (i, j)`.
pub fn gen_grid(m: usize, n: usize) -> Result<(Graph, ProductCertificate), GadgetError> {
    at_least("m", m, 1)?;
    at_least("n", n, 1)?;
    let mut g = Graph::new(m * n);
    for i in 0..m {
        for j in 0..n {
            if j + 1 < n {
                g.add_edge(i * n + j, i * n + j + 1);
            }
            if i + 1 < m {
                g.add_edge(i * n + j, (i + 1) * n + j);
            }
        }
    }
    let embed = (0..m * n).map(|v| Some((v / n, v % n))).collect();
    let cert = ProductCertificate {
        h: Graph::path(m),
        decomp: path_chain_decomposition(m),
        path_len: n,
        embed,
        apex: Vec::new(),
        r: 1,
    };
    Ok((g, cert))
}

/// Rooted chain decomposition of `P_m`: an empty root, then bags `{i, i+1}`.
pub fn path_chain_decomposition(m: usize) -> RootedTreeDecomposition {
    let mut bags = vec![Vec::new()];
    let mut parent = vec![None];
    if m == 1 {
        bags.push(vec![0]);
        parent.push(Some(0));
    }
    for i in 0..m.saturating_sub(1) {
        bags.push(vec![i, i + 1]);
        parent.push(Some(i));
    }
    RootedTreeDecomposition { parent, bags, root: 0 }
}

/// Complete binary tree of height `h` (`2^(h+1) - 1` vertices, heap order).
pub fn gen_binary_tree(h: usize) -> Graph {
    let n = (1usize << (h + 1)) - 1;
    Graph::from_edges(n, (1..n).map(|v| ((v - 1) / 2, v)))
}

/// The 2-blowup: vertex `u` becomes `2u` and `2u + 1`.
pub fn blowup2(g: &Graph) -> Graph {
    let mut b = Graph::new(2 * g.n());
    for (u, v) in g.edges() {
        for a in 0..2 {
            for c in 0..2 {
                b.add_edge(2 * u + a, 2 * v + c);
            }
        }
    }
    b
}

/// The construction `t(H)` with its canonical partial sequence.
#[derive(Debug, Clone)]
pub struct TOf {
    /// Vertex `i` of the clique of `v` has id `v*t + i`.
    pub graph: Graph,
    pub t: usize,
    /// Ends at a trigraph isomorphic to `red(H)`; the part of `v` is `clique_part[v]`.
    pub sequence: ReductionSequence,
    pub clique_part: Vec<usize>,
    /// Per trigraph of the sequence (base first): `(part, blowup vertex)` for
    /// every part that may carry red edges. Blowup ids follow [`blowup2`].
    pub blowup_maps: Vec<Vec<(usize, usize)>>,
}

/// Builds `t(H)`. `t` defaults to `max(3, 2Δ(H) + 2)`.
pub fn gen_t_of(h: &Graph, t_override: Option<usize>) -> Result<TOf, GadgetError> {
    if !h.is_connected() {
        return Err(GadgetError::Disconnected);
    }
    let n = h.n();
    let d = (0..n).map(|v| h.degree(v)).max().unwrap_or(0);
    let t = t_override.unwrap_or((2 * d + 2).max(3));
    at_least("t", t, 2)?;
    let mut g = Graph::new(n * t);
    for v in 0..n {
        for i in 0..t {
            for j in i + 1..t {
                g.add_edge(v * t + i, v * t + j);
            }
        }
    }
    for (v, w) in h.edges() {
        for i in 0..t {
            g.add_edge(v * t + i, w * t + i);
        }
    }
    let base = Trigraph::from_graph(&g);
    let mut tri = base.clone();
    let mut merges = Vec::new();
    let mut current: Vec<usize> = (0..n).map(|v| v * t).collect();
    let mut maps = vec![Vec::new()];
    for j in 1..t {
        for v in 0..n {
            let u = current[v];
            let x = v * t + j;
            let w = tri.contract_in_place(u, x).expect("canonical merge of live parts");
            merges.push(Merge { u, v: x, w });
            current[v] = w;
            // merged parts go to copy 0, the pending singletons of later
            // cliques in this round to copy 1
            let mut map: Vec<(usize, usize)> = (0..n).map(|y| (current[y], 2 * y)).collect();
            map.extend((v + 1..n).map(|y| (y * t + j, 2 * y + 1)));
            maps.push(map);
        }
    }
    Ok(TOf {
        graph: g,
        t,
        sequence: ReductionSequence {
            base,
            merges,
            witnesses: None,
        },
        clique_part: current,
        blowup_maps: maps,
    })
}

/// Stacked (Apollonian) triangulation on `n >= 3` vertices. Vertex `v >= 3`
/// is placed in face `pick(face_count)` of the current face list, which then
/// splits into three. Returns the graph and its faces.
pub fn gen_stacked_triangulation<F>(n: usize, mut pick: F) -> Result<(Graph, Vec<[usize; 3]>), GadgetError>
where
    F: FnMut(usize) -> usize,
{
    at_least("n", n, 3)?;
    let mut g = Graph::complete(3);
    // the outer face is listed too: the triangulation lives on the sphere
    let mut faces = vec![[0, 1, 2], [0, 1, 2]];
    for v in 3..n {
        g.add_vertex();
        let i = pick(faces.len()) % faces.len();
        let [a, b, c] = faces.swap_remove(i);
        for x in [a, b, c] {
            g.add_edge(v, x);
        }
        faces.extend([[a, b, v], [a, c, v], [b, c, v]]);
    }
    Ok((g, faces))
}

/// Faces of a triangulation of the sphere, read off the graph: for `n >= 4`
/// these are exactly the triangles whose removal leaves the rest connected.
pub fn triangulation_faces(g: &Graph) -> Result<Vec<[usize; 3]>, GadgetError> {
    let n = g.n();
    if n < 4 {
        return Err(GadgetError::NotTriangulation("fewer than four vertices"));
    }
    if g.m() != 3 * n - 6 {
        return Err(GadgetError::NotTriangulation("edge count is not 3n - 6"));
    }
    let mut faces = Vec::new();
    for (a, b) in g.edges() {
        for c in g.neighbours(a).iter().filter(|&c| c > b && g.has_edge(b, c)) {
            let rest: Vec<usize> = (0..n).filter(|&v| v != a && v != b && v != c).collect();
            if g.induced(&rest).is_connected() {
                faces.push([a, b, c]);
            }
        }
    }
    if faces.len() != 2 * n - 4 {
        return Err(GadgetError::NotTriangulation("face count is not 2n - 4"));
    }
    Ok(faces)
}

/// A bipartite instance `G` with parts `X` and `Y`.
#[derive(Debug, Clone)]
pub struct Bipartite {
    pub graph: Graph,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

/// Tight instance for the first-neighbourhood surface bound: `X = V(G0)`, and
/// `Y` holds one vertex per face, one per edge, one pendant per vertex and
/// one isolated vertex, in that order.
pub fn gen_tight_surface_pi1(g0: &Graph) -> Result<Bipartite, GadgetError> {
    let faces = triangulation_faces(g0)?;
    let n = g0.n();
    let mut nbhds: Vec<Vec<usize>> = faces.iter().map(|f| f.to_vec()).collect();
    nbhds.extend(g0.edges().map(|(u, v)| vec![u, v]));
    nbhds.extend((0..n).map(|v| vec![v]));
    nbhds.push(Vec::new());
    Ok(bipartite_from(n, &nbhds))
}

fn bipartite_from(nx: usize, nbhds: &[Vec<usize>]) -> Bipartite {
    let mut graph = Graph::new(nx + nbhds.len());
    for (i, nb) in nbhds.iter().enumerate() {
        for &x in nb {
            graph.add_edge(nx + i, x);
        }
    }
    Bipartite {
        graph,
        x: (0..nx).collect(),
        y: (nx..nx + nbhds.len()).collect(),
    }
}

/// A `k`-tree on `n >= k` vertices: `K_{min(n,k+1)}`, then vertex `v` joins
/// the `k`-clique `pick(count)` of the cliques created so far.
pub fn gen_ktree<F>(k: usize, n: usize, mut pick: F) -> Result<Graph, GadgetError>
where
    F: FnMut(usize) -> usize,
{
    at_least("k", k, 1)?;
    at_least("n", n, k)?;
    let start = n.min(k + 1);
    let mut g = Graph::complete(start);
    let mut kcliques: Vec<Vec<usize>> = Vec::new();
    if n > k {
        for skip in 0..=k {
            kcliques.push((0..=k).filter(|&v| v != skip).collect());
        }
    }
    for v in start..n {
        g.add_vertex();
        let c = kcliques[pick(kcliques.len()) % kcliques.len()].clone();
        for &x in &c {
            g.add_edge(v, x);
        }
        for skip in 0..k {
            let mut nc: Vec<usize> = c.iter().copied().filter(|&x| x != c[skip]).collect();
            nc.push(v);
            kcliques.push(nc);
        }
    }
    Ok(g)
}

/// Tight instance for the treewidth bound: `X` is a `k`-tree `H` on `n`
/// vertices (its edges are not kept) and `Y` has one vertex per clique of `H`
/// with at most `k` vertices, the empty clique included.
pub fn gen_tight_ktree_pi1(k: usize, n: usize) -> Result<Bipartite, GadgetError> {
    let h = gen_ktree(k, n, |len| len - 1)?;
    let mut cliques: BTreeSet<Vec<usize>> = BTreeSet::new();
    cliques.insert(Vec::new());
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for c in &frontier {
            let lo = c.last().map_or(0, |&x| x + 1);
            for v in lo..n {
                if c.iter().all(|&x| h.has_edge(x, v)) {
                    let mut d = c.clone();
                    d.push(v);
                    if cliques.insert(d.clone()) {
                        next.push(d);
                    }
                }
            }
        }
        frontier = next;
    }
    let nbhds: Vec<Vec<usize>> = cliques.into_iter().collect();
    Ok(bipartite_from(n, &nbhds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{max_degree, ordering_bandwidth};

    #[test]
    fn s_star_size() {
        for x in 1..4 {
            for q in 2..4 {
                let s = gen_s_star(x, q).unwrap();
                assert_eq!(s.graph.n(), 2 * q - 1 + 3 * x * q);
            }
        }
        assert!(gen_s_star(1, 1).is_err());
    }

    #[test]
    fn s_bounds_small() {
        let s = gen_s(3, 2, 1).unwrap();
        assert!(max_degree(&s.graph) <= s.degree_bound());
        let o = s.layered_ordering();
        assert!(ordering_bandwidth(&s.graph, &o).unwrap() <= 6);
    }

    #[test]
    fn grid_small_is_c4() {
        let (g, c) = gen_grid(2, 2).unwrap();
        assert_eq!(g.m(), 4);
        assert!((0..4).all(|v| g.degree(v) == 2));
        assert_eq!(c.decomp.bags, vec![vec![], vec![0, 1]]);
    }

    #[test]
    fn q_tree_shape() {
        assert_eq!(gen_q_tree(1).unwrap().n(), 1);
        let q = gen_q_tree(4).unwrap();
        assert_eq!(q.n(), 16);
        assert_eq!(q.m(), 15);
        assert_eq!(max_degree(&q), 3);
    }

    #[test]
    fn binary_tree_size() {
        assert_eq!(gen_binary_tree(3).n(), 15);
    }

    #[test]
    fn blowup_of_triangle_is_octahedron() {
        let b = blowup2(&Graph::complete(3));
        let k222 = Graph::from_edges(6, [(0, 1), (2, 3), (4, 5)]).complement();
        assert_eq!(b.edges().collect::<Vec<_>>(), k222.edges().collect::<Vec<_>>());
        assert_eq!(blowup2(&Graph::new(1)).m(), 0);
    }

    #[test]
    fn t_of_k2_is_prism() {
        let t = gen_t_of(&Graph::path(2), Some(3)).unwrap();
        assert_eq!(t.graph.n(), 6);
        assert_eq!(t.graph.m(), 9);
        assert!((0..6).all(|v| t.graph.degree(v) == 3));
        let end = t.sequence.validate().unwrap();
        assert_eq!(end.n(), 2);
        assert!(end.has_red());
    }

    #[test]
    fn stacked_faces_agree() {
        let (g, mut faces) = gen_stacked_triangulation(8, |len| len / 2).unwrap();
        let mut found = triangulation_faces(&g).unwrap();
        for f in faces.iter_mut() {
            f.sort_unstable();
        }
        faces.sort_unstable();
        found.sort_unstable();
        assert_eq!(faces, found);
    }

    #[test]
    fn tight_k4() {
        let b = gen_tight_surface_pi1(&Graph::complete(4)).unwrap();
        assert_eq!(b.y.len(), 15);
    }

    #[test]
    fn tight_ktree_counts() {
        assert_eq!(gen_tight_ktree_pi1(1, 3).unwrap().y.len(), 4);
        assert_eq!(gen_tight_ktree_pi1(2, 5).unwrap().y.len(), 13);
    }

    #[test]
    fn ktree_clique_total() {
        use crate::params::clique_counts;
        for (k, n) in [(1, 5), (2, 6), (3, 7), (2, 2)] {
            let g = gen_ktree(k, n, |len| len / 3).unwrap();
            let total: u64 = clique_counts(&g, None).iter().sum();
            assert_eq!(total, (1u64 << k) * (n - k + 1) as u64);
        }
    }
}
