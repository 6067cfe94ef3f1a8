//! Distance profiles on an anchor set, their diversity, and checks of the
//! closed-form diversity bounds.
//!
//! Genus `γ` is trusted input throughout: nothing here recognises surfaces.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use hashbrown::HashMap;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::params::{clique_counts, col_s_exact, treewidth_exact, Limits, ParamError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiversityError {
    #[error("vertex {v} is in the anchor set")]
    InvalidAnchor { v: usize },
    #[error("vertex {v} is not in the graph")]
    OutOfRange { v: usize },
    #[error("anchor vertex {v} is listed twice")]
    DuplicateAnchor { v: usize },
    #[error("{bound} needs at least {min} anchor vertices, got {got}")]
    AnchorTooSmall { bound: &'static str, min: usize, got: usize },
    #[error("{bound} is a bound for r = {expected}, not r = {got}")]
    WrongRadius { bound: &'static str, expected: usize, got: usize },
    #[error("edge {u}-{v} lies inside one side of the bipartition")]
    NotBipartite { u: usize, v: usize },
    #[error("t = {t} is below 3")]
    SmallT { t: usize },
    #[error("class of {u} and {v} is not homogeneous for r = 2")]
    Inhomogeneous { u: usize, v: usize },
    #[error(transparent)]
    Param(#[from] ParamError),
}

/// Truncated distances from one vertex to each anchor, in anchor order;
/// `None` is ∞ (further than `r`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DistanceProfile {
    pub anchor: Vec<usize>,
    pub entries: Vec<Option<usize>>,
    pub r: usize,
}

impl DistanceProfile {
    /// Fixed-width digits in anchor order; `∞` is written as dashes.
    pub fn key(&self) -> String {
        let width = digits(self.r);
        let mut s = String::new();
        for e in &self.entries {
            match e {
                Some(d) => {
                    let _ = write!(s, "{d:0width$}");
                }
                None => s.extend(core::iter::repeat_n('-', width)),
            }
        }
        s
    }
}

fn digits(mut x: usize) -> usize {
    let mut d = 1;
    while x >= 10 {
        x /= 10;
        d += 1;
    }
    d
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiversityReport {
    pub anchor: Vec<usize>,
    pub r: usize,
    /// Classes in order of their smallest member.
    pub classes: Vec<(DistanceProfile, Vec<usize>)>,
    pub count: usize,
}

fn check_anchor(g: &Graph, a: &[usize]) -> Result<VertexSet, DiversityError> {
    let mut set = VertexSet::with_capacity(g.n());
    for &v in a {
        if v >= g.n() {
            return Err(DiversityError::OutOfRange { v });
        }
        if !set.insert(v) {
            return Err(DiversityError::DuplicateAnchor { v });
        }
    }
    Ok(set)
}

/// Profile of `v` on `a`, from one truncated BFS.
pub fn profile(g: &Graph, v: usize, a: &[usize], r: usize) -> Result<DistanceProfile, DiversityError> {
    let set = check_anchor(g, a)?;
    if v >= g.n() {
        return Err(DiversityError::OutOfRange { v });
    }
    if set.contains(v) {
        return Err(DiversityError::InvalidAnchor { v });
    }
    Ok(profile_unchecked(g, v, a, r))
}

fn profile_unchecked(g: &Graph, v: usize, a: &[usize], r: usize) -> DistanceProfile {
    let d = g.distances_within(v, r);
    DistanceProfile { anchor: a.to_vec(), entries: a.iter().map(|&w| d[w]).collect(), r }
}

/// Groups `V(G) \ A` by distance-`r` profile on `a`.
pub fn diversity(g: &Graph, a: &[usize], r: usize) -> Result<DiversityReport, DiversityError> {
    let set = check_anchor(g, a)?;
    Ok(group(g, a, r, (0..g.n()).filter(|&v| !set.contains(v))))
}

fn group(g: &Graph, a: &[usize], r: usize, vs: impl Iterator<Item = usize>) -> DiversityReport {
    // distances from the anchors are cheaper when |A| < n
    let from: Vec<Vec<Option<usize>>> = a.iter().map(|&w| g.distances_within(w, r)).collect();
    let mut index: HashMap<Vec<Option<usize>>, usize> = HashMap::new();
    let mut classes: Vec<(DistanceProfile, Vec<usize>)> = Vec::new();
    for v in vs {
        let entries: Vec<Option<usize>> = from.iter().map(|d| d[v]).collect();
        match index.get(&entries) {
            Some(&i) => classes[i].1.push(v),
            None => {
                index.insert(entries.clone(), classes.len());
                classes.push((DistanceProfile { anchor: a.to_vec(), entries, r }, vec![v]));
            }
        }
    }
    DiversityReport { anchor: a.to_vec(), r, count: classes.len(), classes }
}

/// `π¹` computed as the number of distinct `N(u) ∩ A`.
pub fn neighbourhood_traces(g: &Graph, a: &[usize]) -> Result<usize, DiversityError> {
    let set = check_anchor(g, a)?;
    let mut seen = hashbrown::HashSet::new();
    for v in (0..g.n()).filter(|&v| !set.contains(v)) {
        let mut t = g.neighbours(v).clone();
        t.intersect_with(&set);
        seen.insert(t.to_vec());
    }
    Ok(seen.len())
}

/// `|{N²(v) ∩ X : v ∉ N[X]}|`: traces at distance exactly two from outside
/// the closed neighbourhood of `X`.
pub fn second_traces(g: &Graph, x: &[usize]) -> Result<usize, DiversityError> {
    let set = check_anchor(g, x)?;
    let closed = closed_neighbourhood(g, &set);
    let mut seen = hashbrown::HashSet::new();
    for v in (0..g.n()).filter(|&v| !closed.contains(v)) {
        seen.insert(trace2(g, v, &set));
    }
    Ok(seen.len())
}

fn closed_neighbourhood(g: &Graph, set: &VertexSet) -> VertexSet {
    let mut closed = set.clone();
    for v in set.iter() {
        closed.union_with(g.neighbours(v));
    }
    closed
}

/// `N²(v) ∩ X` for `v` at distance at least two from `X`.
fn trace2(g: &Graph, v: usize, set: &VertexSet) -> Vec<usize> {
    let mut t = VertexSet::with_capacity(g.n());
    for w in g.neighbours(v).iter() {
        t.union_with(g.neighbours(w));
    }
    t.intersect_with(set);
    t.to_vec()
}

/// Closed-form diversity bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// `π¹ ≤ max(4, 6|X| + 5γ - 9)` on Euler genus `γ`, `|X| ≥ 2`.
    Surface { gamma: usize },
    /// `π¹` on treewidth `k`; `None` computes `k` exactly.
    Treewidth { k: Option<usize> },
    /// `π¹ ≤ min(2^(c-1)(|A|-c+2), 2^|A|)` with `c ≥ col_5`; `None` computes `col_5`.
    Colouring { c: Option<usize> },
    /// `π¹ ≤ min(2^d(|A|-d+1), 2^|A|)` when 1-shallow minors are `d`-degenerate.
    Degenerate { d: usize },
    /// Second traces from outside `N[X]` on Euler genus `γ`, `|X| ≥ 2`.
    SurfaceSecond { gamma: usize },
    /// `π²` on Euler genus `γ`: the product of the two surface forms.
    SurfaceSquare { gamma: usize },
    /// `π² ≤ π¹ · f(|X|)` for the supplied value `f(|X|)`.
    Square { f_at_x: u128 },
    /// `π^r ≤ (r+1)^|A|`.
    Trivial,
}

impl Bound {
    pub fn name(self) -> &'static str {
        match self {
            Bound::Surface { .. } => "surface",
            Bound::Treewidth { .. } => "treewidth",
            Bound::Colouring { .. } => "col",
            Bound::Degenerate { .. } => "degen",
            Bound::SurfaceSecond { .. } => "surface-second",
            Bound::SurfaceSquare { .. } => "surface-square",
            Bound::Square { .. } => "square",
            Bound::Trivial => "trivial",
        }
    }

    /// Radius the bound is about; `None` for any.
    pub fn radius(self) -> Option<usize> {
        match self {
            Bound::Trivial => None,
            Bound::SurfaceSecond { .. } | Bound::SurfaceSquare { .. } | Bound::Square { .. } => Some(2),
            _ => Some(1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundCheck {
    pub bound: Bound,
    pub lhs: u128,
    pub rhs: u128,
    pub holds: bool,
    /// The treewidth or `col_5` computed for the check, if any.
    pub computed: Option<usize>,
}

fn pow2(e: usize) -> u128 {
    if e >= 128 {
        u128::MAX
    } else {
        1u128 << e
    }
}

/// `max{4, 6|X| + 5γ - 9}`. The floor matters only at `|X| = 2, γ = 0`,
/// where the four traces `∅, {a}, {b}, {a, b}` are all realisable.
pub fn surface_pi1_bound(x: usize, gamma: usize) -> u128 {
    (6 * x as u128 + 5 * gamma as u128).saturating_sub(9).max(4)
}

pub fn surface_second_bound(x: usize, gamma: usize) -> u128 {
    let (x, g) = (x as u128, gamma as u128);
    ((60 * g * g + 125 * g + 68) * x).saturating_sub(120 * g * g + 250 * g + 132)
}

pub fn surface_square_bound(x: usize, gamma: usize) -> u128 {
    surface_pi1_bound(x, gamma).saturating_mul(surface_second_bound(x, gamma))
}

/// Treewidth form; `k = 0` is treated as `k = 1`.
pub fn treewidth_bound(a: usize, k: usize) -> u128 {
    if k <= 1 {
        2 * a as u128
    } else if a <= k {
        pow2(a)
    } else {
        (pow2(k) - 1).saturating_mul((a - k) as u128).saturating_add(pow2(k))
    }
}

/// `min(2^d(|A|-d+1), 2^|A|)`; the first form only applies once `|A| ≥ d`.
pub fn degenerate_bound(a: usize, d: usize) -> u128 {
    if a < d {
        return pow2(a);
    }
    pow2(d).saturating_mul((a - d + 1) as u128).min(pow2(a))
}

/// `min(2^(c-1)(|A|-c+2), 2^|A|)`, i.e. the degenerate form at `d = c - 1`.
pub fn colouring_bound(a: usize, c: usize) -> u128 {
    degenerate_bound(a, c.saturating_sub(1))
}

pub fn trivial_bound(a: usize, r: usize) -> u128 {
    let mut out: u128 = 1;
    for _ in 0..a {
        out = out.saturating_mul(r as u128 + 1);
    }
    out
}

/// Evaluates one bound on `(G, A)`. The left side is `π^r(A)` except for
/// [`Bound::SurfaceSecond`], whose left side is [`second_traces`].
pub fn check_bound(g: &Graph, a: &[usize], r: usize, bound: Bound) -> Result<BoundCheck, DiversityError> {
    check_anchor(g, a)?;
    if let Some(expected) = bound.radius() {
        if expected != r {
            return Err(DiversityError::WrongRadius { bound: bound.name(), expected, got: r });
        }
    }
    let n = a.len();
    let needs_two = matches!(
        bound,
        Bound::Surface { .. } | Bound::SurfaceSecond { .. } | Bound::SurfaceSquare { .. } | Bound::Treewidth { .. }
    );
    let min = if matches!(bound, Bound::Treewidth { .. }) { 1 } else { 2 };
    if needs_two && n < min {
        return Err(DiversityError::AnchorTooSmall { bound: bound.name(), min, got: n });
    }
    let mut computed = None;
    let rhs = match bound {
        Bound::Surface { gamma } => surface_pi1_bound(n, gamma),
        Bound::Treewidth { k } => {
            let k = match k {
                Some(k) => k,
                None => {
                    let k = treewidth_exact(g, &Limits::default())?.value;
                    computed = Some(k);
                    k
                }
            };
            treewidth_bound(n, k)
        }
        Bound::Colouring { c } => {
            let c = match c {
                Some(c) => c,
                None => {
                    let c = col_s_exact(g, 5, &Limits::default())?.value;
                    computed = Some(c);
                    c
                }
            };
            colouring_bound(n, c)
        }
        Bound::Degenerate { d } => degenerate_bound(n, d),
        Bound::SurfaceSecond { gamma } => surface_second_bound(n, gamma),
        Bound::SurfaceSquare { gamma } => surface_square_bound(n, gamma),
        Bound::Square { f_at_x } => (neighbourhood_traces(g, a)? as u128).saturating_mul(f_at_x),
        Bound::Trivial => trivial_bound(n, r),
    };
    let lhs = match bound {
        Bound::SurfaceSecond { .. } => second_traces(g, a)?,
        _ => diversity(g, a, r)?.count,
    } as u128;
    Ok(BoundCheck { bound, lhs, rhs, holds: lhs <= rhs, computed })
}

/// The 1-shallow minor built from a bipartite graph, with the count it bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShallowMinorWitness {
    /// Vertex `i` of `h` is `x[i]`.
    pub h: Graph,
    pub x: Vec<usize>,
    /// Branch set of each vertex of `h`: `x[i]` and the vertices contracted into it.
    pub branch_sets: Vec<Vec<usize>>,
    /// One representative per distinct neighbourhood, by degree class.
    pub y0: Vec<usize>,
    pub y1: Vec<usize>,
    /// Vertices of `A` with their chosen pair.
    pub a: Vec<(usize, [usize; 2])>,
    pub b: Vec<usize>,
    pub lhs: u128,
    pub rhs: u128,
    pub holds: bool,
}

/// Constructs `H` for `G` bipartite on `(X, V \ X)`. `A` is built greedily in
/// id order, pairs taken lexicographically.
pub fn shallow_minor_witness(g: &Graph, x: &[usize], t: usize) -> Result<ShallowMinorWitness, DiversityError> {
    if t < 3 {
        return Err(DiversityError::SmallT { t });
    }
    let xs = check_anchor(g, x)?;
    for (u, v) in g.edges() {
        if xs.contains(u) == xs.contains(v) {
            return Err(DiversityError::NotBipartite { u, v });
        }
    }
    let pos: HashMap<usize, usize> = x.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut seen = hashbrown::HashSet::new();
    let (mut y0, mut y1, mut rest) = (Vec::new(), Vec::new(), Vec::new());
    for v in (0..g.n()).filter(|&v| !xs.contains(v)) {
        let mut nb: Vec<usize> = g.neighbours(v).iter().map(|w| pos[&w]).collect();
        nb.sort_unstable();
        if !seen.insert(nb.clone()) {
            continue;
        }
        match nb.len() {
            0 => y0.push(v),
            1 => y1.push(v),
            _ => rest.push((v, nb)),
        }
    }
    let lhs = seen.len() as u128;
    let mut h = Graph::new(x.len());
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut branch_sets: Vec<Vec<usize>> = x.iter().map(|&v| vec![v]).collect();
    // degree-two vertices first, so Y2 ⊆ A
    rest.sort_by_key(|(v, nb)| (nb.len() != 2, *v));
    let mut deferred = Vec::new();
    for (v, nb) in rest {
        let pair = (0..nb.len())
            .flat_map(|i| (i + 1..nb.len()).map(move |j| (i, j)))
            .map(|(i, j)| [nb[i], nb[j]])
            .find(|p| !h.has_edge(p[0], p[1]));
        match pair {
            Some(p) => {
                h.add_edge(p[0], p[1]);
                branch_sets[p[0]].push(v);
                a.push((v, [x[p[0]], x[p[1]]]));
            }
            None => deferred.push((v, nb)),
        }
    }
    for (v, nb) in deferred {
        debug_assert!(h.is_clique(&nb));
        b.push(v);
    }
    b.sort_unstable();
    a.sort_unstable();
    let kmax = if t >= 4 { t - 2 } else { 2 };
    let rhs = clique_counts(&h, Some(kmax)).iter().map(|&c| c as u128).sum();
    Ok(ShallowMinorWitness { h, x: x.to_vec(), branch_sets, y0, y1, a, b, lhs, rhs, holds: lhs <= rhs })
}

/// The two-level grouping of `V \ X`: by `N(v) ∩ X`, then by second traces in
/// the graph with the edges between that class and `X` removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecondProfilePartition {
    /// Number of first-level classes (`π¹(X)`).
    pub s: usize,
    /// Largest number of subclasses within one first-level class.
    pub t: usize,
    /// `(N(v) ∩ X, second trace, members)` in order of smallest member.
    pub classes: Vec<(Vec<usize>, Vec<usize>, Vec<usize>)>,
    /// Classes restricted to `V \ N[X]`, labelled by their `r = 2` profile.
    pub z_report: DiversityReport,
    /// `π²(X)`, computed directly.
    pub pi2: usize,
}

/// Builds the partition and checks that every class has one `r = 2` profile,
/// so that `π² ≤ s · t`.
pub fn second_profile_partition(g: &Graph, x: &[usize]) -> Result<SecondProfilePartition, DiversityError> {
    let set = check_anchor(g, x)?;
    let ys: Vec<usize> = (0..g.n()).filter(|&v| !set.contains(v)).collect();
    let mut first: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for &v in &ys {
        let mut tr = g.neighbours(v).clone();
        tr.intersect_with(&set);
        first.entry(tr.to_vec()).or_default().push(v);
    }
    let mut classes = Vec::new();
    let mut t = 0;
    for (trace, members) in &first {
        let mut gi = g.clone();
        for &v in members {
            for &w in trace {
                gi.remove_edge(v, w);
            }
        }
        let mut sub: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for &v in members {
            sub.entry(trace2(&gi, v, &set)).or_default().push(v);
        }
        t = t.max(sub.len());
        classes.extend(sub.into_iter().map(|(t2, m)| (trace.clone(), t2, m)));
    }
    classes.sort_by_key(|c| c.2[0]);
    let direct = group(g, x, 2, ys.iter().copied());
    let mut class_of = vec![usize::MAX; g.n()];
    for (i, (_, members)) in direct.classes.iter().enumerate() {
        for &v in members {
            class_of[v] = i;
        }
    }
    for (_, _, m) in &classes {
        if let Some(&w) = m.iter().find(|&&w| class_of[w] != class_of[m[0]]) {
            return Err(DiversityError::Inhomogeneous { u: m[0], v: w });
        }
    }
    let closed = closed_neighbourhood(g, &set);
    let mut z_classes = Vec::new();
    for (_, _, m) in &classes {
        let zs: Vec<usize> = m.iter().copied().filter(|&v| !closed.contains(v)).collect();
        if let Some(&v) = zs.first() {
            z_classes.push((profile_unchecked(g, v, x, 2), zs));
        }
    }
    let z_report = DiversityReport { anchor: x.to_vec(), r: 2, count: z_classes.len(), classes: z_classes };
    Ok(SecondProfilePartition { s: first.len(), t, classes, z_report, pi2: direct.count })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::{gen_stacked_triangulation, gen_tight_ktree_pi1, gen_tight_surface_pi1};

    #[test]
    fn profiles() {
        let g = Graph::new(3);
        let p = profile(&g, 0, &[1, 2], 1).unwrap();
        assert_eq!(p.entries, vec![None, None]);
        assert_eq!(p.key(), "--");
        let star = Graph::star(3);
        assert_eq!(profile(&star, 3, &[1, 2], 2).unwrap().entries, vec![Some(2), Some(2)]);
        let grid = crate::gadgets::gen_grid(3, 3).unwrap().0;
        let p = profile(&grid, 0, &[4, 8], 2).unwrap();
        assert_eq!(p.entries, vec![Some(2), None]);
        assert_eq!(profile(&grid, 4, &[4], 1), Err(DiversityError::InvalidAnchor { v: 4 }));
    }

    #[test]
    fn star_has_one_class() {
        let r = diversity(&Graph::star(5), &[0], 1).unwrap();
        assert_eq!(r.count, 1);
        assert_eq!(r.classes[0].1, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn surface_examples() {
        let (g0, _) = gen_stacked_triangulation(6, |len| len / 2).unwrap();
        let b = gen_tight_surface_pi1(&g0).unwrap();
        let c = check_bound(&b.graph, &b.x, 1, Bound::Surface { gamma: 0 }).unwrap();
        assert_eq!((c.lhs, c.rhs), (27, 27));
        assert!(matches!(
            check_bound(&b.graph, &b.x[..1], 1, Bound::Surface { gamma: 0 }),
            Err(DiversityError::AnchorTooSmall { .. })
        ));
    }

    #[test]
    fn treewidth_examples() {
        let tree = crate::gadgets::gen_binary_tree(2);
        let c = check_bound(&tree, &[0, 3, 4, 6], 1, Bound::Treewidth { k: None }).unwrap();
        assert_eq!((c.rhs, c.computed), (8, Some(1)));
        assert!(c.holds);
        let b = gen_tight_ktree_pi1(2, 5).unwrap();
        let c = check_bound(&b.graph, &b.x, 1, Bound::Treewidth { k: Some(2) }).unwrap();
        assert_eq!((c.lhs, c.rhs), (13, 13));
    }

    #[test]
    fn two_anchors_reach_four_classes() {
        // a = 0, b = 1; 2 ~ a, 3 ~ b, 4 ~ a, b, 5 isolated
        let g = Graph::from_edges(6, [(0, 2), (1, 3), (0, 4), (1, 4)]);
        let c = check_bound(&g, &[0, 1], 1, Bound::Surface { gamma: 0 }).unwrap();
        assert_eq!((c.lhs, c.rhs), (4, 4));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(surface_pi1_bound(5, 0), 21);
        assert_eq!(surface_pi1_bound(2, 0), 4);
        assert_eq!(surface_second_bound(2, 0), 4);
        assert_eq!(surface_square_bound(6, 0), 27 * 276);
        assert_eq!(treewidth_bound(5, 2), 3 * 3 + 4);
        assert_eq!(degenerate_bound(3, 5), 8);
        assert_eq!(colouring_bound(6, 3), 20);
        assert_eq!(trivial_bound(3, 2), 27);
    }

    #[test]
    fn shallow_minor_small() {
        let w = shallow_minor_witness(&Graph::new(3), &[0, 1, 2], 3).unwrap();
        assert_eq!((w.h.m(), w.lhs, w.rhs), (0, 0, 4));
        let g = Graph::from_edges(3, [(2, 0), (2, 1)]);
        let w = shallow_minor_witness(&g, &[0, 1], 3).unwrap();
        assert_eq!((w.h.m(), w.a.len()), (1, 1));
        assert_eq!(w.branch_sets, vec![vec![0, 2], vec![1]]);
        assert!(matches!(shallow_minor_witness(&Graph::path(3), &[0], 3), Err(DiversityError::NotBipartite { .. })));
    }

    #[test]
    fn pairs_become_edges() {
        // X = 0..4, one Y vertex per pair
        let mut g = Graph::new(4);
        for i in 0..4 {
            for j in i + 1..4 {
                let y = g.add_vertex();
                g.add_edge(y, i);
                g.add_edge(y, j);
            }
        }
        let w = shallow_minor_witness(&g, &[0, 1, 2, 3], 5).unwrap();
        assert_eq!(w.h.m(), 6);
        assert!(w.b.is_empty() && w.holds);
    }

    #[test]
    fn second_partition_on_p5() {
        let g = Graph::path(5);
        let p = second_profile_partition(&g, &[0]).unwrap();
        assert_eq!(p.z_report.count, 2);
        assert_eq!(p.z_report.classes[0].1, vec![2]);
        assert_eq!(p.z_report.classes[1].1, vec![3, 4]);
        assert!(p.pi2 <= p.s * p.t);
        let k = second_profile_partition(&Graph::complete(4), &[0]).unwrap();
        assert_eq!(k.z_report.count, 0);
    }
}
