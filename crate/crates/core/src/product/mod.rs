//! Strong products, rooted decompositions, and the reduction sequences for
//! graphs embedded in `H ⊠ P` (optionally plus apex vertices).

mod builder;
mod template;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::graph::Graph;
use crate::sequence::SequenceError;
use crate::trigraph::{Trigraph, TrigraphError};

pub use builder::{
    apex_product_sequence, power_sequence, product_path_sequence, PowerSequence, ProductSequence,
};
pub use template::{verify_product_sequence, ProductStats, StepTemplate, TemplateEntry};

/// Strong product: `(a, b)` has id `a * g2.n() + b`.
pub fn strong_product(g1: &Graph, g2: &Graph) -> Graph {
    let n2 = g2.n();
    let mut g = Graph::new(g1.n() * n2);
    for a in 0..g1.n() {
        for b in 0..n2 {
            for c in 0..g1.n() {
                for d in 0..n2 {
                    let close1 = a == c || g1.has_edge(a, c);
                    let close2 = b == d || g2.has_edge(b, d);
                    if (a, b) < (c, d) && close1 && close2 {
                        g.add_edge(a * n2 + b, c * n2 + d);
                    }
                }
            }
        }
    }
    g
}

/// A tree-decomposition with a distinguished root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTreeDecomposition {
    pub parent: Vec<Option<usize>>,
    pub bags: Vec<Vec<usize>>,
    pub root: usize,
}

impl RootedTreeDecomposition {
    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.len()];
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                ch[p].push(v);
            }
        }
        ch
    }

    /// A leaf is a non-root node without children; the root is always internal.
    pub fn is_leaf(&self, node: usize, children: &[Vec<usize>]) -> bool {
        node != self.root && children[node].is_empty()
    }

    /// Checks the tree shape and the two decomposition conditions for `h`.
    pub fn validate(&self, h: &Graph) -> Result<(), String> {
        let n = self.len();
        if self.parent.len() != n || self.root >= n.max(1) || n == 0 {
            return Err(String::from("parent, bags and root do not describe a tree"));
        }
        for (v, p) in self.parent.iter().enumerate() {
            match (v == self.root, p) {
                (true, Some(_)) => return Err(String::from("root has a parent")),
                (false, None) => return Err(format!("node {v} has no parent")),
                (false, Some(p)) if *p >= n => return Err(format!("node {v} has parent {p} out of range")),
                _ => {}
            }
        }
        // every node must reach the root
        for v in 0..n {
            let (mut x, mut steps) = (v, 0);
            while let Some(p) = self.parent[x] {
                x = p;
                steps += 1;
                if steps > n {
                    return Err(format!("node {v} lies on a cycle"));
                }
            }
        }
        for bag in &self.bags {
            if let Some(&x) = bag.iter().find(|&&x| x >= h.n()) {
                return Err(format!("bag vertex {x} is not a vertex of H"));
            }
        }
        for x in 0..h.n() {
            let holders: Vec<usize> = (0..n).filter(|&b| self.bags[b].contains(&x)).collect();
            if holders.is_empty() {
                return Err(format!("vertex {x} is in no bag"));
            }
            // bags holding x are connected iff exactly one of them has its parent outside
            let tops = holders
                .iter()
                .filter(|&&b| self.parent[b].is_none_or(|p| !self.bags[p].contains(&x)))
                .count();
            if tops != 1 {
                return Err(format!("bags containing {x} are not connected"));
            }
        }
        for (u, v) in h.edges() {
            if !self.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
                return Err(format!("edge {u}-{v} is in no bag"));
            }
        }
        Ok(())
    }

    /// `(k, q)` for which the decomposition is `(k, q)`-rooted: `k + 1` is the
    /// largest internal bag, `q` the most new vertices in a leaf bag.
    pub fn rootedness(&self) -> (usize, usize) {
        let ch = self.children();
        let mut k1 = 0;
        let mut q = 0;
        for v in 0..self.len() {
            if self.is_leaf(v, &ch) {
                let p = self.parent[v].expect("leaf has a parent");
                let new = self.bags[v].iter().filter(|x| !self.bags[p].contains(x)).count();
                q = q.max(new);
            } else {
                k1 = k1.max(self.bags[v].len());
            }
        }
        (k1.saturating_sub(1), q)
    }

    /// For each vertex of `H`, the leaf whose bag introduces it, if any.
    pub fn leaf_of(&self, h_n: usize) -> Vec<Option<usize>> {
        let ch = self.children();
        let mut out = vec![None; h_n];
        for v in 0..self.len() {
            if !self.is_leaf(v, &ch) {
                continue;
            }
            let p = self.parent[v].expect("leaf has a parent");
            for &x in &self.bags[v] {
                if x < h_n && !self.bags[p].contains(&x) {
                    out[x] = Some(v);
                }
            }
        }
        out
    }
}

/// An embedding of `V(F)` into `V(H ⊠ P) ∪ apex`, with `P` the path on
/// `path_len` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductCertificate {
    pub h: Graph,
    pub decomp: RootedTreeDecomposition,
    pub path_len: usize,
    /// `embed[v] = Some((h, p))`, or `None` exactly for apex vertices.
    pub embed: Vec<Option<(usize, usize)>>,
    pub apex: Vec<usize>,
    pub r: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertViolation {
    Decomposition(String),
    RootBagNotEmpty,
    LeafTooLarge { node: usize, new: usize, q: usize },
    QBelowWidth { q: usize, k: usize },
    NotBase,
    EmbedLength { expected: usize, got: usize },
    Unembedded { v: usize },
    ApexEmbedded { v: usize },
    /// The apex-free sequence was asked for with apex vertices present.
    UnexpectedApex { v: usize },
    OutOfRange { v: usize },
    Collision { u: usize, v: usize },
    RedEdge { u: usize, v: usize },
    Neighbourhood { u: usize, v: usize },
    NotProductEdge { u: usize, v: usize },
}

impl fmt::Display for CertViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertViolation::Decomposition(s) => write!(f, "decomposition: {s}"),
            CertViolation::RootBagNotEmpty => write!(f, "root bag is not empty"),
            CertViolation::LeafTooLarge { node, new, q } => {
                write!(f, "leaf bag {node} adds {new} vertices, more than q = {q}")
            }
            CertViolation::QBelowWidth { q, k } => write!(f, "q = {q} is below k + 1 = {}", k + 1),
            CertViolation::NotBase => write!(f, "F has already been contracted"),
            CertViolation::EmbedLength { expected, got } => {
                write!(f, "embedding has {got} entries, F has {expected} vertices")
            }
            CertViolation::Unembedded { v } => write!(f, "vertex {v} is neither embedded nor apex"),
            CertViolation::ApexEmbedded { v } => write!(f, "apex vertex {v} is embedded"),
            CertViolation::UnexpectedApex { v } => write!(f, "vertex {v} is an apex; use the apex variant"),
            CertViolation::OutOfRange { v } => write!(f, "vertex {v} is embedded outside H x P"),
            CertViolation::Collision { u, v } => write!(f, "vertices {u} and {v} share a cell"),
            CertViolation::RedEdge { u, v } => {
                write!(f, "red edge condition: {u}-{v} is not inside one leaf region within distance r")
            }
            CertViolation::Neighbourhood { u, v } => {
                write!(f, "neighbourhood condition: edge {u}-{v} spans more than r path positions")
            }
            CertViolation::NotProductEdge { u, v } => write!(f, "edge {u}-{v} is not an edge of H x P"),
        }
    }
}

/// Result of the static certificate checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertReport {
    pub violations: Vec<CertViolation>,
    /// Width parameter: internal bags have at most `k + 1` vertices.
    pub k: usize,
    /// Largest number of new vertices in a leaf bag.
    pub leaf_new: usize,
}

impl CertReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    /// Smallest admissible `q`.
    pub fn q_min(&self) -> usize {
        (self.k + 1).max(self.leaf_new).max(1)
    }

    /// The separation condition is never enumerated up front.
    pub const SEPARATION: &'static str = "checked lazily during construction";
}

/// Static checks of `cert` against `f` (which must be uncontracted). With
/// `q = Some(q)`, the `(k, q)`-rootedness for that `q` is checked too.
pub fn validate_certificate(cert: &ProductCertificate, f: &Trigraph, q: Option<usize>) -> CertReport {
    let mut violations = Vec::new();
    let d = &cert.decomp;
    if let Err(s) = d.validate(&cert.h) {
        violations.push(CertViolation::Decomposition(s));
        return CertReport { violations, k: 0, leaf_new: 0 };
    }
    if !d.bags[d.root].is_empty() {
        violations.push(CertViolation::RootBagNotEmpty);
    }
    let (k, leaf_new) = d.rootedness();
    if let Some(q) = q {
        if q < k + 1 {
            violations.push(CertViolation::QBelowWidth { q, k });
        }
        let ch = d.children();
        for v in 0..d.len() {
            if d.is_leaf(v, &ch) {
                let p = d.parent[v].expect("leaf has a parent");
                let new = d.bags[v].iter().filter(|x| !d.bags[p].contains(x)).count();
                if new > q {
                    violations.push(CertViolation::LeafTooLarge { node: v, new, q });
                }
            }
        }
    }
    let n = f.base_n();
    if f.n() != n {
        violations.push(CertViolation::NotBase);
    }
    if cert.embed.len() != n {
        violations.push(CertViolation::EmbedLength { expected: n, got: cert.embed.len() });
        return CertReport { violations, k, leaf_new };
    }
    let mut is_apex = vec![false; n];
    for &a in &cert.apex {
        if a < n {
            is_apex[a] = true;
        }
    }
    let mut cell = hashbrown::HashMap::new();
    for v in 0..n {
        match (cert.embed[v], is_apex[v]) {
            (None, false) => violations.push(CertViolation::Unembedded { v }),
            (Some(_), true) => violations.push(CertViolation::ApexEmbedded { v }),
            (Some((h, p)), false) => {
                if h >= cert.h.n() || p >= cert.path_len {
                    violations.push(CertViolation::OutOfRange { v });
                } else if let Some(u) = cell.insert((h, p), v) {
                    violations.push(CertViolation::Collision { u, v });
                }
            }
            (None, true) => {}
        }
    }
    if !violations.is_empty() {
        return CertReport { violations, k, leaf_new };
    }
    let leaf_of = d.leaf_of(cert.h.n());
    for (u, v) in f.red_edges() {
        let ok = match (cert.embed[u], cert.embed[v]) {
            (Some((hu, pu)), Some((hv, pv))) => {
                leaf_of[hu].is_some() && leaf_of[hu] == leaf_of[hv] && pu.abs_diff(pv) <= cert.r
            }
            _ => false,
        };
        if !ok {
            violations.push(CertViolation::RedEdge { u, v });
        }
    }
    for (u, v) in f.black_edges().chain(f.red_edges()) {
        if let (Some((_, pu)), Some((_, pv))) = (cert.embed[u], cert.embed[v]) {
            if pu.abs_diff(pv) > cert.r {
                violations.push(CertViolation::Neighbourhood { u, v });
            }
        }
    }
    CertReport { violations, k, leaf_new }
}

/// Edges of `g` that are not edges of `H ⊠ P` under the embedding (apex
/// vertices are unconstrained).
pub fn non_product_edges(cert: &ProductCertificate, g: &Graph) -> Vec<CertViolation> {
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        let (Some(Some((hu, pu))), Some(Some((hv, pv)))) = (cert.embed.get(u), cert.embed.get(v)) else {
            continue;
        };
        let h_ok = hu == hv || cert.h.has_edge(*hu, *hv);
        if !h_ok || pu.abs_diff(*pv) > 1 || (hu, pu) == (hv, pv) {
            out.push(CertViolation::NotProductEdge { u, v });
        }
    }
    out
}

/// Which neighbourhood a row is grouped by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignatureRegion {
    /// Everything outside the active region.
    D,
    /// `D`, plus active parts more than `r` rows away, plus the apex set.
    M1,
    /// Rows more than `r` beyond the current one, plus the apex set.
    M2,
}

impl SignatureRegion {
    pub fn as_str(self) -> &'static str {
        match self {
            SignatureRegion::D => "D x V(P)",
            SignatureRegion::M1 => "M1",
            SignatureRegion::M2 => "M2",
        }
    }
}

/// A row that could not be reduced to `q` parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PigeonholeFailure {
    pub region: SignatureRegion,
    /// `C \ D` and `C ∩ D` of the separation, as vertices of the (growing) host.
    pub active: Vec<usize>,
    pub separator: Vec<usize>,
    pub row: usize,
    pub q: usize,
    pub parts: Vec<usize>,
    /// Distinct `(black, red)` neighbourhoods of the row on the region.
    pub signatures: Vec<(Vec<usize>, Vec<usize>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("certificate violations: {}", list(.0))]
    Certificate(Vec<CertViolation>),
    #[error("row {} has {} distinct signatures on {}, more than q = {}", .0.row, .0.signatures.len(), .0.region.as_str(), .0.q)]
    Pigeonhole(PigeonholeFailure),
    #[error("invariant broken at step {step}: {what}")]
    Invariant { step: usize, what: String },
    #[error("check failed at step {step}: {what}")]
    Check { step: usize, what: String },
    #[error(transparent)]
    Trigraph(#[from] TrigraphError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

fn list(v: &[CertViolation]) -> String {
    let mut s = String::new();
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            s.push_str("; ");
        }
        s.push_str(&format!("{x}"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::gen_grid;

    #[test]
    fn small_products() {
        let k1p = strong_product(&Graph::new(1), &Graph::path(5));
        assert_eq!(k1p.edges().collect::<Vec<_>>(), Graph::path(5).edges().collect::<Vec<_>>());
        let k4 = strong_product(&Graph::path(2), &Graph::path(2));
        assert_eq!(k4.m(), 6);
        let p33 = strong_product(&Graph::path(3), &Graph::path(3));
        assert_eq!(p33.degree(4), 8);
        let (grid, _) = gen_grid(3, 3).unwrap();
        assert!(grid.edges().all(|(u, v)| p33.has_edge(u, v)));
    }

    #[test]
    fn grid_certificate_validates() {
        for (m, n) in [(1, 4), (2, 2), (3, 5), (6, 6)] {
            let (g, cert) = gen_grid(m, n).unwrap();
            let rep = validate_certificate(&cert, &Trigraph::from_graph(&g), Some(2));
            assert!(rep.holds(), "{m}x{n}: {:?}", rep.violations);
            assert!(non_product_edges(&cert, &g).is_empty());
        }
    }

    #[test]
    fn far_edge_is_reported() {
        let (mut g, cert) = gen_grid(2, 4).unwrap();
        g.add_edge(0, 2);
        let rep = validate_certificate(&cert, &Trigraph::from_graph(&g), None);
        assert_eq!(rep.violations, vec![CertViolation::Neighbourhood { u: 0, v: 2 }]);
    }

    #[test]
    fn red_edges_outside_leaves_are_reported() {
        let (g, cert) = gen_grid(3, 2).unwrap();
        let mut f = Trigraph::from_graph(&g);
        // rows 0 and 1 of H sit in internal bags only
        f.set_colour(0, 2, crate::trigraph::Colour::Red).unwrap();
        let rep = validate_certificate(&cert, &f, None);
        assert_eq!(rep.violations, vec![CertViolation::RedEdge { u: 0, v: 2 }]);
        let mut f = Trigraph::from_graph(&g);
        f.set_colour(4, 5, crate::trigraph::Colour::Red).unwrap();
        assert!(validate_certificate(&cert, &f, None).holds());
    }

    #[test]
    fn broken_decomposition() {
        let (g, mut cert) = gen_grid(3, 2).unwrap();
        cert.decomp.bags[2] = vec![2];
        let rep = validate_certificate(&cert, &Trigraph::from_graph(&g), None);
        assert!(matches!(rep.violations[0], CertViolation::Decomposition(_)));
    }
}
