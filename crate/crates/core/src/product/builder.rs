//! The bag-by-bag reduction for graphs embedded in `H ⊠ P`.
//!
//! The input is padded to all of `V(H) × V(P)` with isolated vertices. Every
//! product part sits in a cell `(h, row)`, where `h` is a vertex of a host that
//! grows as rows are reduced into fresh clique vertices `Z`. Parts that were
//! folded into the sweep of the final rows have no cell.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::template::{bound_bw, bound_deg, StepTemplate, TemplateEntry};
use super::{
    non_product_edges, validate_certificate, CertViolation, PigeonholeFailure, ProductCertificate,
    ProductError, SignatureRegion,
};
use crate::bitset::VertexSet;
use crate::gadgets::{SGroup, SVertex};
use crate::graph::Graph;
use crate::sequence::{Merge, ReductionSequence};
use crate::trigraph::Trigraph;

/// A product sequence: the run on the padded trigraph and its projection onto
/// the input vertices.
#[derive(Debug, Clone)]
pub struct ProductSequence {
    pub padded: ReductionSequence,
    pub projected: ReductionSequence,
    /// One per trigraph of `padded`, the base first.
    pub templates: Vec<StepTemplate>,
    /// Padded id of every input vertex.
    pub padded_id: Vec<usize>,
    /// Padded ids of the apex vertices.
    pub apex: Vec<usize>,
    pub q: usize,
    pub r: usize,
    pub path_len: usize,
    /// Merges before the final fold of the apex variant (all of them otherwise).
    pub partial_len: usize,
    /// Most distinct signatures met in a row that had to be reduced.
    pub max_signatures: usize,
}

impl ProductSequence {
    /// `q` of the final bounds: `q` plus the number of apex vertices.
    pub fn final_q(&self) -> usize {
        self.q + self.apex.len()
    }

    pub fn bandwidth_bound(&self) -> usize {
        bound_bw(self.r, self.final_q())
    }

    pub fn degree_bound(&self) -> usize {
        bound_deg(self.r, self.final_q())
    }
}

/// Reduction sequence for `F` under an apex-free certificate, with every red
/// graph mapping into `S_{ℓ,q,r}`.
pub fn product_path_sequence(
    f: &Trigraph,
    cert: &ProductCertificate,
    q: usize,
) -> Result<ProductSequence, ProductError> {
    if let Some(&v) = cert.apex.first() {
        return Err(ProductError::Certificate(vec![CertViolation::UnexpectedApex { v }]));
    }
    let rep = validate_certificate(cert, f, Some(q));
    if !rep.holds() {
        return Err(ProductError::Certificate(rep.violations));
    }
    Builder::new(f, cert, q, false).run()
}

/// The apex variant. The product part is first reduced to at most `q`
/// vertices without red edges at the apex set; then everything is folded.
/// Without apex vertices this is [`product_path_sequence`].
pub fn apex_product_sequence(
    f: &Trigraph,
    cert: &ProductCertificate,
    q: usize,
) -> Result<ProductSequence, ProductError> {
    if cert.apex.is_empty() {
        return product_path_sequence(f, cert, q);
    }
    let rep = validate_certificate(cert, f, Some(q));
    // far edges are allowed here: the M1 and M2 signatures account for them
    let bad: Vec<CertViolation> = rep
        .violations
        .into_iter()
        .filter(|v| !matches!(v, CertViolation::Neighbourhood { .. }))
        .collect();
    if !bad.is_empty() {
        return Err(ProductError::Certificate(bad));
    }
    Builder::new(f, cert, q, true).run()
}

/// Output of [`power_sequence`].
#[derive(Debug, Clone)]
pub struct PowerSequence {
    pub sequence: ProductSequence,
    pub q: usize,
    /// Values of `q` that failed before `q` succeeded.
    pub attempts: Vec<usize>,
    /// `(2r + 1)(k + 1)`, the size of the anchor sets behind `q`.
    pub anchor_size: usize,
}

/// Sequence for `G^r`, where the certificate embeds `G` itself into `H ⊠ P`.
/// `q` starts at the smallest admissible value and is raised to the
/// signature count of any row that could not be reduced.
pub fn power_sequence(g: &Graph, cert: &ProductCertificate) -> Result<PowerSequence, ProductError> {
    let bad = non_product_edges(cert, g);
    if !bad.is_empty() {
        return Err(ProductError::Certificate(bad));
    }
    let f = Trigraph::from_graph(&g.power(cert.r.max(1)));
    let rep = validate_certificate(cert, &f, None);
    if !rep.holds() {
        return Err(ProductError::Certificate(rep.violations));
    }
    let mut q = rep.q_min();
    let mut attempts = Vec::new();
    loop {
        match product_path_sequence(&f, cert, q) {
            Ok(sequence) => {
                return Ok(PowerSequence {
                    sequence,
                    q,
                    attempts,
                    anchor_size: (2 * cert.r + 1) * (rep.k + 1),
                })
            }
            Err(ProductError::Pigeonhole(fail)) => {
                attempts.push(q);
                q = (q + 1).max(fail.signatures.len());
            }
            Err(e) => return Err(e),
        }
    }
}

struct Node {
    bag: Vec<usize>,
    parent: Option<usize>,
    children: Vec<usize>,
    alive: bool,
}

enum Mode {
    /// Only leaf regions carry red edges.
    Idle,
    /// Rows of `active` are being reduced into `z`; `row` is the current one.
    Reduce {
        active: Vec<usize>,
        side0: Vec<usize>,
        side1: Vec<usize>,
        z: Vec<usize>,
        row: usize,
    },
    /// Rows up to `row` have been swept into cell-less parts.
    Sweep { leaf: Vec<usize>, row: usize },
    /// Everything left is being folded.
    Final,
}

struct Builder<'a> {
    input: &'a Trigraph,
    t: Trigraph,
    base: Trigraph,
    merges: Vec<Merge>,
    witnesses: Vec<Vec<usize>>,
    templates: Vec<StepTemplate>,
    cell_of: HashMap<usize, (usize, usize)>,
    at: HashMap<(usize, usize), usize>,
    padded_id: Vec<usize>,
    apex: Vec<usize>,
    apex_set: VertexSet,
    nodes: Vec<Node>,
    root: usize,
    h_next: usize,
    ell: usize,
    q: usize,
    r: usize,
    apex_mode: bool,
    mode: Mode,
    cap: usize,
    max_signatures: usize,
}

fn sorted_union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let s: BTreeSet<usize> = a.iter().chain(b).copied().collect();
    s.into_iter().collect()
}

fn minus(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| !b.contains(x)).collect()
}

impl<'a> Builder<'a> {
    fn new(f: &'a Trigraph, cert: &ProductCertificate, q: usize, apex_mode: bool) -> Self {
        let hn = cert.h.n();
        let ell = cert.path_len;
        let cells = hn * ell;
        let mut apex_index = HashMap::new();
        for (i, &a) in cert.apex.iter().enumerate() {
            apex_index.insert(a, cells + i);
        }
        let padded_id: Vec<usize> = (0..f.base_n())
            .map(|v| match cert.embed[v] {
                Some((h, p)) => h * ell + p,
                None => apex_index[&v],
            })
            .collect();
        let np = cells + cert.apex.len();
        let mut t = Trigraph::new(np);
        for (u, v) in f.black_edges() {
            t.set_colour(padded_id[u], padded_id[v], crate::trigraph::Colour::Black)
                .expect("padded ids are distinct");
        }
        for (u, v) in f.red_edges() {
            t.set_colour(padded_id[u], padded_id[v], crate::trigraph::Colour::Red)
                .expect("padded ids are distinct");
        }
        let mut cell_of = HashMap::new();
        let mut at = HashMap::new();
        for h in 0..hn {
            for p in 0..ell {
                cell_of.insert(h * ell + p, (h, p));
                at.insert((h, p), h * ell + p);
            }
        }
        let d = &cert.decomp;
        let mut nodes: Vec<Node> = d
            .bags
            .iter()
            .zip(&d.parent)
            .map(|(b, &parent)| {
                let mut bag = b.clone();
                bag.sort_unstable();
                bag.dedup();
                Node { bag, parent, children: Vec::new(), alive: true }
            })
            .collect();
        for v in 0..nodes.len() {
            if let Some(p) = nodes[v].parent {
                nodes[p].children.push(v);
            }
        }
        let apex: Vec<usize> = (cells..np).collect();
        Builder {
            input: f,
            base: t.clone(),
            t,
            merges: Vec::new(),
            witnesses: Vec::new(),
            templates: Vec::new(),
            cell_of,
            at,
            padded_id,
            apex_set: VertexSet::from_iter_with_capacity(np, apex.iter().copied()),
            apex,
            nodes,
            root: d.root,
            h_next: hn,
            ell,
            q,
            r: cert.r,
            apex_mode,
            mode: Mode::Idle,
            cap: q,
            max_signatures: 0,
        }
    }

    fn run(mut self) -> Result<ProductSequence, ProductError> {
        self.snapshot();
        self.tree_phase()?;
        if self.apex_mode {
            self.apex_sweep()?;
        } else {
            self.sweep()?;
        }
        let partial_len = self.merges.len();
        self.final_fold()?;
        let projected = self.project()?;
        Ok(ProductSequence {
            padded: ReductionSequence {
                base: self.base,
                merges: self.merges,
                witnesses: Some(self.witnesses),
            },
            projected,
            templates: self.templates,
            padded_id: self.padded_id,
            apex: self.apex,
            q: self.q,
            r: self.r,
            path_len: self.ell,
            partial_len,
            max_signatures: self.max_signatures,
        })
    }

    // ---- tree bookkeeping

    fn live_children(&self, v: usize) -> Vec<usize> {
        self.nodes[v].children.iter().copied().filter(|&c| self.nodes[c].alive).collect()
    }

    fn is_leaf(&self, v: usize) -> bool {
        v != self.root && self.live_children(v).is_empty()
    }

    fn remove_node(&mut self, v: usize) {
        self.nodes[v].alive = false;
        if let Some(p) = self.nodes[v].parent {
            self.nodes[p].children.retain(|&c| c != v);
        }
    }

    fn add_leaf(&mut self, parent: usize, bag: Vec<usize>) {
        let id = self.nodes.len();
        self.nodes.push(Node { bag, parent: Some(parent), children: Vec::new(), alive: true });
        self.nodes[parent].children.push(id);
    }

    /// Internal node of greatest depth, ties to the earliest in preorder.
    fn deepest_internal(&self) -> usize {
        let mut best = (0, self.root);
        let mut stack = vec![(self.root, 0usize)];
        while let Some((v, depth)) = stack.pop() {
            if !self.is_leaf(v) && depth > best.0 {
                best = (depth, v);
            }
            for c in self.live_children(v).into_iter().rev() {
                stack.push((c, depth + 1));
            }
        }
        best.1
    }

    fn tree_phase(&mut self) -> Result<(), ProductError> {
        loop {
            let rc = self.live_children(self.root);
            if rc.is_empty() || (rc.len() == 1 && self.is_leaf(rc[0])) {
                return Ok(());
            }
            let b = self.deepest_internal();
            let ch = self.live_children(b);
            let bag_b = self.nodes[b].bag.clone();
            if ch.len() >= 2 {
                let (c0, c1) = (ch[0], ch[1]);
                let side0 = minus(&self.nodes[c0].bag, &bag_b);
                let side1 = minus(&minus(&self.nodes[c1].bag, &bag_b), &side0);
                let new_bag = if side0.len() + side1.len() <= self.q {
                    sorted_union(&self.nodes[c0].bag, &self.nodes[c1].bag)
                } else {
                    let z = self.reduce(&side0, &side1, &bag_b)?;
                    sorted_union(&z, &bag_b)
                };
                self.remove_node(c0);
                self.remove_node(c1);
                self.add_leaf(b, new_bag);
            } else {
                let c = ch[0];
                let bp = self.nodes[b].parent.expect("a non-root internal bag has a parent");
                let y: Vec<usize> = bag_b.iter().copied().filter(|x| self.nodes[bp].bag.contains(x)).collect();
                let side0 = minus(&bag_b, &y);
                let side1 = minus(&self.nodes[c].bag, &bag_b);
                let new_bag = if side0.len() + side1.len() <= self.q {
                    sorted_union(&bag_b, &self.nodes[c].bag)
                } else {
                    let z = self.reduce(&side0, &side1, &y)?;
                    sorted_union(&z, &y)
                };
                self.remove_node(c);
                self.remove_node(b);
                self.add_leaf(bp, new_bag);
            }
        }
    }

    // ---- cells and merges

    fn take_cell(&mut self, p: usize) -> Option<(usize, usize)> {
        let c = self.cell_of.remove(&p)?;
        self.at.remove(&c);
        Some(c)
    }

    fn put_cell(&mut self, p: usize, c: (usize, usize)) {
        self.cell_of.insert(p, c);
        self.at.insert(c, p);
    }

    fn row_parts(&self, hs: &[usize], row: usize) -> Vec<usize> {
        let mut v: Vec<usize> = hs.iter().filter_map(|&h| self.at.get(&(h, row)).copied()).collect();
        v.sort_unstable();
        v
    }

    /// Contracts `u` and `v`; the result keeps the cell of `u`. Red edges of
    /// the result must avoid `forbidden`, and the apex set outside the final fold.
    fn merge(&mut self, u: usize, v: usize, forbidden: Option<&VertexSet>) -> Result<usize, ProductError> {
        let cu = self.take_cell(u);
        self.take_cell(v);
        let w = self.t.contract_in_place(u, v)?;
        self.merges.push(Merge { u, v, w });
        if let Some(c) = cu {
            self.put_cell(w, c);
        }
        let step = self.merges.len();
        let red = self.t.red_neighbours(w);
        if forbidden.is_some_and(|m| red.intersects(m)) {
            return Err(ProductError::Invariant {
                step,
                what: format!("merged part {w} has a red edge into the signature region"),
            });
        }
        if !matches!(self.mode, Mode::Final) && red.intersects(&self.apex_set) {
            return Err(ProductError::Invariant { step, what: format!("merged part {w} has a red edge to the apex set") });
        }
        self.snapshot();
        Ok(w)
    }

    fn signatures(&self, parts: &[usize], region: &VertexSet) -> Result<Vec<(Vec<usize>, Vec<usize>)>, ProductError> {
        let mut out = Vec::with_capacity(parts.len());
        for &p in parts {
            let mut black = self.t.black_neighbours(p).clone();
            black.intersect_with(region);
            let mut red = self.t.red_neighbours(p).clone();
            red.intersect_with(region);
            if !red.is_empty() {
                return Err(ProductError::Invariant {
                    step: self.merges.len(),
                    what: format!("part {p} has a red edge into the signature region"),
                });
            }
            out.push((black.to_vec(), red.to_vec()));
        }
        Ok(out)
    }

    /// Merges same-signature parts of `parts` until at most `q` remain.
    fn reduce_row(
        &mut self,
        mut parts: Vec<usize>,
        region: &VertexSet,
        kind: SignatureRegion,
        active: &[usize],
        separator: &[usize],
        row: usize,
    ) -> Result<Vec<usize>, ProductError> {
        if parts.len() <= self.q {
            return Ok(parts);
        }
        let sigs = self.signatures(&parts, region)?;
        let distinct: BTreeSet<&(Vec<usize>, Vec<usize>)> = sigs.iter().collect();
        self.max_signatures = self.max_signatures.max(distinct.len());
        if distinct.len() > self.q {
            return Err(ProductError::Pigeonhole(PigeonholeFailure {
                region: kind,
                active: active.to_vec(),
                separator: separator.to_vec(),
                row,
                q: self.q,
                parts,
                signatures: distinct.into_iter().cloned().collect(),
            }));
        }
        let mut sig_of: HashMap<usize, (Vec<usize>, Vec<usize>)> = parts.iter().copied().zip(sigs).collect();
        while parts.len() > self.q {
            let mut classes: BTreeMap<&(Vec<usize>, Vec<usize>), Vec<usize>> = BTreeMap::new();
            for &p in &parts {
                classes.entry(&sig_of[&p]).or_default().push(p);
            }
            let class = classes
                .into_values()
                .filter(|c| c.len() >= 2)
                .max_by_key(|c| (c.len(), core::cmp::Reverse(c[0])))
                .expect("pigeonhole: more parts than signatures");
            let (u, v) = (class[0], class[1]);
            let sig = sig_of.remove(&u).expect("signature of a row part");
            sig_of.remove(&v);
            let w = self.merge(u, v, Some(region))?;
            sig_of.insert(w, sig);
            parts.retain(|&p| p != u && p != v);
            parts.push(w);
            parts.sort_unstable();
        }
        Ok(parts)
    }

    /// Reduces every row of `side0 ∪ side1` into `q` fresh host vertices.
    fn reduce(&mut self, side0: &[usize], side1: &[usize], separator: &[usize]) -> Result<Vec<usize>, ProductError> {
        let active = sorted_union(side0, side1);
        let z: Vec<usize> = (self.h_next..self.h_next + self.q).collect();
        self.h_next += self.q;
        let kind = if self.apex_mode { SignatureRegion::M1 } else { SignatureRegion::D };
        for row in 0..self.ell {
            self.mode = Mode::Reduce {
                active: active.clone(),
                side0: side0.to_vec(),
                side1: side1.to_vec(),
                z: z.clone(),
                row,
            };
            let parts = self.row_parts(&active, row);
            let mut region = VertexSet::with_capacity(self.t.next_id());
            for (&p, &(h, rw)) in &self.cell_of {
                let inside = active.contains(&h) || z.contains(&h);
                if !inside || (self.apex_mode && rw.abs_diff(row) > self.r) {
                    region.insert(p);
                }
            }
            if self.apex_mode {
                region.union_with(&self.apex_set);
            }
            let parts = self.reduce_row(parts, &region, kind, &active, separator, row)?;
            for (j, &p) in parts.iter().enumerate() {
                self.take_cell(p);
                self.put_cell(p, (z[j], row));
            }
        }
        Ok(z)
    }

    fn leaf_hosts(&self) -> Vec<usize> {
        let mut hs: Vec<usize> = self.cell_of.values().map(|&(h, _)| h).collect();
        hs.sort_unstable();
        hs.dedup();
        hs
    }

    /// Two-bag case: fold each row into one part, carried into the next row.
    fn sweep(&mut self) -> Result<(), ProductError> {
        let leaf = self.leaf_hosts();
        let mut acc: Option<usize> = None;
        for row in 0..self.ell {
            let parts = self.row_parts(&leaf, row);
            for &p in &parts {
                self.take_cell(p);
            }
            self.mode = Mode::Sweep { leaf: leaf.clone(), row };
            for p in parts {
                acc = Some(match acc {
                    None => p,
                    Some(a) => self.merge(a, p, None)?,
                });
            }
        }
        Ok(())
    }

    /// Apex base case: rows join the sweep without merges while the union
    /// stays within `q`, otherwise it is reduced by signatures on `M2`.
    fn apex_sweep(&mut self) -> Result<(), ProductError> {
        let leaf = self.leaf_hosts();
        let mut prefix: Vec<usize> = Vec::new();
        for row in 0..self.ell {
            let parts = self.row_parts(&leaf, row);
            for &p in &parts {
                self.take_cell(p);
            }
            self.mode = Mode::Sweep { leaf: leaf.clone(), row };
            let all = sorted_union(&prefix, &parts);
            if all.len() <= self.q {
                prefix = all;
                continue;
            }
            let mut region = self.apex_set.clone();
            for (&p, &(_, rw)) in &self.cell_of {
                if rw > row + self.r {
                    region.insert(p);
                }
            }
            prefix = self.reduce_row(all, &region, SignatureRegion::M2, &leaf, &[], row)?;
        }
        Ok(())
    }

    fn final_fold(&mut self) -> Result<(), ProductError> {
        self.mode = Mode::Final;
        self.cap = self.q + self.apex.len();
        let live: Vec<usize> = self.t.vertices().collect();
        let mut it = live.into_iter();
        if let Some(mut acc) = it.next() {
            for p in it {
                acc = self.merge(acc, p, None)?;
            }
        }
        Ok(())
    }

    // ---- templates

    fn leaf_regions(&self) -> HashMap<usize, (usize, usize)> {
        let mut out = HashMap::new();
        let mut region = 1;
        for v in 0..self.nodes.len() {
            if !self.nodes[v].alive || !self.is_leaf(v) {
                continue;
            }
            let p = self.nodes[v].parent.expect("leaf has a parent");
            let new = minus(&self.nodes[v].bag, &self.nodes[p].bag);
            for (rank, h) in new.into_iter().enumerate() {
                out.insert(h, (region, rank));
            }
            region += 1;
        }
        out
    }

    fn template(&self) -> StepTemplate {
        let mut entries = Vec::new();
        let mut cells: Vec<(usize, (usize, usize))> = self.cell_of.iter().map(|(&p, &c)| (p, c)).collect();
        cells.sort_unstable();
        let rank = |xs: &[usize], x: usize| xs.iter().position(|&y| y == x);
        let mut entry = |part, region, group, slot| entries.push(TemplateEntry { part, region, vertex: SVertex::new(group, slot) });
        match &self.mode {
            Mode::Idle | Mode::Reduce { .. } => {
                let leaves = self.leaf_regions();
                let reduce = match &self.mode {
                    Mode::Reduce { active, side0, side1, z, row } => Some((active, side0, side1, z, *row)),
                    _ => None,
                };
                let current: Vec<usize> = reduce.map_or_else(Vec::new, |(active, _, _, _, row)| {
                    cells
                        .iter()
                        .filter(|(_, (h, rw))| *rw == row && active.contains(h))
                        .map(|&(p, _)| p)
                        .collect()
                });
                for &(p, (h, rw)) in &cells {
                    if let Some((active, side0, side1, z, row)) = reduce {
                        if let Some(j) = rank(z, h) {
                            if rw < row {
                                entry(p, 0, SGroup::A(row - rw), j);
                            }
                            continue;
                        }
                        if active.contains(&h) {
                            if rw == row {
                                entry(p, 0, SGroup::Q, rank(&current, p).expect("current row part"));
                            } else if rw > row {
                                match (rank(side0, h), rank(side1, h)) {
                                    (Some(j), _) => entry(p, 0, SGroup::B(rw - row), j),
                                    (None, Some(j)) => entry(p, 0, SGroup::C(rw - row), j),
                                    (None, None) => {}
                                }
                            }
                            continue;
                        }
                    }
                    if let Some(&(region, j)) = leaves.get(&h) {
                        entry(p, region, SGroup::B(rw + 1), j);
                    }
                }
            }
            Mode::Sweep { leaf, row } => {
                let mut swept: Vec<usize> =
                    self.t.vertices().filter(|p| !self.cell_of.contains_key(p) && !self.apex_set.contains(*p)).collect();
                swept.sort_unstable();
                for (j, &p) in swept.iter().enumerate() {
                    entry(p, 0, SGroup::Q, j);
                }
                for &(p, (h, rw)) in &cells {
                    if let (true, Some(j)) = (rw > *row, rank(leaf, h)) {
                        entry(p, 0, SGroup::B(rw - row), j);
                    }
                }
            }
            Mode::Final => {
                for (j, p) in self.t.vertices().enumerate() {
                    entry(p, 0, SGroup::Q, j);
                }
            }
        }
        StepTemplate { q: self.cap, entries }
    }

    fn snapshot(&mut self) {
        let tpl = self.template();
        self.witnesses.push(tpl.ordering(self.t.vertices()));
        self.templates.push(tpl);
    }

    // ---- projection onto the input vertices

    fn project(&self) -> Result<ReductionSequence, ProductError> {
        let mut t = self.input.clone();
        let mut proj: HashMap<usize, usize> = HashMap::new();
        for (v, &p) in self.padded_id.iter().enumerate() {
            proj.insert(p, v);
        }
        let filter = |w: &[usize], proj: &HashMap<usize, usize>| -> Vec<usize> {
            w.iter().filter_map(|p| proj.get(p).copied()).collect()
        };
        let mut merges = Vec::new();
        let mut witnesses = vec![filter(&self.witnesses[0], &proj)];
        for (k, m) in self.merges.iter().enumerate() {
            match (proj.remove(&m.u), proj.remove(&m.v)) {
                (Some(a), Some(b)) => {
                    let w = t.contract_in_place(a, b)?;
                    merges.push(Merge { u: a, v: b, w });
                    proj.insert(m.w, w);
                    witnesses.push(filter(&self.witnesses[k + 1], &proj));
                }
                (Some(a), None) | (None, Some(a)) => {
                    proj.insert(m.w, a);
                }
                (None, None) => {}
            }
        }
        Ok(ReductionSequence {
            base: self.input.clone(),
            merges,
            witnesses: Some(witnesses),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::gen_grid;
    use crate::product::{strong_product, verify_product_sequence, RootedTreeDecomposition};

    fn path_cert(n: usize, r: usize) -> ProductCertificate {
        ProductCertificate {
            h: Graph::new(1),
            decomp: RootedTreeDecomposition { parent: vec![None, Some(0)], bags: vec![vec![], vec![0]], root: 0 },
            path_len: n,
            embed: (0..n).map(|v| Some((0, v))).collect(),
            apex: Vec::new(),
            r,
        }
    }

    fn cherry(ell: usize, g: &Graph) -> ProductCertificate {
        ProductCertificate {
            h: Graph::star(2),
            decomp: RootedTreeDecomposition {
                parent: vec![None, Some(0), Some(1), Some(1)],
                bags: vec![vec![], vec![0], vec![0, 1], vec![0, 2]],
                root: 0,
            },
            path_len: ell,
            embed: (0..g.n()).map(|v| Some((v / ell, v % ell))).collect(),
            apex: Vec::new(),
            r: 1,
        }
    }

    #[test]
    fn single_vertex() {
        let (g, cert) = gen_grid(1, 1).unwrap();
        let s = product_path_sequence(&Trigraph::from_graph(&g), &cert, 1).unwrap();
        assert!(s.projected.merges.is_empty());
        verify_product_sequence(&s).unwrap();
    }

    #[test]
    fn grids_verify() {
        for m in 2..7 {
            let (g, cert) = gen_grid(m, m).unwrap();
            let s = product_path_sequence(&Trigraph::from_graph(&g), &cert, 2).unwrap();
            let st = verify_product_sequence(&s).unwrap();
            assert!(st.max_witness_bandwidth <= 6);
            assert!(st.max_red_degree <= 8);
            assert_eq!(s.projected.merges.len(), m * m - 1);
        }
    }

    #[test]
    fn branching_decomposition() {
        let h = Graph::star(3);
        let g = strong_product(&h, &Graph::path(4));
        let mut cert = cherry(4, &g);
        cert.h = h;
        cert.decomp.parent.push(Some(1));
        cert.decomp.bags.push(vec![0, 3]);
        for q in 1..5 {
            let s = product_path_sequence(&Trigraph::from_graph(&g), &cert, q).unwrap();
            verify_product_sequence(&s).unwrap();
        }
    }

    #[test]
    fn path_squares() {
        for n in [1, 2, 7, 20] {
            let p = power_sequence(&Graph::path(n), &path_cert(n, 2)).unwrap();
            assert_eq!(p.anchor_size, 5);
            let st = verify_product_sequence(&p.sequence).unwrap();
            assert!(st.max_witness_bandwidth <= 6 * p.q - 2);
        }
    }

    #[test]
    fn fan_with_apex() {
        let n = 6;
        let mut g = Graph::path(n);
        let a = g.add_vertex();
        for v in 0..n {
            g.add_edge(a, v);
        }
        let mut cert = path_cert(n, 1);
        cert.embed.push(None);
        cert.apex = vec![a];
        let s = apex_product_sequence(&Trigraph::from_graph(&g), &cert, 1).unwrap();
        assert_eq!(s.final_q(), 2);
        verify_product_sequence(&s).unwrap();
        assert!(matches!(
            product_path_sequence(&Trigraph::from_graph(&g), &cert, 1),
            Err(ProductError::Certificate(_))
        ));
    }

    #[test]
    fn too_many_signatures() {
        // the two leaf columns see the centre column differently in row 0
        let ell = 2;
        let mut g = Graph::new(3 * ell);
        g.add_edge(ell, 0);
        let cert = cherry(ell, &g);
        match product_path_sequence(&Trigraph::from_graph(&g), &cert, 1) {
            Err(ProductError::Pigeonhole(fail)) => {
                assert_eq!(fail.row, 0);
                assert_eq!(fail.signatures.len(), 2);
            }
            other => panic!("expected a pigeonhole failure, got {other:?}"),
        }
        assert!(product_path_sequence(&Trigraph::from_graph(&g), &cert, 2).is_ok());
    }
}
