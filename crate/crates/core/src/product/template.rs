//! Per-step injections of red components into `S_{x,q,r}` and the replay
//! checker for product sequences.

use alloc::format;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::builder::ProductSequence;
use super::ProductError;
use crate::gadgets::{s_adjacent, SVertex};
use crate::sequence::ordering_stretch;
use crate::trigraph::Trigraph;

/// One part placed on a gadget vertex. Parts of different regions are mapped
/// into different copies of the gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TemplateEntry {
    pub part: usize,
    pub region: usize,
    pub vertex: SVertex,
}

/// The injection emitted for one trigraph of a sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepTemplate {
    /// The `q` of the gadget this step maps into.
    pub q: usize,
    pub entries: Vec<TemplateEntry>,
}

impl StepTemplate {
    /// Layered ordering: regions in turn, each as `A_x..A_1, Q, B_1, C_1, ...`,
    /// followed by every other part of `live` in id order.
    pub fn ordering(&self, live: impl Iterator<Item = usize>) -> Vec<usize> {
        let mut e = self.entries.clone();
        e.sort_by_key(|x| (x.region, x.vertex.layout_key()));
        let mut out: Vec<usize> = e.iter().map(|x| x.part).collect();
        let placed: hashbrown::HashSet<usize> = out.iter().copied().collect();
        out.extend(live.filter(|p| !placed.contains(p)));
        out
    }

    /// Checks that every red edge of `t` maps to an edge of `S_{x,q,r}`.
    pub fn check(&self, t: &Trigraph, x: usize, r: usize, step: usize) -> Result<(), ProductError> {
        let fail = |what| Err(ProductError::Check { step, what });
        let mut at: HashMap<usize, (usize, SVertex)> = HashMap::new();
        let mut used = hashbrown::HashSet::new();
        for e in &self.entries {
            if !t.is_live(e.part) {
                return fail(format!("template names dead part {}", e.part));
            }
            let g = e.vertex.group;
            if e.vertex.slot >= g.capacity(self.q) || g.level() > x {
                return fail(format!("part {} placed on {:?}, outside S_{{{x},{}}}", e.part, e.vertex, self.q));
            }
            if !used.insert((e.region, e.vertex)) || at.insert(e.part, (e.region, e.vertex)).is_some() {
                return fail(format!("template is not injective at part {}", e.part));
            }
        }
        for (u, v) in t.red_edges() {
            let (Some(&(ru, su)), Some(&(rv, sv))) = (at.get(&u), at.get(&v)) else {
                return fail(format!("red edge {u}-{v} has an unplaced endpoint"));
            };
            if ru != rv || !s_adjacent(su, sv, r) {
                return fail(format!("red edge {u}-{v} maps to {su:?}, {sv:?}, not an edge"));
            }
        }
        Ok(())
    }
}

/// Summary of a verified product sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductStats {
    pub steps: usize,
    pub max_witness_bandwidth: usize,
    pub max_red_degree: usize,
    pub projected_max_witness_bandwidth: usize,
    pub projected_max_red_degree: usize,
    pub bandwidth_bound: usize,
    pub degree_bound: usize,
}

/// Replays both sequences and checks templates, witness bandwidth and red
/// degree at every step; also that no red edge touches an apex vertex before
/// the final fold.
pub fn verify_product_sequence(s: &ProductSequence) -> Result<ProductStats, ProductError> {
    let padded = &s.padded;
    padded.validate()?;
    let witnesses = padded.witnesses.as_ref().ok_or(ProductError::Check {
        step: 0,
        what: "padded sequence has no witnesses".into(),
    })?;
    if s.templates.len() != padded.merges.len() + 1 {
        return Err(ProductError::Check {
            step: 0,
            what: format!("{} templates for {} trigraphs", s.templates.len(), padded.merges.len() + 1),
        });
    }
    let mut stats = ProductStats {
        steps: padded.merges.len(),
        max_witness_bandwidth: 0,
        max_red_degree: 0,
        projected_max_witness_bandwidth: 0,
        projected_max_red_degree: 0,
        bandwidth_bound: s.bandwidth_bound(),
        degree_bound: s.degree_bound(),
    };
    let mut rp = padded.replayer();
    let mut step = 0;
    loop {
        let t = rp.current();
        let tpl = &s.templates[step];
        tpl.check(t, s.path_len, s.r, step)?;
        let bw = ordering_stretch(t, &witnesses[step], step)?;
        let deg = t.max_red_degree();
        let (bwb, degb) = (bound_bw(s.r, tpl.q), bound_deg(s.r, tpl.q));
        if bw > bwb || deg > degb {
            return Err(ProductError::Check {
                step,
                what: format!("witness bandwidth {bw} (bound {bwb}), red degree {deg} (bound {degb})"),
            });
        }
        if step <= s.partial_len {
            if let Some(&a) = s.apex.iter().find(|&&a| t.is_live(a) && t.red_degree(a) > 0) {
                return Err(ProductError::Check { step, what: format!("apex {a} has a red edge") });
            }
        }
        stats.max_witness_bandwidth = stats.max_witness_bandwidth.max(bw);
        stats.max_red_degree = stats.max_red_degree.max(deg);
        if rp.advance()?.is_none() {
            break;
        }
        step += 1;
    }
    let proj = &s.projected;
    proj.validate()?;
    let pw = proj.witnesses.as_ref().ok_or(ProductError::Check {
        step: 0,
        what: "projected sequence has no witnesses".into(),
    })?;
    let mut rp = proj.replayer();
    let mut step = 0;
    loop {
        let t = rp.current();
        let bw = ordering_stretch(t, &pw[step], step)?;
        let deg = t.max_red_degree();
        if bw > stats.bandwidth_bound || deg > stats.degree_bound {
            return Err(ProductError::Check {
                step,
                what: format!("projected step: witness bandwidth {bw}, red degree {deg}"),
            });
        }
        stats.projected_max_witness_bandwidth = stats.projected_max_witness_bandwidth.max(bw);
        stats.projected_max_red_degree = stats.projected_max_red_degree.max(deg);
        if rp.advance()?.is_none() {
            break;
        }
        step += 1;
    }
    Ok(stats)
}

pub(crate) fn bound_bw(r: usize, q: usize) -> usize {
    ((2 * r + 2) * q).saturating_sub(2)
}

pub(crate) fn bound_deg(r: usize, q: usize) -> usize {
    ((3 * r + 2) * q).saturating_sub(2)
}
