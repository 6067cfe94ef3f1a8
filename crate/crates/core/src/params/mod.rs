//! Graph parameters applied to red graphs and to hypotheses.
//!
//! Exact evaluators reject inputs above their size limits instead of falling
//! back to heuristics; callers pick the fallback.

mod bandwidth;
mod cliques;
mod colouring;
mod width;

use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::Graph;

pub use bandwidth::{bandwidth_exact, bandwidth_heuristic, bandwidth_lower_bound, ordering_bandwidth};
pub use cliques::{clique_counts, cliques_up_to};
pub use colouring::{col_s_exact, col_s_greedy, degeneracy, reach_sizes};
pub use width::{pathwidth_exact, treewidth_exact, TreeDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("graph has {n} vertices, above the limit of {max} for {what}")]
    TooLarge { what: &'static str, n: usize, max: usize },
    #[error("value exceeds the cap {cap} (search exhausted)")]
    ExceedsCap { cap: usize },
    #[error("search exceeded its budget of {budget} states")]
    Budget { budget: usize },
}

/// Size limits and search budgets for the exact evaluators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub bandwidth_max_n: usize,
    pub width_max_n: usize,
    pub col_max_n: usize,
    pub state_budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            bandwidth_max_n: 24,
            width_max_n: 128,
            col_max_n: 18,
            state_budget: 1 << 20,
        }
    }
}

impl Limits {
    /// Raises every size cap to at least `n` (mask width permitting).
    pub fn with_max_n(mut self, n: usize) -> Self {
        self.bandwidth_max_n = n.min(128);
        self.width_max_n = self.width_max_n.max(n).min(128);
        self.col_max_n = n.min(128);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A vertex ordering (bandwidth, colouring numbers).
    Ordering(Vec<usize>),
    /// A tree- or path-decomposition.
    Decomposition(TreeDecomposition),
    /// A peeling order: each vertex has few neighbours later in the order.
    Peeling(Vec<usize>),
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamResult {
    pub value: usize,
    pub witness: Witness,
    pub exact: bool,
}

pub fn max_degree(g: &Graph) -> usize {
    (0..g.n()).map(|v| g.degree(v)).max().unwrap_or(0)
}

pub fn max_component_size(g: &Graph) -> usize {
    g.components().iter().map(Vec::len).max().unwrap_or(0)
}

/// A parameter evaluated on red graphs.
pub trait RedParam {
    fn eval(&self, g: &Graph) -> Result<usize, ParamError>;

    fn name(&self) -> String {
        String::from("custom")
    }
}

impl<F> RedParam for F
where
    F: Fn(&Graph) -> Result<usize, ParamError>,
{
    fn eval(&self, g: &Graph) -> Result<usize, ParamError> {
        self(g)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParamKind {
    MaxDegree,
    Bandwidth,
    Pathwidth,
    Treewidth,
    ComponentSize,
    Degeneracy,
    MaxDegreePlusPathwidth,
    MaxDegreePlusTreewidth,
}

impl ParamKind {
    pub const ALL: [ParamKind; 8] = [
        ParamKind::MaxDegree,
        ParamKind::Bandwidth,
        ParamKind::Pathwidth,
        ParamKind::Treewidth,
        ParamKind::ComponentSize,
        ParamKind::Degeneracy,
        ParamKind::MaxDegreePlusPathwidth,
        ParamKind::MaxDegreePlusTreewidth,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ParamKind::MaxDegree => "maxdeg",
            ParamKind::Bandwidth => "bw",
            ParamKind::Pathwidth => "pw",
            ParamKind::Treewidth => "tw",
            ParamKind::ComponentSize => "star",
            ParamKind::Degeneracy => "degeneracy",
            ParamKind::MaxDegreePlusPathwidth => "maxdeg+pw",
            ParamKind::MaxDegreePlusTreewidth => "maxdeg+tw",
        }
    }

    pub fn parse(s: &str) -> Option<ParamKind> {
        Self::ALL.into_iter().find(|k| k.as_str() == s)
    }

    pub fn with_limits(self, limits: Limits) -> Param {
        Param { kind: self, limits }
    }
}

/// A [`ParamKind`] bound to evaluator limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Param {
    pub kind: ParamKind,
    pub limits: Limits,
}

impl RedParam for Param {
    fn eval(&self, g: &Graph) -> Result<usize, ParamError> {
        let l = &self.limits;
        Ok(match self.kind {
            ParamKind::MaxDegree => max_degree(g),
            ParamKind::Bandwidth => bandwidth_exact(g, None, l)?.value,
            ParamKind::Pathwidth => pathwidth_exact(g, l)?.value,
            ParamKind::Treewidth => treewidth_exact(g, l)?.value,
            ParamKind::ComponentSize => max_component_size(g),
            ParamKind::Degeneracy => degeneracy(g).value,
            ParamKind::MaxDegreePlusPathwidth => max_degree(g) + pathwidth_exact(g, l)?.value,
            ParamKind::MaxDegreePlusTreewidth => max_degree(g) + treewidth_exact(g, l)?.value,
        })
    }

    fn name(&self) -> String {
        String::from(self.kind.as_str())
    }
}

impl RedParam for ParamKind {
    fn eval(&self, g: &Graph) -> Result<usize, ParamError> {
        self.with_limits(Limits::default()).eval(g)
    }

    fn name(&self) -> String {
        String::from(self.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_basics() {
        let g = Graph::star(5);
        assert_eq!(max_degree(&g), 5);
        assert_eq!(max_component_size(&g), 6);
        assert_eq!(degeneracy(&g).value, 1);
    }

    #[test]
    fn kind_names_round_trip() {
        for k in ParamKind::ALL {
            assert_eq!(ParamKind::parse(k.as_str()), Some(k));
        }
    }

    #[test]
    fn closures_are_params() {
        let f = |g: &Graph| Ok(g.m());
        assert_eq!(f.eval(&Graph::path(4)), Ok(3));
    }
}
