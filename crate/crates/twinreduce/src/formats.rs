//! JSON, edge-list and DOT formats.
//!
//! Graphs and trigraphs share one JSON shape, `{"n", "edges", "red"}`, where
//! `edges` are black and `red` may be omitted. Edge lists hold one pair per
//! line, optionally followed by `red`; a `# vertices N` line keeps isolated
//! vertices.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use twinreduce_core::product::{ProductCertificate, RootedTreeDecomposition};
use twinreduce_core::sequence::{Merge, ReductionSequence};
use twinreduce_core::{Graph, Trigraph};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Edgelist,
    Dot,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "json" => Some(Format::Json),
            "edgelist" | "edges" => Some(Format::Edgelist),
            "dot" => Some(Format::Dot),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    #[serde(default)]
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub red: Vec<[usize; 2]>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph) -> Self {
        GraphJson { n: g.n(), edges: g.edges().map(|(u, v)| [u, v]).collect(), red: Vec::new() }
    }

    /// Base trigraphs only: ids must be `0..n`.
    pub fn from_trigraph(t: &Trigraph) -> Self {
        GraphJson {
            n: t.base_n(),
            edges: t.black_edges().map(|(u, v)| [u, v]).collect(),
            red: t.red_edges().map(|(u, v)| [u, v]).collect(),
        }
    }

    fn check(&self) -> Result<(), FormatError> {
        for &[u, v] in self.edges.iter().chain(&self.red) {
            if u >= self.n || v >= self.n {
                return Err(FormatError::Invalid(format!("edge {u}-{v} outside 0..{}", self.n)));
            }
            if u == v {
                return Err(FormatError::Invalid(format!("loop at {u}")));
            }
        }
        Ok(())
    }

    /// The black edges as a graph; red edges are rejected.
    pub fn to_graph(&self) -> Result<Graph, FormatError> {
        self.check()?;
        if !self.red.is_empty() {
            return Err(FormatError::Invalid("expected a graph, found red edges".into()));
        }
        Ok(Graph::from_edges(self.n, self.edges.iter().map(|&[u, v]| (u, v))))
    }

    pub fn to_trigraph(&self) -> Result<Trigraph, FormatError> {
        self.check()?;
        let pairs = |es: &[[usize; 2]]| es.iter().map(|&[u, v]| (u, v)).collect::<Vec<_>>();
        Trigraph::from_pairs(self.n, &pairs(&self.edges), &pairs(&self.red))
            .map_err(|e| FormatError::Invalid(e.to_string()))
    }
}

pub fn graph_from_json(s: &str) -> Result<Graph, FormatError> {
    serde_json::from_str::<GraphJson>(s)?.to_graph()
}

pub fn trigraph_from_json(s: &str) -> Result<Trigraph, FormatError> {
    serde_json::from_str::<GraphJson>(s)?.to_trigraph()
}

pub fn graph_to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::from_graph(g)).expect("graphs serialise")
}

/// Parses an edge list. Vertices are `0..=max id`, or `0..N` after `# vertices N`.
pub fn parse_edgelist(s: &str) -> Result<GraphJson, FormatError> {
    let mut out = GraphJson { n: 0, edges: Vec::new(), red: Vec::new() };
    let mut declared = None;
    for (i, raw) in s.lines().enumerate() {
        let line = i + 1;
        let err = |msg: String| FormatError::Parse { line, msg };
        let text = raw.trim();
        if let Some(c) = text.strip_prefix('#') {
            let mut words = c.split_whitespace();
            if words.next() == Some("vertices") {
                let n = words.next().and_then(|w| w.parse().ok()).ok_or_else(|| err("bad vertex count".into()))?;
                declared = Some(n);
            }
            continue;
        }
        if text.is_empty() {
            continue;
        }
        let words: Vec<&str> = text.split_whitespace().collect();
        let id = |w: &str| w.parse::<usize>().map_err(|_| err(format!("'{w}' is not a vertex id")));
        let (u, v, red) = match words.as_slice() {
            [u, v] => (id(u)?, id(v)?, false),
            [u, v, "red"] => (id(u)?, id(v)?, true),
            [u, v, "black"] => (id(u)?, id(v)?, false),
            _ => return Err(err(format!("expected 'u v [red]', got '{text}'"))),
        };
        if u == v {
            return Err(err(format!("loop at {u}")));
        }
        out.n = out.n.max(u + 1).max(v + 1);
        if red {
            out.red.push([u, v]);
        } else {
            out.edges.push([u, v]);
        }
    }
    if let Some(n) = declared {
        if n < out.n {
            return Err(FormatError::Invalid(format!("declared {n} vertices, edges use {}", out.n)));
        }
        out.n = n;
    }
    Ok(out)
}

pub fn write_edgelist(g: &GraphJson) -> String {
    let mut s = format!("# vertices {}\n", g.n);
    for [u, v] in &g.edges {
        let _ = writeln!(s, "{u} {v}");
    }
    for [u, v] in &g.red {
        let _ = writeln!(s, "{u} {v} red");
    }
    s
}

/// DOT for a (possibly contracted) trigraph; red edges get `color=red`.
pub fn trigraph_to_dot(t: &Trigraph) -> String {
    let mut s = String::from("graph G {\n");
    for v in t.vertices() {
        let _ = writeln!(s, "  {v};");
    }
    for (u, v) in t.black_edges() {
        let _ = writeln!(s, "  {u} -- {v};");
    }
    for (u, v) in t.red_edges() {
        let _ = writeln!(s, "  {u} -- {v} [color=red];");
    }
    s.push_str("}\n");
    s
}

/// Converts between formats. DOT is output only.
pub fn convert(input: &str, from: Format, to: Format) -> Result<String, FormatError> {
    let g = match from {
        Format::Json => serde_json::from_str::<GraphJson>(input)?,
        Format::Edgelist => parse_edgelist(input)?,
        Format::Dot => return Err(FormatError::Invalid("DOT is an export-only format".into())),
    };
    g.check()?;
    Ok(match to {
        Format::Json => serde_json::to_string(&g)?,
        Format::Edgelist => write_edgelist(&g),
        Format::Dot => trigraph_to_dot(&g.to_trigraph()?),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceJson {
    pub base: GraphJson,
    /// `[u, v, w]`: `u` and `v` merge into the new id `w`.
    pub merges: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<Vec<usize>>>,
}

impl SequenceJson {
    pub fn from_sequence(s: &ReductionSequence) -> Self {
        SequenceJson {
            base: GraphJson::from_trigraph(&s.base),
            merges: s.merges.iter().map(|m| [m.u, m.v, m.w]).collect(),
            witnesses: s.witnesses.clone(),
        }
    }

    pub fn to_sequence(&self) -> Result<ReductionSequence, FormatError> {
        Ok(ReductionSequence {
            base: self.base.to_trigraph()?,
            merges: self.merges.iter().map(|&[u, v, w]| Merge { u, v, w }).collect(),
            witnesses: self.witnesses.clone(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub parent: Vec<Option<usize>>,
    pub bags: Vec<Vec<usize>>,
    pub root: usize,
}

/// A product certificate: `embed[v]` is `[h, p]`, or null for apex vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub h: GraphJson,
    pub decomposition: DecompositionJson,
    pub path_len: usize,
    pub embed: Vec<Option<[usize; 2]>>,
    #[serde(default)]
    pub apex: Vec<usize>,
    #[serde(default = "one")]
    pub r: usize,
}

fn one() -> usize {
    1
}

impl CertificateJson {
    pub fn from_certificate(c: &ProductCertificate) -> Self {
        CertificateJson {
            h: GraphJson::from_graph(&c.h),
            decomposition: DecompositionJson {
                parent: c.decomp.parent.clone(),
                bags: c.decomp.bags.clone(),
                root: c.decomp.root,
            },
            path_len: c.path_len,
            embed: c.embed.iter().map(|e| e.map(|(h, p)| [h, p])).collect(),
            apex: c.apex.clone(),
            r: c.r,
        }
    }

    pub fn to_certificate(&self) -> Result<ProductCertificate, FormatError> {
        Ok(ProductCertificate {
            h: self.h.to_graph()?,
            decomp: RootedTreeDecomposition {
                parent: self.decomposition.parent.clone(),
                bags: self.decomposition.bags.clone(),
                root: self.decomposition.root,
            },
            path_len: self.path_len,
            embed: self.embed.iter().map(|e| e.map(|[h, p]| (h, p))).collect(),
            apex: self.apex.clone(),
            r: self.r,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edgelist_to_json() {
        let j = convert("0 1\n1 2", Format::Edgelist, Format::Json).unwrap();
        assert_eq!(graph_from_json(&j).unwrap(), Graph::path(3));
    }

    #[test]
    fn json_round_trip() {
        let mut g = Graph::path(4);
        g.add_vertex();
        let j = graph_to_json(&g);
        let e = convert(&j, Format::Json, Format::Edgelist).unwrap();
        assert_eq!(convert(&e, Format::Edgelist, Format::Json).unwrap(), j);
    }

    #[test]
    fn red_edges_in_dot() {
        let dot = convert("0 1\n1 2 red\n", Format::Edgelist, Format::Dot).unwrap();
        assert!(dot.contains("0 -- 1;"));
        assert!(dot.contains("1 -- 2 [color=red];"));
    }

    #[test]
    fn errors_carry_lines() {
        match parse_edgelist("0 1\n\n1 x\n") {
            Err(FormatError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(convert("graph G {}", Format::Dot, Format::Json).is_err());
    }

    #[test]
    fn certificates_round_trip() {
        let (_, c) = twinreduce_core::gadgets::gen_grid(2, 3).unwrap();
        let j = CertificateJson::from_certificate(&c);
        let back = j.to_certificate().unwrap();
        assert_eq!(CertificateJson::from_certificate(&back), j);
    }
}
