//! Graphs derived from a temporal graph: static expansions, the Δ-temporal
//! line graph and the bit-label graph.
//!
//! Expansion vertex `(v, t)` has id `(t - 1) * n + v`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{StaticDigraph, StaticGraph, TemporalGraph};

pub use crate::graph::ExpansionVertexLabel;

/// Largest lifetime whose labels fit in one machine word.
pub const MAX_LABEL_TAU: usize = 62;

/// Id of appearance `(v, t)` in an expansion over `n` vertices.
pub fn appearance_id(n: usize, v: usize, t: usize) -> usize {
    (t - 1) * n + v
}

/// Inverse of [`appearance_id`].
pub fn appearance_of(n: usize, id: usize) -> ExpansionVertexLabel {
    ExpansionVertexLabel {
        vertex: id % n,
        row: id / n + 1,
    }
}

fn labels(n: usize, rows: usize) -> Vec<ExpansionVertexLabel> {
    (1..=rows)
        .flat_map(|row| (0..n).map(move |vertex| ExpansionVertexLabel { vertex, row }))
        .collect()
}

/// Rows `1..=tau`: both orientations of each temporal edge inside its row,
/// plus forward column arcs.
pub fn static_expansion<W>(g: &TemporalGraph<W>) -> StaticDigraph {
    let n = g.n();
    let mut d = StaticDigraph::with_labels(labels(n, g.tau()));
    for e in g.edges() {
        d.add_arc(appearance_id(n, e.u, e.t), appearance_id(n, e.v, e.t));
        d.add_arc(appearance_id(n, e.v, e.t), appearance_id(n, e.u, e.t));
    }
    for t in 1..g.tau() {
        for v in 0..n {
            d.add_arc(appearance_id(n, v, t), appearance_id(n, v, t + 1));
        }
    }
    d
}

/// Rows `1..=tau + 1` with diagonal arcs; always acyclic.
pub fn strict_static_expansion<W>(g: &TemporalGraph<W>) -> StaticDigraph {
    let n = g.n();
    let mut d = StaticDigraph::with_labels(labels(n, g.tau() + 1));
    for e in g.edges() {
        d.add_arc(appearance_id(n, e.u, e.t), appearance_id(n, e.v, e.t + 1));
        d.add_arc(appearance_id(n, e.v, e.t), appearance_id(n, e.u, e.t + 1));
    }
    for t in 1..=g.tau() {
        for v in 0..n {
            d.add_arc(appearance_id(n, v, t), appearance_id(n, v, t + 1));
        }
    }
    d
}

/// The non-strict expansion with orientations forgotten.
pub fn undirected_static_expansion<W>(g: &TemporalGraph<W>) -> StaticGraph {
    let d = static_expansion(g);
    StaticGraph::from_edges(d.n(), d.arcs())
}

/// One vertex per temporal edge (in edge-index order); two are adjacent iff
/// they share an endpoint and their times differ by less than `delta`.
pub fn delta_temporal_line_graph<W>(g: &TemporalGraph<W>, delta: usize) -> StaticGraph {
    let es = g.edges();
    let mut lg = StaticGraph::new(es.len());
    if delta == 0 {
        return lg;
    }
    for v in 0..g.n() {
        let inc = g.incident(v);
        for (a, x) in inc.iter().enumerate() {
            for y in &inc[a + 1..] {
                if y.t - x.t < delta {
                    lg.add_edge(x.edge, y.edge);
                } else {
                    break;
                }
            }
        }
    }
    lg
}

/// Underlying graph whose edges carry a bitmask of their time stamps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    pub base: StaticGraph,
    /// Bit `t - 1` of `label[&(u, v)]` (with `u < v`) is set iff `(u, v, t)` is a temporal edge.
    pub label: BTreeMap<(usize, usize), u64>,
    pub tau: usize,
}

impl LabeledGraph {
    /// Rebuilds the temporal graph the labels encode.
    pub fn to_temporal(&self) -> Result<TemporalGraph> {
        let mut edges = Vec::new();
        for (&(u, v), &bits) in &self.label {
            for t in 1..=self.tau {
                if bits >> (t - 1) & 1 == 1 {
                    edges.push((u, v, t));
                }
            }
        }
        TemporalGraph::new(self.base.n(), self.tau, edges)
    }
}

pub fn label_graph<W>(g: &TemporalGraph<W>) -> Result<LabeledGraph> {
    if g.tau() > MAX_LABEL_TAU {
        return Err(Error::Unsupported(format!(
            "lifetime {} exceeds {} for bit labels",
            g.tau(),
            MAX_LABEL_TAU
        )));
    }
    let mut label = BTreeMap::new();
    for e in g.edges() {
        *label.entry((e.u, e.v)).or_insert(0u64) |= 1 << (e.t - 1);
    }
    Ok(LabeledGraph {
        base: g.underlying_graph(),
        label,
        tau: g.tau(),
    })
}
