//! Temporal graphs and the plain graphs derived from them.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Weight;
use crate::Rational;

/// An edge `{u, v}` present at time `t`, stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TemporalEdge {
    pub u: usize,
    pub v: usize,
    pub t: usize,
}

impl TemporalEdge {
    /// Builds the canonical form of `{a, b}` at time `t`.
    pub fn new(a: usize, b: usize, t: usize) -> Self {
        let (u, v) = if a <= b { (a, b) } else { (b, a) };
        TemporalEdge { u, v, t }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint opposite to `x`.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn shares_endpoint(&self, o: &TemporalEdge) -> bool {
        self.contains(o.u) || self.contains(o.v)
    }

    fn time_key(&self) -> (usize, usize, usize) {
        (self.t, self.u, self.v)
    }
}

/// Neighbour entry of the incidence lists: the other endpoint, the time and the edge index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub to: usize,
    pub t: usize,
    pub edge: usize,
}

/// A temporal graph on vertices `0..n` with lifetime `tau`.
///
/// Edges are kept sorted by `(t, u, v)`; edge indices refer to that order.
#[derive(Clone, Debug)]
pub struct TemporalGraph<W = Rational> {
    n: usize,
    tau: usize,
    edges: Vec<TemporalEdge>,
    weights: Option<Vec<W>>,
    index: HashMap<TemporalEdge, usize>,
    incident: Vec<Vec<Incidence>>,
    layer_start: Vec<usize>,
}

impl<W: PartialEq> PartialEq for TemporalGraph<W> {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && self.tau == o.tau && self.edges == o.edges && self.weights == o.weights
    }
}

impl<W: Weight> TemporalGraph<W> {
    /// Unweighted temporal graph. Edge endpoints may be given in either order.
    pub fn new<I>(n: usize, tau: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize)>,
    {
        let edges: Vec<_> = edges
            .into_iter()
            .map(|(a, b, t)| TemporalEdge::new(a, b, t))
            .collect();
        Self::build(n, tau, edges, None)
    }

    /// Weighted temporal graph; every edge carries a weight.
    pub fn with_weights<I>(n: usize, tau: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize, usize), W)>,
    {
        let (edges, weights): (Vec<_>, Vec<_>) = edges
            .into_iter()
            .map(|((a, b, t), w)| (TemporalEdge::new(a, b, t), w))
            .unzip();
        Self::build(n, tau, edges, Some(weights))
    }

    fn build(
        n: usize,
        tau: usize,
        edges: Vec<TemporalEdge>,
        weights: Option<Vec<W>>,
    ) -> Result<Self> {
        if tau == 0 {
            return Err(Error::Domain("lifetime must be positive".into()));
        }
        for e in &edges {
            if e.u == e.v {
                return Err(Error::Domain(format!(
                    "self-loop at vertex {} time {}",
                    e.u, e.t
                )));
            }
            if e.v >= n {
                return Err(Error::Domain(format!(
                    "vertex {} out of range 0..{}",
                    e.v, n
                )));
            }
            if e.t == 0 || e.t > tau {
                return Err(Error::Domain(format!(
                    "time stamp {} outside 1..{}",
                    e.t, tau
                )));
            }
        }
        if let Some(ws) = &weights {
            if ws.iter().any(|w| *w < W::zero()) {
                return Err(Error::Domain("negative weight".into()));
            }
        }
        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.sort_by_key(|&i| edges[i].time_key());
        let sorted: Vec<TemporalEdge> = order.iter().map(|&i| edges[i]).collect();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                let e = w[0];
                return Err(Error::Domain(format!(
                    "duplicate temporal edge {} {} {}",
                    e.u, e.v, e.t
                )));
            }
        }
        let weights = weights.map(|ws| order.iter().map(|&i| ws[i].clone()).collect());
        Ok(Self::assemble(n, tau, sorted, weights))
    }

    fn assemble(n: usize, tau: usize, edges: Vec<TemporalEdge>, weights: Option<Vec<W>>) -> Self {
        let mut incident = vec![Vec::new(); n];
        let mut index = HashMap::with_capacity(edges.len());
        let mut layer_start = vec![0; tau + 2];
        for (i, e) in edges.iter().enumerate() {
            index.insert(*e, i);
            incident[e.u].push(Incidence {
                to: e.v,
                t: e.t,
                edge: i,
            });
            incident[e.v].push(Incidence {
                to: e.u,
                t: e.t,
                edge: i,
            });
            layer_start[e.t + 1] = i + 1;
        }
        for t in 1..=tau + 1 {
            layer_start[t] = layer_start[t].max(layer_start[t - 1]);
        }
        TemporalGraph {
            n,
            tau,
            edges,
            weights,
            index,
            incident,
            layer_start,
        }
    }

    /// Keeps only the edges for which `keep` holds, together with their weights.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, &TemporalEdge) -> bool) -> Self {
        let mut edges = Vec::new();
        let mut weights = self.weights.as_ref().map(|_| Vec::new());
        for (i, e) in self.edges.iter().enumerate() {
            if keep(i, e) {
                edges.push(*e);
                if let (Some(out), Some(ws)) = (weights.as_mut(), self.weights.as_ref()) {
                    out.push(ws[i].clone());
                }
            }
        }
        Self::assemble(self.n, self.tau, edges, weights)
    }

    /// Removes every edge incident to a vertex marked in `removed`.
    pub fn without_vertices(&self, removed: &[bool]) -> Self {
        self.filter_edges(|_, e| !removed[e.u] && !removed[e.v])
    }

    /// Re-weights the graph into another scalar type.
    pub fn map_weights<V: Weight>(&self, f: impl Fn(&W) -> V) -> TemporalGraph<V> {
        TemporalGraph::assemble(
            self.n,
            self.tau,
            self.edges.clone(),
            self.weights.as_ref().map(|ws| ws.iter().map(f).collect()),
        )
    }

    /// Drops all weights.
    pub fn unweighted(&self) -> Self {
        Self::assemble(self.n, self.tau, self.edges.clone(), None)
    }

    /// Same graph with a different, not smaller than necessary, lifetime.
    pub fn with_tau(&self, tau: usize) -> Result<Self> {
        Self::build(self.n, tau, self.edges.clone(), self.weights.clone())
    }

    /// Weight of edge `i`, or one when the graph is unweighted.
    pub fn weight_or_one(&self, i: usize) -> W {
        match &self.weights {
            Some(ws) => ws[i].clone(),
            None => W::one(),
        }
    }
}

impl<W> TemporalGraph<W> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn weights(&self) -> Option<&[W]> {
        self.weights.as_deref()
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn edge_index(&self, e: &TemporalEdge) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn has_edge(&self, a: usize, b: usize, t: usize) -> bool {
        self.index.contains_key(&TemporalEdge::new(a, b, t))
    }

    /// Incidences of `v`, sorted by time.
    pub fn incident(&self, v: usize) -> &[Incidence] {
        &self.incident[v]
    }

    /// Edges with time stamp `t`.
    pub fn edges_at(&self, t: usize) -> &[TemporalEdge] {
        if t == 0 || t > self.tau {
            return &[];
        }
        &self.edges[self.layer_start[t]..self.layer_start[t + 1]]
    }

    /// Number of edges in each layer, indexed by `t - 1`.
    pub fn layer_edge_counts(&self) -> Vec<usize> {
        (1..=self.tau).map(|t| self.edges_at(t).len()).collect()
    }

    /// Vertices that have no temporal edge at all.
    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&v| self.incident[v].is_empty())
            .collect()
    }

    /// Union of all layers with time stamps dropped.
    pub fn underlying_graph(&self) -> StaticGraph {
        StaticGraph::from_edges(self.n, self.edges.iter().map(|e| (e.u, e.v)))
    }

    /// The static graph of edges present at time `t`.
    pub fn layer(&self, t: usize) -> Result<StaticGraph> {
        if t == 0 || t > self.tau {
            return Err(Error::Domain(format!(
                "layer {} outside 1..{}",
                t, self.tau
            )));
        }
        Ok(StaticGraph::from_edges(
            self.n,
            self.edges_at(t).iter().map(|e| (e.u, e.v)),
        ))
    }

    /// Union of layers `i..i + delta`.
    pub fn window_union(&self, i: usize, delta: usize) -> Result<StaticGraph> {
        if i == 0 || delta == 0 || i + delta - 1 > self.tau {
            return Err(Error::Domain(format!(
                "window start {} length {} does not fit lifetime {}",
                i, delta, self.tau
            )));
        }
        let lo = self.layer_start[i];
        let hi = self.layer_start[i + delta];
        Ok(StaticGraph::from_edges(
            self.n,
            self.edges[lo..hi].iter().map(|e| (e.u, e.v)),
        ))
    }
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct StaticGraph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl StaticGraph {
    pub fn new(n: usize) -> Self {
        StaticGraph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Collects the given pairs, dropping duplicates.
    ///
    /// Panics on a self-loop or an endpoint outside `0..n`.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = StaticGraph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        Self::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v)))
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0);
        }
        g
    }

    /// `rows × cols` grid with vertex `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut g = StaticGraph::new(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    g.add_edge(v, v + 1);
                }
                if r + 1 < rows {
                    g.add_edge(v, v + cols);
                }
            }
        }
        g
    }

    /// Adds `{u, v}`; returns false if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "self-loop at {u}");
        assert!(
            u < self.n() && v < self.n(),
            "edge {{{u},{v}}} out of range"
        );
        match self.adj[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.m += 1;
                true
            }
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subgraph induced by `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> StaticGraph {
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = StaticGraph::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                if pos[w] != usize::MAX && pos[w] > i {
                    g.add_edge(i, pos[w]);
                }
            }
        }
        g
    }

    /// Adjacency bitmasks, available for graphs with at most 64 vertices.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        (self.n() <= 64).then(|| {
            self.adj
                .iter()
                .map(|ns| ns.iter().fold(0u64, |m, &v| m | (1u64 << v)))
                .collect()
        })
    }
}

/// Provenance of an expansion vertex: the original vertex and its time row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExpansionVertexLabel {
    pub vertex: usize,
    pub row: usize,
}

/// Directed graph without self-loops, optionally labelled with expansion provenance.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct StaticDigraph {
    out: Vec<Vec<usize>>,
    m: usize,
    labels: Option<Vec<ExpansionVertexLabel>>,
}

impl StaticDigraph {
    pub fn new(n: usize) -> Self {
        StaticDigraph {
            out: vec![Vec::new(); n],
            m: 0,
            labels: None,
        }
    }

    pub fn with_labels(labels: Vec<ExpansionVertexLabel>) -> Self {
        let mut d = StaticDigraph::new(labels.len());
        d.labels = Some(labels);
        d
    }

    /// Adds the arc `u → v`; returns false if it was already present.
    pub fn add_arc(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "self-loop at {u}");
        match self.out[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.out[u].insert(pos, v);
                self.m += 1;
                true
            }
        }
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn num_arcs(&self) -> usize {
        self.m
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn label(&self, v: usize) -> Option<ExpansionVertexLabel> {
        self.labels.as_ref().map(|ls| ls[v])
    }

    pub fn labels(&self) -> Option<&[ExpansionVertexLabel]> {
        self.labels.as_deref()
    }

    /// A topological order, or `None` if the digraph has a directed cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; self.n()];
        for (_, v) in self.arcs() {
            indeg[v] += 1;
        }
        let mut queue: VecDeque<usize> = (0..self.n()).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n());
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in &self.out[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push_back(v);
                }
            }
        }
        (order.len() == self.n()).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Vertices reachable from `s`, including `s`.
    pub fn reachable_from(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in &self.out[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}
