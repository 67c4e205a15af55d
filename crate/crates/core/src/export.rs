//! DOT and DIMACS renderings of derived graphs.

use std::fmt::Write;

use crate::graph::{StaticDigraph, StaticGraph};

pub fn graph_to_dot(g: &StaticGraph, name: &str, label: impl Fn(usize) -> String) -> String {
    let mut s = format!("graph {name} {{\n");
    for v in 0..g.n() {
        let _ = writeln!(s, "  {v} [label=\"{}\"];", label(v));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "  {u} -- {v};");
    }
    s.push_str("}\n");
    s
}

/// Expansion vertices are labelled `v@t`.
pub fn digraph_to_dot(d: &StaticDigraph, name: &str) -> String {
    let mut s = format!("digraph {name} {{\n");
    for v in 0..d.n() {
        let label = match d.label(v) {
            Some(l) => format!("{}@{}", l.vertex, l.row),
            None => v.to_string(),
        };
        let _ = writeln!(s, "  {v} [label=\"{label}\"];");
    }
    for (u, v) in d.arcs() {
        let _ = writeln!(s, "  {u} -> {v};");
    }
    s.push_str("}\n");
    s
}

/// DIMACS edge format with 1-based vertex ids.
pub fn graph_to_dimacs(g: &StaticGraph) -> String {
    let mut s = format!("p edge {} {}\n", g.n(), g.num_edges());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "e {} {}", u + 1, v + 1);
    }
    s
}

/// DIMACS-style arc list with 1-based vertex ids.
pub fn digraph_to_dimacs(d: &StaticDigraph) -> String {
    let mut s = format!("p arc {} {}\n", d.n(), d.num_arcs());
    for (u, v) in d.arcs() {
        let _ = writeln!(s, "a {} {}", u + 1, v + 1);
    }
    s
}
