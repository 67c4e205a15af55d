//! Maximum Δ-temporal matchings via independent sets of the line graph.

use crate::error::{Error, Result};
use crate::expansion::delta_temporal_line_graph;
use crate::graph::{StaticGraph, TemporalEdge, TemporalGraph};

pub const DEFAULT_MATCHING_BUDGET: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingResult {
    pub edges: Vec<TemporalEdge>,
    /// False when the greedy fallback produced the result.
    pub exact: bool,
}

/// Every two edges are vertex-disjoint or at least `delta` apart in time.
pub fn is_delta_matching(edges: &[TemporalEdge], delta: usize) -> bool {
    edges.iter().enumerate().all(|(i, e)| {
        edges[i + 1..]
            .iter()
            .all(|f| e != f && (!e.shares_endpoint(f) || e.t.abs_diff(f.t) >= delta))
    })
}

/// Maximum independent set by branch and bound (at most 64 vertices).
pub fn maximum_independent_set(g: &StaticGraph) -> Result<Vec<usize>> {
    let adj = g.adjacency_masks().ok_or_else(|| {
        Error::Budget(format!(
            "independent set search limited to 64 vertices, got {}",
            g.n()
        ))
    })?;
    let all = if g.n() == 64 {
        u64::MAX
    } else {
        (1u64 << g.n()) - 1
    };
    let mut best = 0u64;
    branch(&adj, all, 0, &mut best);
    Ok((0..g.n()).filter(|&v| best >> v & 1 == 1).collect())
}

fn branch(adj: &[u64], mut cand: u64, mut chosen: u64, best: &mut u64) {
    loop {
        // Vertices of degree at most one inside `cand` can always be taken.
        let mut forced = None;
        let mut pivot = None;
        let mut pivot_deg = 0;
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (adj[v] & cand).count_ones();
            if d <= 1 {
                forced = Some(v);
                break;
            }
            if d > pivot_deg {
                pivot_deg = d;
                pivot = Some(v);
            }
        }
        if let Some(v) = forced {
            chosen |= 1 << v;
            cand &= !(adj[v] | 1 << v);
            continue;
        }
        if chosen.count_ones() + cand.count_ones() <= best.count_ones() {
            return;
        }
        let Some(v) = pivot else {
            *best = chosen;
            return;
        };
        branch(adj, cand & !(adj[v] | 1 << v), chosen | 1 << v, best);
        cand &= !(1 << v);
    }
}

/// Exact maximum matching, refusing graphs with more than `DEFAULT_MATCHING_BUDGET` edges.
pub fn matching_exact<W>(g: &TemporalGraph<W>, delta: usize) -> Result<Vec<TemporalEdge>> {
    matching_exact_with_budget(g, delta, DEFAULT_MATCHING_BUDGET)
}

pub fn matching_exact_with_budget<W>(
    g: &TemporalGraph<W>,
    delta: usize,
    budget: usize,
) -> Result<Vec<TemporalEdge>> {
    if g.num_edges() > budget.min(64) {
        return Err(Error::Budget(format!(
            "exact matching limited to {} temporal edges, got {}",
            budget.min(64),
            g.num_edges()
        )));
    }
    let lg = delta_temporal_line_graph(g, delta);
    Ok(maximum_independent_set(&lg)?
        .into_iter()
        .map(|i| g.edges()[i])
        .collect())
}

/// Greedy maximal matching: repeatedly take the edge with fewest conflicts.
pub fn matching_greedy<W>(g: &TemporalGraph<W>, delta: usize) -> Vec<TemporalEdge> {
    let lg = delta_temporal_line_graph(g, delta);
    let mut alive = vec![true; lg.n()];
    let mut out = Vec::new();
    loop {
        let pick = (0..lg.n())
            .filter(|&v| alive[v])
            .min_by_key(|&v| (lg.neighbors(v).iter().filter(|&&w| alive[w]).count(), v));
        let Some(v) = pick else { break };
        out.push(g.edges()[v]);
        alive[v] = false;
        for &w in lg.neighbors(v) {
            alive[w] = false;
        }
    }
    out.sort_by_key(|e| (e.t, e.u, e.v));
    out
}

/// Exact within `budget` edges, otherwise the flagged greedy result.
pub fn matching<W>(g: &TemporalGraph<W>, delta: usize, budget: usize) -> MatchingResult {
    match matching_exact_with_budget(g, delta, budget) {
        Ok(edges) => MatchingResult { edges, exact: true },
        Err(_) => MatchingResult {
            edges: matching_greedy(g, delta),
            exact: false,
        },
    }
}
