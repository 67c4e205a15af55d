//! Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use itertools::Itertools;
use tempotw::decomposition::TreeDecomposition;
use tempotw::reach::WalkQuery;
use tempotw::{StaticGraph, TemporalEdge, TemporalGraph};

/// Left column bottom to top is 0, 1, 2; right column is 3, 4, 5.
pub const SAMPLE_VERTICES: [&str; 6] = ["l0", "l1", "l2", "r0", "r1", "r2"];

pub fn sample() -> TemporalGraph {
    let (l0, l1, l2, r0, r1, r2) = (0, 1, 2, 3, 4, 5);
    let mut edges = Vec::new();
    for t in 1..=3 {
        edges.push((l1, l0, t));
        edges.push((l1, l2, t));
    }
    edges.extend([(r1, r0, 1), (r1, r2, 1), (l1, r1, 1)]);
    edges.extend([
        (l0, r0, 2),
        (l0, r0, 3),
        (l2, r2, 3),
        (l1, r0, 3),
        (l1, r2, 3),
    ]);
    TemporalGraph::new(6, 3, edges).unwrap()
}

pub fn sample_text() -> String {
    tempotw::io::write_temporal_graph(&sample())
}

/// Vertices: l2 l1 l0 r2 r1 r0 = 0..6, then l2' l1' l0' r2' r0' = 6..11.
pub fn width_two_graph() -> StaticGraph {
    StaticGraph::from_edges(
        11,
        [
            (0, 1),
            (1, 2),
            (1, 4),
            (3, 4),
            (4, 5),
            (5, 8),
            (6, 7),
            (7, 8),
            (8, 10),
            (6, 9),
            (7, 10),
            (7, 9),
        ],
    )
}

/// Bags A..F of the drawing, tree A–C, B–C, C–D, D–E, E–F.
pub fn width_two_td() -> TreeDecomposition {
    TreeDecomposition::new(
        vec![
            vec![1, 2],
            vec![0, 1],
            vec![1, 3, 4],
            vec![4, 5, 8],
            vec![7, 8, 10],
            vec![6, 7, 9],
        ],
        vec![(0, 2), (1, 2), (2, 3), (3, 4), (4, 5)],
    )
}

/// Result of enumerating walks: reached vertices and earliest arrival per vertex.
pub struct WalkEnumeration {
    pub reached: Vec<bool>,
    pub earliest: Vec<Option<usize>>,
}

/// Exhaustive depth-first enumeration of walks that never revisit a
/// `(vertex, time)` state on the current walk. Every reachable state is hit
/// by such a walk, so the reached set is exact.
pub fn enumerate_walks<W>(g: &TemporalGraph<W>, q: &WalkQuery) -> WalkEnumeration {
    let mut out = WalkEnumeration {
        reached: vec![false; g.n()],
        earliest: vec![None; g.n()],
    };
    out.reached[q.source] = true;
    let mut on_walk = vec![false; g.n() * (g.tau() + 1)];
    let min_gap = if q.strict {
        q.alpha.unwrap_or(0).max(1)
    } else {
        q.alpha.unwrap_or(0)
    };
    let max_gap = q.beta.unwrap_or(usize::MAX);
    fn step<W>(
        g: &TemporalGraph<W>,
        q: &WalkQuery,
        gaps: (usize, usize),
        v: usize,
        last: Option<usize>,
        on_walk: &mut [bool],
        out: &mut WalkEnumeration,
    ) {
        for e in g.edges() {
            if !e.contains(v) {
                continue;
            }
            let ok = match last {
                None => e.t >= q.depart_after,
                Some(tl) => e.t >= tl && e.t - tl >= gaps.0 && e.t - tl <= gaps.1,
            };
            let w = e.other(v);
            let id = w * (g.tau() + 1) + e.t;
            if !ok || on_walk[id] {
                continue;
            }
            out.reached[w] = true;
            if w != q.source {
                out.earliest[w] = Some(out.earliest[w].map_or(e.t, |a: usize| a.min(e.t)));
            }
            on_walk[id] = true;
            step(g, q, gaps, w, Some(e.t), on_walk, out);
            on_walk[id] = false;
        }
    }
    step(
        g,
        q,
        (min_gap, max_gap),
        q.source,
        None,
        &mut on_walk,
        &mut out,
    );
    out
}

/// Whether two distinct temporal edges may both be in a Δ-matching.
pub fn compatible(a: &TemporalEdge, b: &TemporalEdge, delta: usize) -> bool {
    let disjoint = a.u != b.u && a.u != b.v && a.v != b.u && a.v != b.v;
    disjoint || a.t.abs_diff(b.t) >= delta
}

/// Largest Δ-matching by trying every edge subset.
pub fn matching_by_subsets<W>(g: &TemporalGraph<W>, delta: usize) -> usize {
    let e = g.edges();
    let m = e.len();
    assert!(m <= 20);
    let mut conflict = vec![0u32; m];
    for i in 0..m {
        for j in 0..m {
            if i != j && !compatible(&e[i], &e[j], delta) {
                conflict[i] |= 1 << j;
            }
        }
    }
    (0u32..1 << m)
        .filter(|&s| (0..m).all(|i| s >> i & 1 == 0 || conflict[i] & s == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn has_clique(g: &StaticGraph, r: usize) -> bool {
    (0..g.n()).combinations(r).any(|c| {
        c.iter()
            .tuple_combinations()
            .all(|(&a, &b)| g.has_edge(a, b))
    })
}

/// Treewidth as the best elimination order; only for tiny graphs.
pub fn treewidth_by_orders(g: &StaticGraph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let base: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << w))
        .collect();
    (0..n)
        .permutations(n)
        .map(|order| {
            let mut adj = base.clone();
            let mut gone = 0u64;
            let mut width = 0;
            for &v in &order {
                let nb = adj[v] & !gone;
                width = width.max(nb.count_ones() as usize);
                for (w, a) in adj.iter_mut().enumerate() {
                    if nb >> w & 1 == 1 {
                        *a |= nb & !(1 << w);
                    }
                }
                gone |= 1 << v;
            }
            width
        })
        .min()
        .unwrap()
}

/// One representative per isomorphism class of graphs on `n` vertices.
pub fn graphs_up_to_isomorphism(n: usize) -> Vec<StaticGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let index = |a: usize, b: usize| {
        pairs
            .iter()
            .position(|&p| p == (a.min(b), a.max(b)))
            .unwrap()
    };
    let relabel: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| pairs.iter().map(|&(a, b)| index(p[a], p[b])).collect())
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let canon = relabel
            .iter()
            .map(|r| {
                (0..pairs.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .fold(0u32, |m, i| m | 1 << r[i])
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            let edges = (0..pairs.len())
                .filter(|&i| canon >> i & 1 == 1)
                .map(|i| pairs[i]);
            out.push(StaticGraph::from_edges(n, edges));
        }
    }
    out
}

/// Truth-table satisfiability for a clause list over variables `1..=vars`.
pub fn satisfiable(vars: usize, clauses: &[Vec<i32>]) -> bool {
    (0u32..1 << vars).any(|a| {
        clauses.iter().all(|c| {
            c.iter()
                .any(|&l| (a >> (l.unsigned_abs() - 1) & 1 == 1) == (l > 0))
        })
    })
}

/// Vertices reached from `source` by strict (α,β)-paths avoiding deleted edges,
/// found by listing every vertex-simple path.
pub fn path_reach_by_enumeration<W>(
    g: &TemporalGraph<W>,
    source: usize,
    alpha: usize,
    beta: usize,
    deleted: &[bool],
) -> usize {
    fn go<W>(
        g: &TemporalGraph<W>,
        v: usize,
        last: Option<usize>,
        ab: (usize, usize),
        deleted: &[bool],
        on: &mut Vec<bool>,
        hit: &mut Vec<bool>,
    ) {
        for (i, e) in g.edges().iter().enumerate() {
            if deleted[i] || !e.contains(v) || on[e.other(v)] {
                continue;
            }
            if let Some(tl) = last {
                if e.t <= tl || e.t - tl < ab.0.max(1) || e.t - tl > ab.1 {
                    continue;
                }
            }
            let w = e.other(v);
            hit[w] = true;
            on[w] = true;
            go(g, w, Some(e.t), ab, deleted, on, hit);
            on[w] = false;
        }
    }
    let mut on = vec![false; g.n()];
    let mut hit = vec![false; g.n()];
    on[source] = true;
    hit[source] = true;
    go(g, source, None, (alpha, beta), deleted, &mut on, &mut hit);
    hit.iter().filter(|&&b| b).count()
}

/// Hop-by-hop check of a walk given as `(start, [(to, t)])`.
pub fn walk_respects<W>(
    g: &TemporalGraph<W>,
    q: &WalkQuery,
    start: usize,
    hops: &[(usize, usize)],
) -> bool {
    let min_gap = if q.strict {
        q.alpha.unwrap_or(0).max(1)
    } else {
        q.alpha.unwrap_or(0)
    };
    let max_gap = q.beta.unwrap_or(usize::MAX);
    let mut at = start;
    let mut last: Option<usize> = None;
    for &(to, t) in hops {
        if !g
            .edges()
            .iter()
            .any(|e| e.t == t && e.contains(at) && e.contains(to) && at != to)
        {
            return false;
        }
        let ok = match last {
            None => t >= q.depart_after,
            Some(tl) => t >= tl && t - tl >= min_gap && t - tl <= max_gap,
        };
        if !ok {
            return false;
        }
        last = Some(t);
        at = to;
    }
    start == q.source && q.target.is_none_or(|z| z == at)
}
