use std::collections::BTreeSet;

use crate::graph::StaticGraph;

use super::td::TreeDecomposition;

/// Decomposition induced by eliminating vertices in `order` (a permutation of `0..n`).
///
/// Bag `i` is the `i`-th eliminated vertex together with its neighbours in the
/// filled graph at that moment.
pub fn decomposition_from_order(g: &StaticGraph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    assert_eq!(order.len(), n, "elimination order must list every vertex");
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut bags = Vec::with_capacity(n);
    let mut edges = Vec::new();
    let mut last_root: Option<usize> = None;
    for (i, &v) in order.iter().enumerate() {
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for (a, &x) in nbrs.iter().enumerate() {
            adj[x].remove(&v);
            for &y in &nbrs[a + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        match nbrs.iter().map(|&x| pos[x]).min() {
            Some(p) => edges.push((i, p)),
            None => {
                if let Some(r) = last_root {
                    edges.push((r, i));
                }
                last_root = Some(i);
            }
        }
        let mut bag = nbrs;
        bag.push(v);
        bags.push(bag);
    }
    TreeDecomposition::new(bags, edges)
}

/// Width of the decomposition induced by `order`.
pub fn order_width(g: &StaticGraph, order: &[usize]) -> usize {
    decomposition_from_order(g, order).width()
}

/// Greedy minimum fill-in order; ties go to the lowest vertex id.
pub fn min_fill_order(g: &StaticGraph) -> Vec<usize> {
    let n = g.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    let fill = |adj: &[BTreeSet<usize>], v: usize| -> usize {
        let ns: Vec<usize> = adj[v].iter().copied().collect();
        let mut missing = 0;
        for (a, &x) in ns.iter().enumerate() {
            for &y in &ns[a + 1..] {
                if !adj[x].contains(&y) {
                    missing += 1;
                }
            }
        }
        missing
    };
    for _ in 0..n {
        let mut best: Option<(usize, usize)> = None;
        for v in (0..n).filter(|&v| alive[v]) {
            let f = fill(&adj, v);
            if best.is_none_or(|(bf, _)| f < bf) {
                best = Some((f, v));
                if f == 0 {
                    break;
                }
            }
        }
        let (_, v) = best.expect("some vertex remains");
        let ns: Vec<usize> = adj[v].iter().copied().collect();
        for (a, &x) in ns.iter().enumerate() {
            adj[x].remove(&v);
            for &y in &ns[a + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        adj[v].clear();
        alive[v] = false;
        order.push(v);
    }
    order
}

/// Min-fill upper bound on treewidth with a witnessing decomposition.
pub fn treewidth_heuristic(g: &StaticGraph) -> (usize, TreeDecomposition) {
    let td = decomposition_from_order(g, &min_fill_order(g));
    (td.width(), td)
}
