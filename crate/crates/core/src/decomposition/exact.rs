use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::StaticGraph;

use super::elimination::{decomposition_from_order, min_fill_order, order_width};
use super::td::TreeDecomposition;

pub const DEFAULT_EXACT_BUDGET: usize = 25;

/// Exact treewidth with a witnessing decomposition.
///
/// Connected components are solved separately by a memoised search over sets
/// of eliminated vertices, bracketed by a contraction lower bound and the
/// min-fill upper bound. Fails with [`Error::Budget`] when `n` exceeds the
/// budget (default [`DEFAULT_EXACT_BUDGET`]).
pub fn treewidth_exact(
    g: &StaticGraph,
    budget: Option<usize>,
) -> Result<(usize, TreeDecomposition)> {
    let cap = budget.unwrap_or(DEFAULT_EXACT_BUDGET);
    if g.n() > cap {
        return Err(Error::Budget(format!(
            "exact treewidth limited to {} vertices, graph has {}",
            cap,
            g.n()
        )));
    }
    if g.n() > 64 {
        return Err(Error::Budget(format!(
            "exact treewidth supports at most 64 vertices, graph has {}",
            g.n()
        )));
    }
    let mut order = Vec::with_capacity(g.n());
    let mut width = 0;
    for comp in g.components() {
        let sub = g.induced(&comp);
        let (w, local) = component_treewidth(&sub);
        width = width.max(w);
        order.extend(local.into_iter().map(|i| comp[i]));
    }
    let td = decomposition_from_order(g, &order);
    debug_assert_eq!(td.width(), width);
    Ok((width, td))
}

fn component_treewidth(g: &StaticGraph) -> (usize, Vec<usize>) {
    let n = g.n();
    if n <= 1 {
        return (0, (0..n).collect());
    }
    let adj = g.adjacency_masks().expect("at most 64 vertices");
    let heuristic = min_fill_order(g);
    let ub = order_width(g, &heuristic);
    let all = full_mask(n);
    let lb = contraction_lower_bound(&adj, all);
    for k in lb..ub {
        let mut s = Search {
            adj: &adj,
            all,
            k,
            failed: HashSet::new(),
            order: Vec::new(),
        };
        if s.feasible(0) {
            let mut order = s.order;
            order.reverse();
            return (k, order);
        }
    }
    (ub, heuristic)
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            i
        })
    })
}

/// Minor-min-width: repeatedly contract a minimum-degree vertex into its
/// least-degree neighbour; the largest minimum degree seen bounds treewidth from below.
fn contraction_lower_bound(adj: &[u64], alive: u64) -> usize {
    let mut nb: Vec<u64> = adj.iter().map(|&a| a & alive).collect();
    let mut alive = alive;
    let mut lb = 0;
    while alive.count_ones() > 1 {
        let v = bits(alive)
            .min_by_key(|&v| nb[v].count_ones())
            .expect("nonempty");
        let d = nb[v].count_ones() as usize;
        lb = lb.max(d);
        if d == 0 {
            alive &= !(1 << v);
            continue;
        }
        let u = bits(nb[v])
            .min_by_key(|&u| nb[u].count_ones())
            .expect("has neighbour");
        let merged = (nb[u] | nb[v]) & !(1 << u) & !(1 << v);
        for w in bits(nb[v]) {
            nb[w] &= !(1 << v);
            if w != u {
                nb[w] |= 1 << u;
            }
        }
        nb[u] = merged;
        nb[v] = 0;
        alive &= !(1 << v);
    }
    lb
}

struct Search<'a> {
    adj: &'a [u64],
    all: u64,
    k: usize,
    failed: HashSet<u64>,
    /// Elimination order of the successful branch, innermost first.
    order: Vec<usize>,
}

impl Search<'_> {
    /// Neighbourhoods in the graph obtained by eliminating the vertices of `s`.
    fn eliminated_graph(&self, s: u64) -> Vec<u64> {
        let rest = self.all & !s;
        let mut nb: Vec<u64> = self.adj.iter().map(|&a| a & rest).collect();
        let mut todo = s;
        while todo != 0 {
            let start = todo.trailing_zeros() as usize;
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for v in bits(frontier) {
                    next |= self.adj[v] & s;
                }
                frontier = next & !comp;
                comp |= frontier;
            }
            todo &= !comp;
            let boundary = bits(comp).fold(0, |m, v| m | self.adj[v]) & rest;
            for v in bits(boundary) {
                nb[v] |= boundary & !(1 << v);
            }
        }
        nb
    }

    fn finish(&mut self, s: u64) {
        let rest: Vec<usize> = bits(self.all & !s).collect();
        self.order.extend(rest.into_iter().rev());
    }

    fn feasible(&mut self, s: u64) -> bool {
        let rest = self.all & !s;
        if rest.count_ones() as usize <= self.k + 1 {
            self.finish(s);
            return true;
        }
        if self.failed.contains(&s) {
            return false;
        }
        let nb = self.eliminated_graph(s);
        if contraction_lower_bound(&nb, rest) > self.k {
            self.failed.insert(s);
            return false;
        }
        let is_clique = |m: u64| bits(m).all(|v| (nb[v] | (1 << v)) & m == m);
        for v in bits(rest) {
            let d = nb[v].count_ones() as usize;
            let simplicial = is_clique(nb[v]);
            if simplicial && d > self.k {
                self.failed.insert(s);
                return false;
            }
            let safe =
                d <= self.k && (simplicial || bits(nb[v]).any(|w| is_clique(nb[v] & !(1 << w))));
            if safe {
                let ok = self.feasible(s | 1 << v);
                if ok {
                    self.order.push(v);
                } else {
                    self.failed.insert(s);
                }
                return ok;
            }
        }
        let mut candidates: Vec<usize> = bits(rest)
            .filter(|&v| nb[v].count_ones() as usize <= self.k)
            .collect();
        candidates.sort_by_key(|&v| nb[v].count_ones());
        for v in candidates {
            if self.feasible(s | 1 << v) {
                self.order.push(v);
                return true;
            }
        }
        self.failed.insert(s);
        false
    }
}
