//! Temporal walks, reachability and foremost walks.
//!
//! A walk from `source` is a sequence of hops `(to, t)`. Consecutive stamps
//! differ by a gap in `[α, β]`; strict walks use `α ≥ 1`, non-strict `α ≥ 0`.
//! The first hop has no gap constraint but must leave at or after `depart_after`.

use std::collections::VecDeque;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{TemporalEdge, TemporalGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkQuery {
    pub source: usize,
    pub target: Option<usize>,
    pub strict: bool,
    pub alpha: Option<usize>,
    pub beta: Option<usize>,
    pub depart_after: usize,
}

impl WalkQuery {
    /// Non-strict query from `source` with no gap bounds.
    pub fn from(source: usize) -> Self {
        WalkQuery {
            source,
            target: None,
            strict: false,
            alpha: None,
            beta: None,
            depart_after: 1,
        }
    }

    pub fn to(mut self, target: usize) -> Self {
        self.target = Some(target);
        self
    }

    pub fn strict(mut self, strict: bool) -> Self {
        self.strict = strict;
        self
    }

    pub fn gaps(mut self, alpha: Option<usize>, beta: Option<usize>) -> Self {
        self.alpha = alpha;
        self.beta = beta;
        self
    }

    pub fn depart_after(mut self, t: usize) -> Self {
        self.depart_after = t;
        self
    }

    /// Smallest admissible gap between consecutive stamps.
    pub fn min_gap(&self) -> usize {
        let a = self.alpha.unwrap_or(0);
        if self.strict {
            a.max(1)
        } else {
            a
        }
    }

    pub fn max_gap(&self) -> usize {
        self.beta.unwrap_or(usize::MAX)
    }

    fn gap_ok(&self, from: usize, to: usize) -> bool {
        to >= from && (to - from) >= self.min_gap() && (to - from) <= self.max_gap()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hop {
    pub to: usize,
    pub t: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemporalWalk {
    pub start: usize,
    pub hops: Vec<Hop>,
}

impl TemporalWalk {
    pub fn empty(start: usize) -> Self {
        TemporalWalk {
            start,
            hops: Vec::new(),
        }
    }

    pub fn end(&self) -> usize {
        self.hops.last().map_or(self.start, |h| h.to)
    }

    /// Time stamp of the last hop.
    pub fn arrival(&self) -> Option<usize> {
        self.hops.last().map(|h| h.t)
    }

    pub fn vertices(&self) -> Vec<usize> {
        std::iter::once(self.start)
            .chain(self.hops.iter().map(|h| h.to))
            .collect()
    }

    pub fn edges(&self) -> Vec<TemporalEdge> {
        let mut at = self.start;
        self.hops
            .iter()
            .map(|h| {
                let e = TemporalEdge::new(at, h.to, h.t);
                at = h.to;
                e
            })
            .collect()
    }

    /// Cuts out every closed sub-walk so no vertex repeats. Stamps stay monotone,
    /// but gap bounds may no longer hold; see [`as_path`].
    pub fn prune_cycles(&self) -> TemporalWalk {
        let mut verts = vec![self.start];
        let mut hops: Vec<Hop> = Vec::new();
        for h in &self.hops {
            if let Some(pos) = verts.iter().position(|&v| v == h.to) {
                verts.truncate(pos + 1);
                hops.truncate(pos);
            } else {
                verts.push(h.to);
                hops.push(*h);
            }
        }
        TemporalWalk {
            start: self.start,
            hops,
        }
    }
}

impl fmt::Display for TemporalWalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.start)?;
        for h in &self.hops {
            write!(f, " -({})- {}", h.t, h.to)?;
        }
        Ok(())
    }
}

/// Parses the `v0 -(t1)- v1 ...` form.
pub fn parse_walk(text: &str) -> Option<TemporalWalk> {
    let mut tokens = text.split_whitespace();
    let start = tokens.next()?.parse().ok()?;
    let mut hops = Vec::new();
    while let Some(tok) = tokens.next() {
        let t = tok.strip_prefix("-(")?.strip_suffix(")-")?.parse().ok()?;
        let to = tokens.next()?.parse().ok()?;
        hops.push(Hop { to, t });
    }
    Some(TemporalWalk { start, hops })
}

#[derive(Clone, Copy)]
enum Parent {
    Start,
    State(usize),
}

/// Breadth-first search over states `(vertex, arrival time)`.
struct StateSearch {
    tau: usize,
    parent: Vec<Option<(Parent, usize)>>,
}

impl StateSearch {
    fn run<W>(g: &TemporalGraph<W>, q: &WalkQuery, skip_edge: Option<&[bool]>) -> Self {
        let tau = g.tau();
        let id = |v: usize, t: usize| v * (tau + 1) + t;
        let mut parent: Vec<Option<(Parent, usize)>> = vec![None; g.n() * (tau + 1)];
        let mut queue = VecDeque::new();
        let usable = |e: usize| skip_edge.is_none_or(|s| !s[e]);
        for inc in g.incident(q.source) {
            if inc.t >= q.depart_after && usable(inc.edge) && parent[id(inc.to, inc.t)].is_none() {
                parent[id(inc.to, inc.t)] = Some((Parent::Start, inc.edge));
                queue.push_back((inc.to, inc.t));
            }
        }
        while let Some((v, tl)) = queue.pop_front() {
            for inc in g.incident(v) {
                if q.gap_ok(tl, inc.t) && usable(inc.edge) && parent[id(inc.to, inc.t)].is_none() {
                    parent[id(inc.to, inc.t)] = Some((Parent::State(id(v, tl)), inc.edge));
                    queue.push_back((inc.to, inc.t));
                }
            }
        }
        StateSearch { tau, parent }
    }

    fn reached(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (1..=self.tau).filter(move |&t| self.parent[v * (self.tau + 1) + t].is_some())
    }

    fn walk_to<W>(&self, g: &TemporalGraph<W>, source: usize, v: usize, t: usize) -> TemporalWalk {
        let mut hops = Vec::new();
        let mut state = v * (self.tau + 1) + t;
        loop {
            let (p, edge) = self.parent[state].expect("reached state");
            let e = g.edges()[edge];
            hops.push(Hop {
                to: state / (self.tau + 1),
                t: e.t,
            });
            match p {
                Parent::Start => break,
                Parent::State(s) => state = s,
            }
        }
        hops.reverse();
        TemporalWalk {
            start: source,
            hops,
        }
    }
}

/// Vertices reachable from `q.source` (the target, if any, is ignored), sorted.
pub fn reachable_set<W>(g: &TemporalGraph<W>, q: &WalkQuery) -> Vec<usize> {
    reachable_mask(g, q, None)
        .into_iter()
        .enumerate()
        .filter(|(_, r)| *r)
        .map(|(v, _)| v)
        .collect()
}

/// Reachability as a membership vector, optionally ignoring edges marked in `skip_edge`.
pub fn reachable_mask<W>(
    g: &TemporalGraph<W>,
    q: &WalkQuery,
    skip_edge: Option<&[bool]>,
) -> Vec<bool> {
    let s = StateSearch::run(g, q, skip_edge);
    let mut out: Vec<bool> = (0..g.n()).map(|v| s.reached(v).next().is_some()).collect();
    out[q.source] = true;
    out
}

/// Reachable sets for many sources at once, evaluated in parallel.
pub fn reachable_sets<W: Sync>(
    g: &TemporalGraph<W>,
    q: &WalkQuery,
    sources: &[usize],
) -> Vec<Vec<usize>> {
    sources
        .par_iter()
        .map(|&s| reachable_set(g, &WalkQuery { source: s, ..*q }))
        .collect()
}

/// A walk to `q.target` with the earliest possible arrival.
///
/// When the target equals the source the empty walk is returned.
pub fn foremost_walk<W>(g: &TemporalGraph<W>, q: &WalkQuery) -> Option<TemporalWalk> {
    let target = q.target.expect("foremost_walk needs a target");
    if target == q.source {
        return Some(TemporalWalk::empty(target));
    }
    let s = StateSearch::run(g, q, None);
    let t = s.reached(target).next()?;
    Some(s.walk_to(g, q.source, target, t))
}

/// Whether `w` is a walk of `g` meeting every constraint of `q`.
pub fn verify_walk<W>(g: &TemporalGraph<W>, w: &TemporalWalk, q: &WalkQuery) -> bool {
    if w.start != q.source || w.start >= g.n() {
        return false;
    }
    if let Some(t) = q.target {
        if w.end() != t {
            return false;
        }
    }
    let mut at = w.start;
    let mut last: Option<usize> = None;
    for h in &w.hops {
        if h.to >= g.n() || h.to == at || !g.has_edge(at, h.to, h.t) {
            return false;
        }
        match last {
            None if h.t < q.depart_after => return false,
            Some(tl) if !q.gap_ok(tl, h.t) => return false,
            _ => {}
        }
        last = Some(h.t);
        at = h.to;
    }
    true
}

/// The cycle-free version of `w`, if it still satisfies `q`.
pub fn as_path<W>(g: &TemporalGraph<W>, w: &TemporalWalk, q: &WalkQuery) -> Option<TemporalWalk> {
    let p = w.prune_cycles();
    verify_walk(g, &p, q).then_some(p)
}

/// Vertices reachable from `q.source` by temporal paths (no repeated vertex),
/// ignoring edges marked in `skip_edge`.
///
/// This differs from [`reachable_mask`] once gap bounds are present: a walk may
/// wait by bouncing along an edge, a path may not.
pub fn path_reachable_mask<W>(
    g: &TemporalGraph<W>,
    q: &WalkQuery,
    skip_edge: Option<&[bool]>,
) -> Vec<bool> {
    let mut reached = vec![false; g.n()];
    let mut on_path = vec![false; g.n()];
    reached[q.source] = true;
    on_path[q.source] = true;
    let usable = |e: usize| skip_edge.is_none_or(|s| !s[e]);
    fn dfs<W>(
        g: &TemporalGraph<W>,
        q: &WalkQuery,
        usable: &dyn Fn(usize) -> bool,
        v: usize,
        last: Option<usize>,
        on_path: &mut [bool],
        reached: &mut [bool],
    ) {
        for inc in g.incident(v) {
            let ok = match last {
                None => inc.t >= q.depart_after,
                Some(tl) => q.gap_ok(tl, inc.t),
            };
            if ok && !on_path[inc.to] && usable(inc.edge) {
                reached[inc.to] = true;
                on_path[inc.to] = true;
                dfs(g, q, usable, inc.to, Some(inc.t), on_path, reached);
                on_path[inc.to] = false;
            }
        }
    }
    dfs(g, q, &usable, q.source, None, &mut on_path, &mut reached);
    reached
}
