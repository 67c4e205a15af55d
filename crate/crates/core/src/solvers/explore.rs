//! Temporal graph exploration by a single agent moving along strict walks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{TemporalEdge, TemporalGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Move {
    Stay,
    Traverse { to: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub t: usize,
    #[serde(rename = "move")]
    pub mv: Move,
}

/// Moves of the agent; step times strictly increase.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplorationSchedule {
    pub start: usize,
    pub steps: Vec<Step>,
}

impl ExplorationSchedule {
    pub fn traversals(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s.mv, Move::Traverse { .. }))
            .count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replay {
    pub visited: Vec<bool>,
    pub end: usize,
    pub edges: Vec<TemporalEdge>,
}

impl Replay {
    pub fn all_visited(&self) -> bool {
        self.visited.iter().all(|&v| v)
    }
}

/// Executes a schedule, checking that every traversal uses an existing edge
/// and that step times strictly increase within the lifetime.
pub fn replay<W>(g: &TemporalGraph<W>, s: &ExplorationSchedule) -> Result<Replay, String> {
    if s.start >= g.n() {
        return Err(format!("start {} is not a vertex", s.start));
    }
    let mut visited = vec![false; g.n()];
    visited[s.start] = true;
    let mut at = s.start;
    let mut last = 0;
    let mut edges = Vec::new();
    for (i, step) in s.steps.iter().enumerate() {
        if step.t <= last || step.t > g.tau() {
            return Err(format!(
                "step {i}: time {} not after {} or beyond lifetime {}",
                step.t,
                last,
                g.tau()
            ));
        }
        last = step.t;
        if let Move::Traverse { to } = step.mv {
            if to >= g.n() || to == at || !g.has_edge(at, to, step.t) {
                return Err(format!("step {i}: no edge {at}-{to} at time {}", step.t));
            }
            edges.push(TemporalEdge::new(at, to, step.t));
            at = to;
            visited[to] = true;
        }
    }
    Ok(Replay {
        visited,
        end: at,
        edges,
    })
}

/// Earliest-finishing exploration from `s` (returning to `s` when `return_to_base`),
/// by search over `(vertex, visited set)` states layered by time.
///
/// The state space `n · 2^n · (tau + 1)` is capped at `2^24`.
pub fn explore_bruteforce<W>(
    g: &TemporalGraph<W>,
    s: usize,
    return_to_base: bool,
) -> Result<Option<ExplorationSchedule>> {
    let n = g.n();
    if s >= n {
        return Err(Error::Domain(format!("start {s} outside 0..{n}")));
    }
    let work = (n as u128) << n.min(100);
    if n > 24 || work * (g.tau() as u128 + 1) > 1 << 24 {
        return Err(Error::Budget(format!(
            "exploration state space too large (n={n}, tau={})",
            g.tau()
        )));
    }
    let full = (1usize << n) - 1;
    let id = |v: usize, mask: usize| mask * n + v;
    let goal = |v: usize, mask: usize| mask == full && (!return_to_base || v == s);
    // parent[state] = (previous state, time of the hop into this state)
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n << n];
    let start = id(s, 1 << s);
    parent[start] = Some((start, 0));
    let mut reached = vec![start];
    let mut found = goal(s, 1 << s).then_some(start);
    let mut t = 1;
    while found.is_none() && t <= g.tau() {
        let layer = g.edges_at(t);
        let before = reached.len();
        for idx in 0..before {
            let st = reached[idx];
            let (v, mask) = (st % n, st / n);
            for e in layer.iter().filter(|e| e.contains(v)) {
                let w = e.other(v);
                let next = id(w, mask | 1 << w);
                if parent[next].is_none() {
                    parent[next] = Some((st, t));
                    reached.push(next);
                    if found.is_none() && goal(w, mask | 1 << w) {
                        found = Some(next);
                    }
                }
            }
        }
        t += 1;
    }
    let Some(mut st) = found else { return Ok(None) };
    let mut steps = Vec::new();
    while st != start {
        let (prev, t) = parent[st].expect("reached");
        steps.push(Step {
            t,
            mv: Move::Traverse { to: st % n },
        });
        st = prev;
    }
    steps.reverse();
    Ok(Some(ExplorationSchedule { start: s, steps }))
}

/// Exploration of a graph whose every layer is connected.
///
/// From the current vertex the set of vertices reachable within the steps
/// taken so far grows by at least one per step, so an unvisited vertex is
/// reached within `n − 1` steps; the agent then walks there (staying where the
/// walk does not move) and repeats. Among newly reachable unvisited vertices
/// the smallest id is chosen. At most `(n − 1)²` steps are used.
pub fn explore_connected<W>(g: &TemporalGraph<W>, s: usize) -> Result<ExplorationSchedule> {
    let n = g.n();
    if s >= n {
        return Err(Error::Domain(format!("start {s} outside 0..{n}")));
    }
    for t in 1..=g.tau() {
        if !g.layer(t)?.is_connected() {
            return Err(Error::Precondition(format!("layer {t} is not connected")));
        }
    }
    let mut visited = vec![false; n];
    visited[s] = true;
    let mut left = n - 1;
    let mut at = s;
    let mut steps = Vec::new();
    let mut t = 1;
    while left > 0 {
        let phase_start = t;
        // hop[v] = (predecessor, time) of the step that first reached v in this phase.
        let mut hop: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut inside = vec![false; n];
        inside[at] = true;
        let target = loop {
            if t > g.tau() {
                return Err(Error::Precondition(format!(
                    "lifetime {} exhausted with {left} vertices unvisited",
                    g.tau()
                )));
            }
            let mut fresh = Vec::new();
            for e in g.edges_at(t) {
                for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                    if inside[a] && !inside[b] && hop[b].is_none() {
                        hop[b] = Some((a, t));
                        fresh.push(b);
                    }
                }
            }
            for &b in &fresh {
                inside[b] = true;
            }
            t += 1;
            if let Some(&v) = fresh.iter().filter(|&&v| !visited[v]).min() {
                break v;
            }
        };
        let mut path = Vec::new();
        let mut v = target;
        while v != at {
            let (p, ht) = hop[v].expect("reached in this phase");
            path.push((ht, v));
            v = p;
        }
        path.reverse();
        let mut next = path.iter().peekable();
        for time in phase_start..t {
            match next.peek() {
                Some(&&(ht, v)) if ht == time => {
                    steps.push(Step {
                        t: time,
                        mv: Move::Traverse { to: v },
                    });
                    if !visited[v] {
                        visited[v] = true;
                        left -= 1;
                    }
                    next.next();
                }
                _ => steps.push(Step {
                    t: time,
                    mv: Move::Stay,
                }),
            }
        }
        at = target;
    }
    Ok(ExplorationSchedule { start: s, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type G = TemporalGraph<Rational>;

    fn every_layer(n: usize, tau: usize, edges: &[(usize, usize)]) -> G {
        G::new(
            n,
            tau,
            (1..=tau).flat_map(|t| edges.iter().map(move |&(u, v)| (u, v, t))),
        )
        .unwrap()
    }

    #[test]
    fn bruteforce_basics() {
        let g = G::new(2, 1, [(0, 1, 1)]).unwrap();
        let s = explore_bruteforce(&g, 0, false).unwrap().unwrap();
        assert_eq!(
            s.steps,
            vec![Step {
                t: 1,
                mv: Move::Traverse { to: 1 }
            }]
        );
        assert_eq!(explore_bruteforce(&g, 0, true).unwrap(), None);
        let g = G::new(2, 2, [(0, 1, 1), (0, 1, 2)]).unwrap();
        let s = explore_bruteforce(&g, 0, true).unwrap().unwrap();
        assert_eq!(s.traversals(), 2);
        let r = replay(&g, &s).unwrap();
        assert!(r.all_visited());
        assert_eq!(r.end, 0);
        let star = G::new(3, 1, [(0, 1, 1), (0, 2, 1)]).unwrap();
        assert_eq!(explore_bruteforce(&star, 0, false).unwrap(), None);
        let lone = G::new(1, 1, []).unwrap();
        assert_eq!(
            explore_bruteforce(&lone, 0, true).unwrap().unwrap().steps,
            vec![]
        );
    }

    #[test]
    fn connected_complete_graph() {
        let edges: Vec<_> = (0..4)
            .flat_map(|u| (u + 1..4).map(move |v| (u, v)))
            .collect();
        let g = every_layer(4, 12, &edges);
        let s = explore_connected(&g, 0).unwrap();
        assert!(s.traversals() <= 3);
        assert!(replay(&g, &s).unwrap().all_visited());
    }

    #[test]
    fn connected_path_from_end() {
        let g = every_layer(4, 12, &[(0, 1), (1, 2), (2, 3)]);
        let s = explore_connected(&g, 0).unwrap();
        assert!(s.steps.len() <= 12);
        let r = replay(&g, &s).unwrap();
        assert!(r.all_visited());
        assert_eq!(r.visited.iter().filter(|&&v| v).count() - 1, 3);
    }

    #[test]
    fn connected_errors() {
        let one = G::new(1, 1, []).unwrap();
        assert!(explore_connected(&one, 0).unwrap().steps.is_empty());
        let broken = G::new(3, 2, [(0, 1, 1), (1, 2, 1), (0, 1, 2)]).unwrap();
        assert!(matches!(
            explore_connected(&broken, 0),
            Err(Error::Precondition(_))
        ));
        let short = every_layer(3, 1, &[(0, 1), (1, 2)]);
        assert!(explore_connected(&short, 0).is_err());
    }

    #[test]
    fn replay_rejects_bad_schedules() {
        let g = G::new(2, 2, [(0, 1, 1)]).unwrap();
        let bad = ExplorationSchedule {
            start: 0,
            steps: vec![Step {
                t: 2,
                mv: Move::Traverse { to: 1 },
            }],
        };
        assert!(replay(&g, &bad).is_err());
        let repeat = ExplorationSchedule {
            start: 0,
            steps: vec![
                Step {
                    t: 1,
                    mv: Move::Stay,
                },
                Step {
                    t: 1,
                    mv: Move::Traverse { to: 1 },
                },
            ],
        };
        assert!(replay(&g, &repeat).is_err());
    }
}
