use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::StaticGraph;

pub const DEFAULT_COPS_BUDGET: usize = 10;

/// Whether `k` cops catch a visible robber, with the default vertex budget.
pub fn cops_win(g: &StaticGraph, k: usize) -> Result<bool> {
    cops_win_with_budget(g, k, DEFAULT_COPS_BUDGET)
}

/// Whether `k` cops catch a visible robber.
///
/// Each round the cops announce a new position `C'` (at most `k` vertices);
/// the robber, knowing `C'`, runs through `G − (C ∩ C')` and must stop on a
/// vertex outside `C'`. The robber is caught once no such vertex remains.
/// A game state is a cop set together with the component of `G − C` holding
/// the robber; winning states are computed as a least fixed point.
pub fn cops_win_with_budget(g: &StaticGraph, k: usize, budget: usize) -> Result<bool> {
    let n = g.n();
    if n > budget || n > 30 {
        return Err(Error::Budget(format!(
            "cops game limited to {} vertices, graph has {}",
            budget.min(30),
            n
        )));
    }
    if k >= n {
        return Ok(true);
    }
    if k == 0 {
        return Ok(false);
    }
    let adj: Vec<u32> = g
        .adjacency_masks()
        .expect("small graph")
        .into_iter()
        .map(|m| m as u32)
        .collect();
    let all: u32 = ((1u64 << n) - 1) as u32;
    let cop_sets: Vec<u32> = (0..=all).filter(|c| c.count_ones() as usize <= k).collect();
    let comps_of: HashMap<u32, Vec<u32>> = cop_sets
        .iter()
        .map(|&c| (c, components(&adj, all & !c)))
        .collect();

    let mut states: Vec<(u32, u32)> = Vec::new();
    let mut index: HashMap<(u32, u32), usize> = HashMap::new();
    for &c in &cop_sets {
        for &r in &comps_of[&c] {
            index.insert((c, r), states.len());
            states.push((c, r));
        }
    }
    let mut win = vec![false; states.len()];
    loop {
        let mut changed = false;
        for (i, &(c, r)) in states.iter().enumerate() {
            if win[i] {
                continue;
            }
            let good = cop_sets.iter().any(|&next| {
                let free = all & !(c & next);
                let region = flood(&adj, free, r) & !next;
                if region == 0 {
                    return true;
                }
                comps_of[&next]
                    .iter()
                    .filter(|&&d| d & region != 0)
                    .all(|&d| win[index[&(next, d)]])
            });
            if good {
                win[i] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(cop_sets
        .iter()
        .any(|&c| comps_of[&c].iter().all(|&d| win[index[&(c, d)]])))
}

/// Vertices of `allowed` reachable from `seed` inside `allowed`.
fn flood(adj: &[u32], allowed: u32, seed: u32) -> u32 {
    let mut reach = seed & allowed;
    let mut frontier = reach;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v];
        }
        frontier = next & allowed & !reach;
        reach |= frontier;
    }
    reach
}

fn components(adj: &[u32], allowed: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut rest = allowed;
    while rest != 0 {
        let seed = rest & rest.wrapping_neg();
        let comp = flood(adj, allowed, seed);
        out.push(comp);
        rest &= !comp;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paths_and_cycles() {
        let p3 = StaticGraph::path(3);
        assert!(cops_win(&p3, 2).unwrap());
        assert!(!cops_win(&p3, 1).unwrap());
        assert!(cops_win(&StaticGraph::new(1), 1).unwrap());
        let c4 = StaticGraph::cycle(4);
        assert!(!cops_win(&c4, 2).unwrap());
        assert!(cops_win(&c4, 3).unwrap());
        assert!(!cops_win(&StaticGraph::complete(5), 4).unwrap());
        assert!(cops_win(&StaticGraph::complete(5), 5).unwrap());
        assert!(cops_win(&StaticGraph::new(0), 0).unwrap());
    }

    #[test]
    fn budget() {
        assert!(matches!(
            cops_win(&StaticGraph::path(11), 2),
            Err(Error::Budget(_))
        ));
        assert!(cops_win_with_budget(&StaticGraph::path(11), 2, 11).unwrap());
    }
}
