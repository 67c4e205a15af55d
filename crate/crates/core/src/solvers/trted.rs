//! (α,β)-temporal reachability time-edge deletion.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::{TemporalEdge, TemporalGraph};
use crate::reach::{path_reachable_mask, WalkQuery};

/// Default cap on the number of deletion sets examined.
pub const DEFAULT_TRTED_BUDGET: u64 = 50_000_000;

fn query(source: usize, alpha: usize, beta: usize) -> WalkQuery {
    WalkQuery::from(source)
        .strict(true)
        .gaps(Some(alpha), Some(beta))
}

fn reach_size<W>(
    g: &TemporalGraph<W>,
    v: usize,
    alpha: usize,
    beta: usize,
    skip: &[bool],
) -> usize {
    path_reachable_mask(g, &query(v, alpha, beta), Some(skip))
        .into_iter()
        .filter(|&x| x)
        .count()
}

/// Largest strict (α,β)-path reach over all sources after deleting the marked edges.
pub fn max_path_reach<W>(
    g: &TemporalGraph<W>,
    alpha: usize,
    beta: usize,
    deleted: &[bool],
) -> usize {
    (0..g.n())
        .map(|v| reach_size(g, v, alpha, beta, deleted))
        .max()
        .unwrap_or(0)
}

pub fn trted_bruteforce<W>(
    g: &TemporalGraph<W>,
    alpha: usize,
    beta: usize,
    k: usize,
    h: usize,
) -> Result<Option<Vec<TemporalEdge>>> {
    trted_bruteforce_with_budget(g, alpha, beta, k, h, DEFAULT_TRTED_BUDGET)
}

/// At most `k` edge deletions after which every vertex reaches at most `h`
/// vertices (itself included) along strict (α,β)-temporal paths.
///
/// Deleting more edges never enlarges a reach set, so only deletion sets of
/// size `min(k, |E|)` are tried; the first hit is then shrunk to an
/// inclusion-minimal set. `budget` caps the number of sets examined.
pub fn trted_bruteforce_with_budget<W>(
    g: &TemporalGraph<W>,
    alpha: usize,
    beta: usize,
    k: usize,
    h: usize,
    budget: u64,
) -> Result<Option<Vec<TemporalEdge>>> {
    if alpha > beta {
        return Err(Error::Domain(format!("alpha {alpha} exceeds beta {beta}")));
    }
    let m = g.num_edges();
    let size = k.min(m);
    let count = binomial(m as u64, size as u64);
    if count > budget {
        return Err(Error::Budget(format!(
            "{count} deletion sets exceed the budget of {budget}"
        )));
    }
    let none = vec![false; m];
    let mut order: Vec<(usize, usize)> = (0..g.n())
        .map(|v| (reach_size(g, v, alpha, beta, &none), v))
        .collect();
    order.sort_by(|a, b| b.cmp(a));
    let order: Vec<usize> = order.into_iter().map(|(_, v)| v).collect();
    let feasible = |skip: &[bool]| {
        order
            .iter()
            .all(|&v| reach_size(g, v, alpha, beta, skip) <= h)
    };

    let mut skip = vec![false; m];
    for set in (0..m).combinations(size) {
        for &i in &set {
            skip[i] = true;
        }
        if feasible(&skip) {
            for &i in &set {
                skip[i] = false;
                if !feasible(&skip) {
                    skip[i] = true;
                }
            }
            return Ok(Some(
                (0..m).filter(|&i| skip[i]).map(|i| g.edges()[i]).collect(),
            ));
        }
        for &i in &set {
            skip[i] = false;
        }
    }
    Ok(None)
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type G = TemporalGraph<Rational>;

    #[test]
    fn single_edge() {
        let g = G::new(2, 1, [(0, 1, 1)]).unwrap();
        assert_eq!(
            trted_bruteforce(&g, 1, 1, 1, 1).unwrap(),
            Some(vec![TemporalEdge::new(0, 1, 1)])
        );
        assert_eq!(trted_bruteforce(&g, 1, 1, 0, 1).unwrap(), None);
        assert_eq!(trted_bruteforce(&g, 1, 1, 3, 2).unwrap(), Some(vec![]));
    }

    #[test]
    fn gaps_limit_reach() {
        let g = G::new(3, 5, [(0, 1, 1), (1, 2, 4)]).unwrap();
        let none = vec![false; 2];
        assert_eq!(reach_size(&g, 0, 1, 2, &none), 2);
        assert_eq!(reach_size(&g, 0, 1, 3, &none), 3);
        assert_eq!(max_path_reach(&g, 1, 2, &none), 3);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(52, 4), 270_725);
        assert_eq!(binomial(3, 5), 1);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let g = G::new(6, 2, (0..5).flat_map(|v| [(v, v + 1, 1), (v, v + 1, 2)])).unwrap();
        assert!(matches!(
            trted_bruteforce_with_budget(&g, 1, 1, 3, 1, 10),
            Err(Error::Budget(_))
        ));
    }
}
