//! Minimum-weight temporally r-connected spanning subgraphs (non-strict paths).

use std::collections::BTreeMap;

use crate::decomposition::{
    make_nice, validate_tdc, NiceKind, NiceTreeDecomposition, TreeDecomposition,
};
use crate::error::{Error, Result};
use crate::graph::{TemporalEdge, TemporalGraph};
use crate::reach::{reachable_mask, WalkQuery};
use crate::scalar::Weight;

#[derive(Clone, Debug, PartialEq)]
pub struct RmtcSolution<W> {
    pub cost: W,
    /// Sorted by `(t, u, v)`.
    pub edges: Vec<TemporalEdge>,
}

/// Whether every vertex is reachable from `r` using only `edges`.
pub fn is_r_connected<W: Weight>(g: &TemporalGraph<W>, r: usize, edges: &[TemporalEdge]) -> bool {
    let mut skip = vec![true; g.num_edges()];
    for e in edges {
        match g.edge_index(e) {
            Some(i) => skip[i] = false,
            None => return false,
        }
    }
    reachable_mask(g, &WalkQuery::from(r), Some(&skip))
        .into_iter()
        .all(|x| x)
}

fn check_root<W>(g: &TemporalGraph<W>, r: usize) -> Result<()> {
    if r >= g.n() {
        return Err(Error::Domain(format!("root {r} outside 0..{}", g.n())));
    }
    Ok(())
}

fn sum<W: Weight>(g: &TemporalGraph<W>, idx: impl Iterator<Item = usize>) -> W {
    idx.fold(W::zero(), |acc, i| acc + g.weight_or_one(i))
}

/// Subset enumeration over at most 20 edges. Unweighted graphs use weight one.
pub fn rmtc_bruteforce<W: Weight>(
    g: &TemporalGraph<W>,
    r: usize,
) -> Result<Option<RmtcSolution<W>>> {
    check_root(g, r)?;
    let m = g.num_edges();
    if m > 20 {
        return Err(Error::Budget(format!(
            "brute-force r-MTC limited to 20 edges, got {m}"
        )));
    }
    let q = WalkQuery::from(r);
    let mut best: Option<(W, u32)> = None;
    for mask in 0u32..(1u32 << m) {
        let cost = sum(g, (0..m).filter(|&i| mask >> i & 1 == 1));
        if best.as_ref().is_some_and(|(b, _)| *b <= cost) {
            continue;
        }
        let skip: Vec<bool> = (0..m).map(|i| mask >> i & 1 == 0).collect();
        if reachable_mask(g, &q, Some(&skip)).into_iter().all(|x| x) {
            best = Some((cost, mask));
        }
    }
    Ok(best.map(|(cost, mask)| RmtcSolution {
        cost,
        edges: (0..m)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| g.edges()[i])
            .collect(),
    }))
}

/// Convenience wrapper: validates `d` against the underlying graph and makes it nice.
pub fn rmtc_dp_from_td<W: Weight>(
    g: &TemporalGraph<W>,
    r: usize,
    d: &TreeDecomposition,
) -> Result<Option<RmtcSolution<W>>> {
    let rep = validate_tdc(&g.underlying_graph(), d)?;
    if !rep.is_valid() {
        return Err(Error::InvalidDecomposition(format!(
            "not a decomposition of the underlying graph: {rep:?}"
        )));
    }
    rmtc_dp(g, r, &make_nice(d)?)
}

/// Right-child rows grouped by `(times, ranks)`: key, cost and flags.
type JoinIndex<'a, W> = BTreeMap<(Vec<u8>, Vec<u8>), Vec<(&'a Vec<u8>, &'a W, Vec<u8>)>>;

#[derive(Clone, Debug)]
enum Back {
    Leaf,
    Introduce { child: Vec<u8>, chosen: Vec<usize> },
    Forget { child: Vec<u8> },
    Join { left: Vec<u8>, right: Vec<u8> },
}

/// A bag state: for each bag vertex (in bag order) its arrival time, whether
/// its parent edge has been chosen yet, and its rank in a total order of the
/// bag that refines arrival time. Encoded as `times ++ flags ++ ranks`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct State {
    times: Vec<u8>,
    flags: Vec<u8>,
    ranks: Vec<u8>,
}

impl State {
    fn encode(&self) -> Vec<u8> {
        [&self.times[..], &self.flags[..], &self.ranks[..]].concat()
    }

    fn decode(key: &[u8]) -> Self {
        let m = key.len() / 3;
        State {
            times: key[..m].to_vec(),
            flags: key[m..2 * m].to_vec(),
            ranks: key[2 * m..].to_vec(),
        }
    }
}

/// Dynamic program over a nice decomposition of the underlying graph.
///
/// Every optimal solution contains an arborescence rooted at `r` in which
/// each vertex has one parent edge, arrival times never decrease away from the
/// root and ties are broken by a total order. The table tracks, per bag
/// vertex, its arrival time, whether its parent edge is already chosen and
/// its position in that order; bag-local orders that agree on overlaps always
/// extend to a global one because bags of a tree decomposition satisfy the
/// Helly property.
pub fn rmtc_dp<W: Weight>(
    g: &TemporalGraph<W>,
    r: usize,
    d: &NiceTreeDecomposition,
) -> Result<Option<RmtcSolution<W>>> {
    check_root(g, r)?;
    d.check().map_err(Error::InvalidDecomposition)?;
    let rep = validate_tdc(&g.underlying_graph(), &d.to_tree_decomposition())?;
    if !rep.is_valid() {
        return Err(Error::InvalidDecomposition(format!(
            "not a decomposition of the underlying graph: {rep:?}"
        )));
    }
    let tau = g.tau();
    if tau > 250 {
        return Err(Error::Unsupported(format!(
            "lifetime {tau} too large for the r-MTC table"
        )));
    }
    let arrival_times = |v: usize| -> Vec<u8> {
        if v == r {
            return vec![0];
        }
        let mut ts: Vec<u8> = g.incident(v).iter().map(|i| i.t as u8).collect();
        ts.dedup();
        ts
    };
    let edge_at = |a: usize, b: usize, t: u8| g.edge_index(&TemporalEdge::new(a, b, t as usize));

    let mut tables: Vec<BTreeMap<Vec<u8>, (W, Back)>> = Vec::with_capacity(d.nodes.len());
    for node in &d.nodes {
        let mut table: BTreeMap<Vec<u8>, (W, Back)> = BTreeMap::new();
        let offer = |table: &mut BTreeMap<Vec<u8>, (W, Back)>,
                     key: Vec<u8>,
                     cost: W,
                     back: Back| match table.get(&key) {
            Some((best, _)) if *best <= cost => {}
            _ => {
                table.insert(key, (cost, back));
            }
        };
        match node.kind {
            NiceKind::Leaf => {
                table.insert(Vec::new(), (W::zero(), Back::Leaf));
            }
            NiceKind::Introduce(x) => {
                let pos = node
                    .bag
                    .binary_search(&x)
                    .expect("introduced vertex in bag");
                let others: Vec<usize> = node.bag.iter().copied().filter(|&v| v != x).collect();
                for (key, (cost, _)) in &tables[node.children[0]] {
                    let st = State::decode(key);
                    let m = others.len();
                    let mut by_rank = vec![0usize; m];
                    for i in 0..m {
                        by_rank[st.ranks[i] as usize] = i;
                    }
                    for tx in arrival_times(x) {
                        for q in 0..=m {
                            if q > 0 && st.times[by_rank[q - 1]] > tx {
                                continue;
                            }
                            if q < m && st.times[by_rank[q]] < tx {
                                continue;
                            }
                            // The parent of x may also be introduced later.
                            let mut parents: Vec<Option<usize>> = vec![None];
                            if x != r {
                                parents.extend(
                                    (0..m)
                                        .filter(|&i| (st.ranks[i] as usize) < q)
                                        .filter_map(|i| edge_at(others[i], x, tx))
                                        .map(Some),
                                );
                            }
                            let kids: Vec<(usize, usize)> = (0..m)
                                .filter(|&i| st.flags[i] == 0 && st.ranks[i] as usize >= q)
                                .filter_map(|i| edge_at(x, others[i], st.times[i]).map(|e| (i, e)))
                                .collect();
                            for parent in &parents {
                                for sub in 0u32..(1u32 << kids.len()) {
                                    let mut times = st.times.clone();
                                    let mut flags = st.flags.clone();
                                    let mut ranks: Vec<u8> = st
                                        .ranks
                                        .iter()
                                        .map(|&rk| if rk as usize >= q { rk + 1 } else { rk })
                                        .collect();
                                    let mut chosen = Vec::new();
                                    for (j, &(i, e)) in kids.iter().enumerate() {
                                        if sub >> j & 1 == 1 {
                                            flags[i] = 1;
                                            chosen.push(e);
                                        }
                                    }
                                    let flag_x = if x == r || parent.is_some() { 1 } else { 0 };
                                    if let Some(e) = parent {
                                        chosen.push(*e);
                                    }
                                    times.insert(pos, tx);
                                    flags.insert(pos, flag_x);
                                    ranks.insert(pos, q as u8);
                                    let add = sum(g, chosen.iter().copied());
                                    let next = State {
                                        times,
                                        flags,
                                        ranks,
                                    }
                                    .encode();
                                    offer(
                                        &mut table,
                                        next,
                                        cost.clone() + add,
                                        Back::Introduce {
                                            child: key.clone(),
                                            chosen,
                                        },
                                    );
                                }
                            }
                        }
                    }
                }
            }
            NiceKind::Forget(x) => {
                let child_bag = &d.nodes[node.children[0]].bag;
                let pos = child_bag
                    .binary_search(&x)
                    .expect("forgotten vertex in child bag");
                for (key, (cost, _)) in &tables[node.children[0]] {
                    let st = State::decode(key);
                    if st.flags[pos] == 0 {
                        continue;
                    }
                    let gone = st.ranks[pos];
                    let mut next = st.clone();
                    next.times.remove(pos);
                    next.flags.remove(pos);
                    next.ranks.remove(pos);
                    for rk in &mut next.ranks {
                        if *rk > gone {
                            *rk -= 1;
                        }
                    }
                    offer(
                        &mut table,
                        next.encode(),
                        cost.clone(),
                        Back::Forget { child: key.clone() },
                    );
                }
            }
            NiceKind::Join => {
                let root_pos = node.bag.binary_search(&r).ok();
                let mut right: JoinIndex<'_, W> = BTreeMap::new();
                for (key, (cost, _)) in &tables[node.children[1]] {
                    let st = State::decode(key);
                    right
                        .entry((st.times, st.ranks))
                        .or_default()
                        .push((key, cost, st.flags));
                }
                for (key, (cost, _)) in &tables[node.children[0]] {
                    let st = State::decode(key);
                    let Some(partners) = right.get(&(st.times.clone(), st.ranks.clone())) else {
                        continue;
                    };
                    for (rkey, rcost, rflags) in partners {
                        let clash = (0..st.flags.len())
                            .any(|i| Some(i) != root_pos && st.flags[i] + rflags[i] > 1);
                        if clash {
                            continue;
                        }
                        let flags: Vec<u8> =
                            st.flags.iter().zip(rflags).map(|(a, b)| a | b).collect();
                        let next = State {
                            times: st.times.clone(),
                            flags,
                            ranks: st.ranks.clone(),
                        }
                        .encode();
                        let back = Back::Join {
                            left: key.clone(),
                            right: (*rkey).clone(),
                        };
                        offer(&mut table, next, cost.clone() + (*rcost).clone(), back);
                    }
                }
            }
        }
        tables.push(table);
    }

    let Some((cost, _)) = tables[d.root].get(&Vec::new()) else {
        return Ok(None);
    };
    let cost = cost.clone();
    let mut chosen = Vec::new();
    let mut stack = vec![(d.root, Vec::<u8>::new())];
    while let Some((i, key)) = stack.pop() {
        let node = &d.nodes[i];
        match &tables[i][&key].1 {
            Back::Leaf => {}
            Back::Introduce { child, chosen: es } => {
                chosen.extend(es.iter().copied());
                stack.push((node.children[0], child.clone()));
            }
            Back::Forget { child } => stack.push((node.children[0], child.clone())),
            Back::Join { left, right } => {
                stack.push((node.children[0], left.clone()));
                stack.push((node.children[1], right.clone()));
            }
        }
    }
    chosen.sort_unstable();
    chosen.dedup();
    Ok(Some(RmtcSolution {
        cost,
        edges: chosen.into_iter().map(|i| g.edges()[i]).collect(),
    }))
}
