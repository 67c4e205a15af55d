use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;

use crate::decomposition::{make_nice, validate_tdc, NiceKind, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::TemporalGraph;
use crate::reach::{reachable_mask, WalkQuery};

/// Separate `s` from `z`: no (strict) temporal walk from `s` may reach `z`.
#[derive(Clone, Copy, Debug)]
pub struct SeparationInstance<'a, W> {
    pub g: &'a TemporalGraph<W>,
    pub s: usize,
    pub z: usize,
    pub strict: bool,
}

impl<W> SeparationInstance<'_, W> {
    fn check(&self) -> Result<()> {
        let n = self.g.n();
        if self.s >= n || self.z >= n || self.s == self.z {
            return Err(Error::Domain(format!(
                "need distinct terminals in 0..{n}, got {} and {}",
                self.s, self.z
            )));
        }
        Ok(())
    }

    fn direct_edge(&self) -> bool {
        self.g.incident(self.s).iter().any(|i| i.to == self.z)
    }
}

/// Whether removing `sep` leaves no temporal walk from `s` to `z`.
pub fn separated<W>(inst: &SeparationInstance<'_, W>, sep: &[usize]) -> bool {
    if sep.contains(&inst.s) || sep.contains(&inst.z) {
        return false;
    }
    let skip: Vec<bool> = inst
        .g
        .edges()
        .iter()
        .map(|e| sep.contains(&e.u) || sep.contains(&e.v))
        .collect();
    !reachable_mask(
        inst.g,
        &WalkQuery::from(inst.s).strict(inst.strict),
        Some(&skip),
    )[inst.z]
}

/// Smallest separator of size at most `k`, by enumerating vertex subsets (`n ≤ 16`).
pub fn separation_bruteforce<W>(
    inst: &SeparationInstance<'_, W>,
    k: usize,
) -> Result<Option<Vec<usize>>> {
    inst.check()?;
    if inst.g.n() > 16 {
        return Err(Error::Budget(format!(
            "brute-force separation limited to 16 vertices, got {}",
            inst.g.n()
        )));
    }
    if inst.direct_edge() {
        return Ok(None);
    }
    let candidates: Vec<usize> = (0..inst.g.n())
        .filter(|&v| v != inst.s && v != inst.z)
        .collect();
    for size in 0..=k.min(candidates.len()) {
        for sep in candidates.iter().copied().combinations(size) {
            if separated(inst, &sep) {
                return Ok(Some(sep));
            }
        }
    }
    Ok(None)
}

/// Table sizes observed during [`separation_dp_with_stats`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeparationStats {
    /// `(bag size, rows)` for every node of the nice decomposition.
    pub tables: Vec<(usize, usize)>,
}

/// Minimum separator of size at most `k` by dynamic programming over a tree
/// decomposition of the underlying graph.
pub fn separation_dp<W>(
    inst: &SeparationInstance<'_, W>,
    k: usize,
    d: &TreeDecomposition,
) -> Result<Option<Vec<usize>>> {
    separation_dp_with_stats(inst, k, d).map(|(r, _)| r)
}

/// Class codes: `0..tau` are `A_1..A_tau`, then `S`, then `Z`.
///
/// A vertex in `A_l` is never reached before time `l`. An edge `(a, b, t)`
/// between two non-separator vertices, leaving a non-`Z` vertex `a` at or
/// after its departure threshold, forces `b` into some `A_l` with `l ≤ t`.
pub fn separation_dp_with_stats<W>(
    inst: &SeparationInstance<'_, W>,
    k: usize,
    d: &TreeDecomposition,
) -> Result<(Option<Vec<usize>>, SeparationStats)> {
    inst.check()?;
    let g = inst.g;
    let rep = validate_tdc(&g.underlying_graph(), d)?;
    if !rep.is_valid() {
        return Err(Error::InvalidDecomposition(format!(
            "not a decomposition of the underlying graph: {rep:?}"
        )));
    }
    let nice = make_nice(d)?;
    let tau = g.tau();
    let sep_class = tau as u8;
    let z_class = tau as u8 + 1;
    let mut times: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for e in g.edges() {
        times.entry((e.u, e.v)).or_default().push(e.t);
    }
    let classes = |v: usize| -> Vec<u8> {
        if v == inst.s {
            vec![0]
        } else if v == inst.z {
            vec![z_class]
        } else {
            (0..=z_class).collect()
        }
    };
    let departs = |v: usize, c: u8| -> usize {
        if v == inst.s || !inst.strict {
            c as usize + 1
        } else {
            c as usize + 2
        }
    };
    let arc_ok = |a: usize, ca: u8, cb: u8, t: usize| -> bool {
        if ca >= sep_class || cb == sep_class || t < departs(a, ca) {
            return true;
        }
        cb < sep_class && (cb as usize) < t
    };
    let pair_ok = |a: usize, ca: u8, b: usize, cb: u8| -> bool {
        let key = (a.min(b), a.max(b));
        times.get(&key).is_none_or(|ts| {
            ts.iter()
                .all(|&t| arc_ok(a, ca, cb, t) && arc_ok(b, cb, ca, t))
        })
    };

    // Table: state (class per bag vertex) -> (cost, class of the forgotten vertex).
    let mut tables: Vec<BTreeMap<Vec<u8>, (usize, u8)>> = Vec::with_capacity(nice.nodes.len());
    let mut stats = SeparationStats::default();
    for node in &nice.nodes {
        let mut table: BTreeMap<Vec<u8>, (usize, u8)> = BTreeMap::new();
        match node.kind {
            NiceKind::Leaf => {
                table.insert(Vec::new(), (0, 0));
            }
            NiceKind::Introduce(x) => {
                let pos = node
                    .bag
                    .binary_search(&x)
                    .expect("introduced vertex in bag");
                for (state, &(cost, _)) in &tables[node.children[0]] {
                    for c in classes(x) {
                        let ok = node.bag.iter().enumerate().filter(|&(i, _)| i != pos).all(
                            |(i, &y)| {
                                let cy = state[if i < pos { i } else { i - 1 }];
                                pair_ok(x, c, y, cy)
                            },
                        );
                        if ok {
                            let mut next = state.clone();
                            next.insert(pos, c);
                            table.insert(next, (cost, 0));
                        }
                    }
                }
            }
            NiceKind::Forget(x) => {
                let child = &nice.nodes[node.children[0]];
                let pos = child
                    .bag
                    .binary_search(&x)
                    .expect("forgotten vertex in child bag");
                for (state, &(cost, _)) in &tables[node.children[0]] {
                    let c = state[pos];
                    let cost = cost + usize::from(c == sep_class);
                    let mut next = state.clone();
                    next.remove(pos);
                    match table.get(&next) {
                        Some(&(best, _)) if best <= cost => {}
                        _ => {
                            table.insert(next, (cost, c));
                        }
                    }
                }
            }
            NiceKind::Join => {
                let right = &tables[node.children[1]];
                for (state, &(cl, _)) in &tables[node.children[0]] {
                    if let Some(&(cr, _)) = right.get(state) {
                        table.insert(state.clone(), (cl + cr, 0));
                    }
                }
            }
        }
        stats.tables.push((node.bag.len(), table.len()));
        tables.push(table);
    }

    let Some(&(best, _)) = tables[nice.root].get(&Vec::new()) else {
        return Ok((None, stats));
    };
    if best > k {
        return Ok((None, stats));
    }
    let mut separator = Vec::new();
    let mut stack = vec![(nice.root, Vec::<u8>::new())];
    while let Some((i, state)) = stack.pop() {
        let node = &nice.nodes[i];
        match node.kind {
            NiceKind::Leaf => {}
            NiceKind::Introduce(x) => {
                let pos = node.bag.binary_search(&x).expect("in bag");
                let mut child = state;
                child.remove(pos);
                stack.push((node.children[0], child));
            }
            NiceKind::Forget(x) => {
                let (_, c) = tables[i][&state];
                if c == sep_class {
                    separator.push(x);
                }
                let pos = nice.nodes[node.children[0]]
                    .bag
                    .binary_search(&x)
                    .expect("in child bag");
                let mut child = state;
                child.insert(pos, c);
                stack.push((node.children[0], child));
            }
            NiceKind::Join => {
                stack.push((node.children[0], state.clone()));
                stack.push((node.children[1], state));
            }
        }
    }
    separator.sort_unstable();
    debug_assert_eq!(separator.len(), best);
    Ok((Some(separator), stats))
}
