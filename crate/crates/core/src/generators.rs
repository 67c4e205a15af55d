//! Instance generators: reduction constructions and seeded random graphs.
//!
//! Random generators use the ChaCha8 stream cipher generator seeded with
//! `seed_from_u64`, so equal seeds give byte-identical output.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{StaticGraph, TemporalGraph};
use crate::reach::{path_reachable_mask, WalkQuery};
use crate::Rational;

/// CNF formula; literal `+i` / `-i` is variable `i` (1-based) or its negation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sat3Formula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl Sat3Formula {
    /// Requires nonempty clauses of at most three literals and at most three
    /// occurrences per variable.
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        let mut occ = vec![0usize; num_vars];
        for (j, c) in clauses.iter().enumerate() {
            if c.is_empty() || c.len() > 3 {
                return Err(Error::Domain(format!(
                    "clause {j} has {} literals",
                    c.len()
                )));
            }
            for &lit in c {
                let v = lit.unsigned_abs() as usize;
                if lit == 0 || v > num_vars {
                    return Err(Error::Domain(format!("clause {j}: bad literal {lit}")));
                }
                occ[v - 1] += 1;
                if occ[v - 1] > 3 {
                    return Err(Error::Domain(format!(
                        "variable {v} occurs more than three times"
                    )));
                }
            }
        }
        Ok(Sat3Formula { num_vars, clauses })
    }

    /// Bit `i` of `assignment` is the value of variable `i + 1`.
    pub fn satisfied_by(&self, assignment: u64) -> bool {
        self.clauses.iter().all(|c| {
            c.iter().any(|&lit| {
                let value = assignment >> (lit.unsigned_abs() - 1) & 1 == 1;
                value == (lit > 0)
            })
        })
    }

    /// Truth-table check (at most 24 variables).
    pub fn is_satisfiable(&self) -> bool {
        assert!(self.num_vars <= 24, "truth table too large");
        (0..1u64 << self.num_vars).any(|a| self.satisfied_by(a))
    }
}

/// Stamps of one literal occurrence on its clause leaf.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OccurrenceSlot {
    pub clause: usize,
    pub literal: i32,
    pub entry: usize,
    pub exit: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SatConstruction {
    #[serde(skip)]
    pub graph: TemporalGraph,
    pub source: usize,
    /// Leaf of variable `i + 1`.
    pub variable_leaf: Vec<usize>,
    pub clause_leaf: Vec<usize>,
    /// `[a, b, c]`: a visit over `[a, b]` sets the variable false, over `[b, c]` true.
    pub variable_stamps: Vec<[usize; 3]>,
    pub slots: Vec<OccurrenceSlot>,
}

/// Star on centre 0 with one leaf per variable and per clause; the formula is
/// satisfiable iff a strict walk from the centre visits every leaf and returns.
///
/// Variable `i` gets stamps `a < b < c` on its leaf. Each positive occurrence
/// gets its own pair of consecutive stamps strictly between `a` and `b`, each
/// negative occurrence between `b` and `c`, placed on the clause's leaf. Blocks
/// of different variables do not overlap.
pub fn gen_rtbtge_from_sat(f: &Sat3Formula) -> Result<SatConstruction> {
    let f = Sat3Formula::new(f.num_vars, f.clauses.clone())?;
    let v = f.num_vars;
    let variable_leaf: Vec<usize> = (1..=v).collect();
    let clause_leaf: Vec<usize> = (v + 1..=v + f.clauses.len()).collect();
    let mut variable_stamps = Vec::with_capacity(v);
    let mut slots = Vec::new();
    let mut edges = Vec::new();
    let mut cursor = 1;
    for var in 1..=v as i32 {
        let occurrences = |sign: i32| -> Vec<(usize, i32)> {
            f.clauses
                .iter()
                .enumerate()
                .flat_map(|(j, c)| {
                    c.iter()
                        .filter(move |&&l| l == sign * var)
                        .map(move |&l| (j, l))
                })
                .collect()
        };
        let a = cursor;
        let mut t = a;
        for (j, lit) in occurrences(1) {
            slots.push(OccurrenceSlot {
                clause: j,
                literal: lit,
                entry: t + 1,
                exit: t + 2,
            });
            t += 2;
        }
        let b = t + 1;
        t = b;
        for (j, lit) in occurrences(-1) {
            slots.push(OccurrenceSlot {
                clause: j,
                literal: lit,
                entry: t + 1,
                exit: t + 2,
            });
            t += 2;
        }
        let c = t + 1;
        cursor = c + 1;
        let leaf = variable_leaf[var as usize - 1];
        edges.extend([(0, leaf, a), (0, leaf, b), (0, leaf, c)]);
        variable_stamps.push([a, b, c]);
    }
    for s in &slots {
        edges.push((0, clause_leaf[s.clause], s.entry));
        edges.push((0, clause_leaf[s.clause], s.exit));
    }
    let tau = (cursor - 1).max(1);
    let graph = TemporalGraph::new(1 + v + f.clauses.len(), tau, edges)?;
    Ok(SatConstruction {
        graph,
        source: 0,
        variable_leaf,
        clause_leaf,
        variable_stamps,
        slots,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueInstance {
    pub graph: StaticGraph,
    pub r: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CliqueConstruction {
    #[serde(skip)]
    pub graph: TemporalGraph,
    pub alpha: usize,
    pub beta: usize,
    /// Deletion budget.
    pub k: usize,
    /// Reach bound.
    pub h: usize,
    pub x: usize,
    pub y: usize,
    pub first_star: Vec<usize>,
    /// `(leaf, (i, j))`: the second-star leaf standing for the padded input edge `{i, j}`.
    pub edge_leaves: Vec<(usize, (usize, usize))>,
    /// Vertex joined to everything when the target size was three.
    pub universal_vertex: Option<usize>,
    /// Vertex added when the clique size equals the vertex count.
    pub isolated_vertex: Option<usize>,
    /// Clique size asked of the padded graph.
    pub r_padded: usize,
    pub baseline_reach: usize,
}

/// Two stars with adjacent centres `x` and `y`, built from a padded copy of the input.
///
/// For target size three a universal vertex is joined first (a triangle exists
/// iff the padded graph has a 4-clique). If the target size then equals the
/// vertex count, an isolated vertex is added. With `m` padded edges, `x` has
/// `m` leaves at time 1; `{x, y}` is present at `iβ + 2` for each padded vertex
/// `i` (1-based); the leaf of edge `{v_i, v_j}` meets `y` at `iβ + α + 2` and
/// `jβ + α + 2`. Then `k = r` and `h` is the baseline reach of `x` minus
/// `r(r − 1)/2`. Requires `1 ≤ α ≤ β`.
pub fn gen_trted_from_clique(
    c: &CliqueInstance,
    alpha: usize,
    beta: usize,
) -> Result<CliqueConstruction> {
    if alpha == 0 || alpha > beta {
        return Err(Error::Domain(format!(
            "need 1 ≤ alpha ≤ beta, got alpha={alpha} beta={beta}"
        )));
    }
    if c.r > c.graph.n() {
        return Err(Error::Domain(format!(
            "clique size {} exceeds vertex count {}",
            c.r,
            c.graph.n()
        )));
    }
    let mut edges: Vec<(usize, usize)> = c.graph.edges().collect();
    let mut n = c.graph.n();
    let mut r = c.r;
    let mut universal_vertex = None;
    let mut isolated_vertex = None;
    if r == 3 {
        edges.extend((0..n).map(|v| (v, n)));
        universal_vertex = Some(n);
        n += 1;
        r = 4;
    }
    if r == n && r > 0 {
        isolated_vertex = Some(n);
        n += 1;
    }
    let m = edges.len();
    let (x, y) = (0, 1);
    let first_star: Vec<usize> = (2..2 + m).collect();
    let edge_leaf = |l: usize| 2 + m + l;
    let mut temporal = Vec::new();
    for &leaf in &first_star {
        temporal.push((x, leaf, 1));
    }
    for i in 1..=n {
        temporal.push((x, y, i * beta + 2));
    }
    let mut edge_leaves = Vec::with_capacity(m);
    for (l, &(a, b)) in edges.iter().enumerate() {
        let (i, j) = (a + 1, b + 1);
        temporal.push((y, edge_leaf(l), i * beta + alpha + 2));
        temporal.push((y, edge_leaf(l), j * beta + alpha + 2));
        edge_leaves.push((edge_leaf(l), (a, b)));
    }
    let tau = n * beta + alpha + 2;
    let graph = TemporalGraph::new(2 + 2 * m, tau, temporal)?;
    let q = WalkQuery::from(x)
        .strict(true)
        .gaps(Some(alpha), Some(beta));
    let baseline_reach = path_reachable_mask(&graph, &q, None)
        .into_iter()
        .filter(|&b| b)
        .count();
    let h = baseline_reach.saturating_sub(r * r.saturating_sub(1) / 2);
    Ok(CliqueConstruction {
        graph,
        alpha,
        beta,
        k: r,
        h,
        x,
        y,
        first_star,
        edge_leaves,
        universal_vertex,
        isolated_vertex,
        r_padded: r,
        baseline_reach,
    })
}

/// Includes each `(pair, time)` independently with probability `p`.
pub fn gen_random(n: usize, tau: usize, p: f64, seed: u64) -> Result<TemporalGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for t in 1..=tau {
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v, t));
                }
            }
        }
    }
    TemporalGraph::new(n, tau, edges)
}

/// Like [`gen_random`], with weights drawn uniformly from `{0, 1/4, …, max_quarters/4}`.
pub fn gen_random_weighted(
    n: usize,
    tau: usize,
    p: f64,
    max_quarters: i64,
    seed: u64,
) -> Result<TemporalGraph> {
    let g = gen_random(n, tau, p, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0f7e_1647);
    let weighted: Vec<_> = g
        .edges()
        .iter()
        .map(|e| {
            (
                (e.u, e.v, e.t),
                Rational::new(rng.gen_range(0..=max_quarters), 4),
            )
        })
        .collect();
    TemporalGraph::with_weights(n, tau, weighted)
}

/// Every layer is a uniformly shuffled random recursive spanning tree plus
/// each remaining pair with probability `p_extra`.
pub fn gen_connected_layers(
    n: usize,
    tau: usize,
    p_extra: f64,
    seed: u64,
) -> Result<TemporalGraph> {
    if n == 0 {
        return Err(Error::Domain("need at least one vertex".into()));
    }
    if !(0.0..=1.0).contains(&p_extra) {
        return Err(Error::Domain(format!(
            "probability {p_extra} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for t in 1..=tau {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let mut layer = StaticGraph::new(n);
        for i in 1..n {
            let j = rng.gen_range(0..i);
            layer.add_edge(perm[i], perm[j]);
        }
        for u in 0..n {
            for v in u + 1..n {
                if !layer.has_edge(u, v) && rng.gen_bool(p_extra) {
                    layer.add_edge(u, v);
                }
            }
        }
        edges.extend(layer.edges().map(|(u, v)| (u, v, t)));
    }
    TemporalGraph::new(n, tau, edges)
}
