//! Temporal width parameters: layer treewidth tw∞, Δ-slice treewidth twΔ,
//! underlying treewidth tw↓ and temporal treewidth ttw.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::decomposition::td::{first_disconnected, tree_adjacency};
use crate::decomposition::{treewidth_exact, treewidth_heuristic, validate_tdc, TreeDecomposition};
use crate::error::{Error, Result};
use crate::expansion::{appearance_of, undirected_static_expansion};
use crate::graph::{StaticGraph, TemporalEdge, TemporalGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Heuristic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WidthOptions {
    pub mode: Mode,
    /// Vertex cap for the exact solver; `None` uses its default.
    pub budget_n: Option<usize>,
}

impl WidthOptions {
    pub fn exact() -> Self {
        WidthOptions {
            mode: Mode::Exact,
            budget_n: None,
        }
    }

    pub fn heuristic() -> Self {
        WidthOptions {
            mode: Mode::Heuristic,
            budget_n: None,
        }
    }

    pub fn with_budget(mut self, n: usize) -> Self {
        self.budget_n = Some(n);
        self
    }
}

/// A width value and whether it is exact or a heuristic upper bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Width {
    pub value: usize,
    pub exact: bool,
}

fn treewidth(g: &StaticGraph, opts: WidthOptions) -> Result<(Width, TreeDecomposition)> {
    match opts.mode {
        Mode::Exact => {
            let (value, td) = treewidth_exact(g, opts.budget_n)?;
            Ok((Width { value, exact: true }, td))
        }
        Mode::Heuristic => {
            let (value, td) = treewidth_heuristic(g);
            Ok((
                Width {
                    value,
                    exact: false,
                },
                td,
            ))
        }
    }
}

fn treewidth_or_fallback(g: &StaticGraph, opts: WidthOptions) -> (Width, TreeDecomposition) {
    treewidth(g, opts).unwrap_or_else(|_| {
        let (value, td) = treewidth_heuristic(g);
        (
            Width {
                value,
                exact: false,
            },
            td,
        )
    })
}

fn max_width<F>(count: usize, opts: WidthOptions, graph: F) -> Result<usize>
where
    F: Fn(usize) -> Result<StaticGraph> + Sync,
{
    let widths: Vec<usize> = (0..count)
        .into_par_iter()
        .map(|i| Ok(treewidth(&graph(i)?, opts)?.0.value))
        .collect::<Result<_>>()?;
    Ok(widths.into_iter().max().unwrap_or(0))
}

/// tw∞: the largest treewidth of a single layer.
pub fn tw_layers<W: Sync>(g: &TemporalGraph<W>, opts: WidthOptions) -> Result<usize> {
    max_width(g.tau(), opts, |i| g.layer(i + 1))
}

/// tw↓: treewidth of the underlying graph.
pub fn tw_underlying<W>(g: &TemporalGraph<W>, opts: WidthOptions) -> Result<usize> {
    Ok(treewidth(&g.underlying_graph(), opts)?.0.value)
}

/// twΔ: the largest treewidth of a union of `delta` consecutive layers.
pub fn tw_slice<W: Sync>(g: &TemporalGraph<W>, delta: usize, opts: WidthOptions) -> Result<usize> {
    if delta == 0 || delta > g.tau() {
        return Err(Error::Domain(format!(
            "window length {} outside 1..{}",
            delta,
            g.tau()
        )));
    }
    max_width(g.tau() - delta + 1, opts, |i| g.window_union(i + 1, delta))
}

/// ttw, computed as the treewidth of the undirected static expansion.
///
/// Falls back to the heuristic (flagged inexact) when the expansion exceeds the exact budget.
pub fn ttw<W>(g: &TemporalGraph<W>, opts: WidthOptions) -> (Width, TemporalTreeDecomposition) {
    let (w, td) = treewidth_or_fallback(&undirected_static_expansion(g), opts);
    (w, TemporalTreeDecomposition::from_expansion(g.n(), &td))
}

/// All four parameters. Each entry falls back to a flagged heuristic bound
/// when its exact computation is over budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WidthReport {
    pub tw_layer_max: Width,
    pub tw_underlying: Width,
    pub tw_slice: BTreeMap<usize, Width>,
    pub ttw: Width,
}

pub fn width_report<W: Sync>(
    g: &TemporalGraph<W>,
    deltas: &[usize],
    opts: WidthOptions,
) -> Result<WidthReport> {
    if let Some(&d) = deltas.iter().find(|&&d| d == 0 || d > g.tau()) {
        return Err(Error::Domain(format!(
            "window length {} outside 1..{}",
            d,
            g.tau()
        )));
    }
    let windows = |delta: usize| -> Width {
        let ws: Vec<Width> = (1..=g.tau() - delta + 1)
            .into_par_iter()
            .map(|i| {
                treewidth_or_fallback(&g.window_union(i, delta).expect("window in range"), opts).0
            })
            .collect();
        Width {
            value: ws.iter().map(|w| w.value).max().unwrap_or(0),
            exact: ws.iter().all(|w| w.exact),
        }
    };
    let tw_slice = deltas.iter().map(|&d| (d, windows(d))).collect();
    let tw_underlying = treewidth_or_fallback(&g.underlying_graph(), opts).0;
    Ok(WidthReport {
        tw_layer_max: windows(1),
        tw_underlying,
        tw_slice,
        ttw: ttw(g, opts).0,
    })
}

impl WidthReport {
    /// Violations of tw∞ ≤ twΔ ≤ tw↓ ≤ ttw ≤ (tw↓+1)·τ − 1 and of monotonicity in Δ.
    ///
    /// Only comparisons between exact values are made.
    pub fn ordering_violations(&self, tau: usize) -> Vec<String> {
        let mut out = Vec::new();
        let mut le = |a: Width, b: Width, what: &str| {
            if a.exact && b.exact && a.value > b.value {
                out.push(format!("{what}: {} > {}", a.value, b.value));
            }
        };
        le(self.tw_underlying, self.ttw, "tw↓ ≤ ttw");
        let mut prev = self.tw_layer_max;
        for (&d, &w) in &self.tw_slice {
            le(self.tw_layer_max, w, &format!("tw∞ ≤ tw{d}"));
            le(w, self.tw_underlying, &format!("tw{d} ≤ tw↓"));
            le(prev, w, &format!("tw slice monotone at {d}"));
            prev = w;
        }
        le(self.tw_layer_max, self.tw_underlying, "tw∞ ≤ tw↓");
        let bound = (self.tw_underlying.value + 1) * tau - 1;
        if self.ttw.exact && self.tw_underlying.exact && self.ttw.value > bound {
            out.push(format!("ttw ≤ (tw↓+1)τ−1: {} > {}", self.ttw.value, bound));
        }
        out
    }
}

/// Tree decomposition whose bags hold vertex appearances `(v, t)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TemporalTreeDecomposition {
    /// Sorted, duplicate-free.
    pub bags: Vec<Vec<(usize, usize)>>,
    pub edges: Vec<(usize, usize)>,
}

impl TemporalTreeDecomposition {
    pub fn new(bags: Vec<Vec<(usize, usize)>>, edges: Vec<(usize, usize)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TemporalTreeDecomposition { bags, edges }
    }

    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// Reads expansion vertex ids back as appearances.
    pub fn from_expansion(n: usize, td: &TreeDecomposition) -> Self {
        let bags = td
            .bags
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&id| appearance_of(n, id))
                    .map(|l| (l.vertex, l.row))
                    .collect()
            })
            .collect();
        Self::new(bags, td.edges.clone())
    }
}

/// Outcome of checking the four temporal-decomposition conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TtdcReport {
    pub width: usize,
    /// (i) an appearance in no bag.
    pub uncovered_appearance: Option<(usize, usize)>,
    /// (ii) a temporal edge whose endpoints at its time share no bag.
    pub uncovered_edge: Option<TemporalEdge>,
    /// (iii) `(v, t)` such that `(v, t)` and `(v, t + 1)` share no bag.
    pub broken_succession: Option<(usize, usize)>,
    /// (iv) an appearance whose bags do not form a subtree.
    pub disconnected_appearance: Option<(usize, usize)>,
}

impl TtdcReport {
    pub fn is_valid(&self) -> bool {
        self.uncovered_appearance.is_none()
            && self.uncovered_edge.is_none()
            && self.broken_succession.is_none()
            && self.disconnected_appearance.is_none()
    }
}

pub fn validate_ttdc<W>(g: &TemporalGraph<W>, d: &TemporalTreeDecomposition) -> Result<TtdcReport> {
    tree_adjacency(d.bags.len(), &d.edges)?;
    let mut pairs: HashSet<((usize, usize), (usize, usize))> = HashSet::new();
    let mut covered: HashSet<(usize, usize)> = HashSet::new();
    for (i, b) in d.bags.iter().enumerate() {
        for &(v, t) in b {
            if v >= g.n() || t == 0 || t > g.tau() {
                return Err(Error::InvalidDecomposition(format!(
                    "bag {i} holds appearance {v}@{t} outside the graph"
                )));
            }
            covered.insert((v, t));
        }
        for (a, &x) in b.iter().enumerate() {
            for &y in &b[a + 1..] {
                if x.0 == y.0 || x.1 == y.1 {
                    pairs.insert((x, y));
                }
            }
        }
    }
    let together = |x: (usize, usize), y: (usize, usize)| pairs.contains(&(x.min(y), x.max(y)));
    let uncovered_appearance = (1..=g.tau())
        .flat_map(|t| (0..g.n()).map(move |v| (v, t)))
        .find(|a| !covered.contains(a));
    let uncovered_edge = g
        .edges()
        .iter()
        .copied()
        .find(|e| !together((e.u, e.t), (e.v, e.t)));
    let broken_succession = (1..g.tau())
        .flat_map(|t| (0..g.n()).map(move |v| (v, t)))
        .find(|&(v, t)| !together((v, t), (v, t + 1)));
    let disconnected_appearance = first_disconnected(&d.bags, &d.edges);
    Ok(TtdcReport {
        width: d.width(),
        uncovered_appearance,
        uncovered_edge,
        broken_succession,
        disconnected_appearance,
    })
}

/// Replaces every vertex of every bag of `base` by all of its appearances.
pub fn canonical_ttdc<W>(
    g: &TemporalGraph<W>,
    base: &TreeDecomposition,
) -> Result<TemporalTreeDecomposition> {
    let rep = validate_tdc(&g.underlying_graph(), base)?;
    if !rep.is_valid() {
        return Err(Error::InvalidDecomposition(format!(
            "base decomposition fails: {rep:?}"
        )));
    }
    let bags = base
        .bags
        .iter()
        .map(|b| {
            b.iter()
                .flat_map(|&v| (1..=g.tau()).map(move |t| (v, t)))
                .collect()
        })
        .collect();
    Ok(TemporalTreeDecomposition::new(bags, base.edges.clone()))
}

/// Text form: `s ttdc <bags> <width+1> <n> <tau>`, then `b <id> v@t ...` lines
/// (ids 1-based, vertices 0-based, times 1-based), then tree edges.
pub fn write_ttdc(d: &TemporalTreeDecomposition, n: usize, tau: usize) -> String {
    let max_bag = d.bags.iter().map(Vec::len).max().unwrap_or(0);
    let mut s = format!("s ttdc {} {} {} {}\n", d.bags.len(), max_bag, n, tau);
    for (i, b) in d.bags.iter().enumerate() {
        let _ = write!(s, "b {}", i + 1);
        for (v, t) in b {
            let _ = write!(s, " {v}@{t}");
        }
        s.push('\n');
    }
    for &(a, b) in &d.edges {
        let _ = writeln!(s, "{} {}", a + 1, b + 1);
    }
    s
}

/// Parses [`write_ttdc`] output; returns the decomposition, `n` and `tau`.
pub fn parse_ttdc(text: &str) -> Result<(TemporalTreeDecomposition, usize, usize)> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<(usize, usize)>>> = Vec::new();
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| -> Result<usize> {
            s.parse()
                .map_err(|_| Error::parse(line_no, format!("bad number `{s}`")))
        };
        match f[0] {
            "s" => {
                if header.is_some() || f.len() != 6 || f[1] != "ttdc" {
                    return Err(Error::parse(
                        line_no,
                        "expected a single `s ttdc <bags> <width+1> <n> <tau>` line",
                    ));
                }
                header = Some((num(f[2])?, num(f[4])?, num(f[5])?));
                bags = vec![None; num(f[2])?];
            }
            "b" => {
                let (nb, n, tau) =
                    header.ok_or_else(|| Error::parse(line_no, "bag before header"))?;
                let id = num(f.get(1).copied().unwrap_or(""))?;
                if id == 0 || id > nb {
                    return Err(Error::parse(
                        line_no,
                        format!("bag id {id} outside 1..{nb}"),
                    ));
                }
                let mut bag = Vec::new();
                for s in &f[2..] {
                    let (v, t) = s
                        .split_once('@')
                        .ok_or_else(|| Error::parse(line_no, format!("expected v@t, got `{s}`")))?;
                    let (v, t) = (num(v)?, num(t)?);
                    if v >= n || t == 0 || t > tau {
                        return Err(Error::parse(
                            line_no,
                            format!("appearance {v}@{t} outside the graph"),
                        ));
                    }
                    bag.push((v, t));
                }
                if bags[id - 1].replace(bag).is_some() {
                    return Err(Error::parse(line_no, format!("bag {id} listed twice")));
                }
            }
            _ => {
                let (nb, _, _) =
                    header.ok_or_else(|| Error::parse(line_no, "edge before header"))?;
                if f.len() != 2 {
                    return Err(Error::parse(
                        line_no,
                        "tree edge line must hold two bag ids",
                    ));
                }
                let (a, b) = (num(f[0])?, num(f[1])?);
                if a == 0 || b == 0 || a > nb || b > nb {
                    return Err(Error::parse(line_no, "tree edge names a missing bag"));
                }
                edges.push((a - 1, b - 1));
            }
        }
    }
    let (_, n, tau) = header.ok_or_else(|| Error::parse(0, "missing `s ttdc` line"))?;
    let bags = bags.into_iter().map(Option::unwrap_or_default).collect();
    Ok((TemporalTreeDecomposition::new(bags, edges), n, tau))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type G = TemporalGraph<Rational>;

    fn all_times_path(n: usize, tau: usize) -> G {
        G::new(
            n,
            tau,
            (1..=tau).flat_map(|t| (1..n).map(move |v| (v - 1, v, t))),
        )
        .unwrap()
    }

    #[test]
    fn grid_case() {
        let g = all_times_path(3, 3);
        let (w, d) = ttw(&g, WidthOptions::exact());
        assert_eq!(
            w,
            Width {
                value: 3,
                exact: true
            }
        );
        assert!(validate_ttdc(&g, &d).unwrap().is_valid());
    }

    #[test]
    fn forest_with_single_appearances() {
        let g = G::new(4, 3, [(0, 1, 1), (1, 2, 3), (1, 3, 2)]).unwrap();
        assert_eq!(ttw(&g, WidthOptions::exact()).0.value, 1);
    }

    #[test]
    fn single_layer_everything_equal() {
        let g = G::new(3, 1, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        let r = width_report(&g, &[1], WidthOptions::exact()).unwrap();
        assert_eq!(r.tw_layer_max.value, 2);
        assert_eq!(r.tw_underlying.value, 2);
        assert_eq!(r.tw_slice[&1].value, 2);
        assert_eq!(r.ttw.value, 2);
        assert!(r.ordering_violations(1).is_empty());
    }

    #[test]
    fn slice_bounds() {
        let g = G::new(3, 3, [(0, 1, 1), (1, 2, 2), (0, 2, 3)]).unwrap();
        let o = WidthOptions::exact();
        assert_eq!(tw_slice(&g, 1, o).unwrap(), tw_layers(&g, o).unwrap());
        assert_eq!(tw_slice(&g, 3, o).unwrap(), tw_underlying(&g, o).unwrap());
        assert_eq!(tw_slice(&g, 2, o).unwrap(), 1);
        assert!(tw_slice(&g, 4, o).is_err());
        assert!(tw_slice(&g, 0, o).is_err());
        assert_eq!(tw_layers(&G::new(3, 2, []).unwrap(), o).unwrap(), 0);
    }

    #[test]
    fn succession_witness() {
        let g = G::new(1, 2, []).unwrap();
        let good = TemporalTreeDecomposition::new(
            vec![vec![(0, 1)], vec![(0, 1), (0, 2)], vec![(0, 2)]],
            vec![(0, 1), (1, 2)],
        );
        assert!(validate_ttdc(&g, &good).unwrap().is_valid());
        let bad = TemporalTreeDecomposition::new(vec![vec![(0, 1)], vec![(0, 2)]], vec![(0, 1)]);
        assert_eq!(
            validate_ttdc(&g, &bad).unwrap().broken_succession,
            Some((0, 1))
        );
    }

    #[test]
    fn canonical_width() {
        let g = all_times_path(3, 2);
        let base = TreeDecomposition::trivial(3);
        let d = canonical_ttdc(&g, &base).unwrap();
        assert_eq!(d.width(), 5);
        assert!(validate_ttdc(&g, &d).unwrap().is_valid());
        let bad = TreeDecomposition::new(vec![vec![0, 1]], vec![]);
        assert!(canonical_ttdc(&g, &bad).is_err());
    }

    #[test]
    fn text_round_trip() {
        let g = all_times_path(2, 2);
        let (_, d) = ttw(&g, WidthOptions::exact());
        let text = write_ttdc(&d, 2, 2);
        assert_eq!(parse_ttdc(&text).unwrap(), (d, 2, 2));
        assert!(parse_ttdc("s ttdc 1 1 2 2\nb 1 2@1\n").is_err());
    }
}
