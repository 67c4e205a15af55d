use std::collections::HashMap;
use std::fmt::Write;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::graph::StaticGraph;

/// A tree on `bags.len()` nodes together with one bag per node.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TreeDecomposition {
    /// Sorted, duplicate-free vertex lists.
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(bags: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TreeDecomposition { bags, edges }
    }

    /// A single bag holding every vertex.
    pub fn trivial(n: usize) -> Self {
        TreeDecomposition {
            bags: vec![(0..n).collect()],
            edges: Vec::new(),
        }
    }

    /// Largest bag size minus one; zero for an empty decomposition.
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    pub fn num_bags(&self) -> usize {
        self.bags.len()
    }

    /// Adjacency lists of the tree, or an error if the edges do not form a tree.
    pub fn tree_adjacency(&self) -> Result<Vec<Vec<usize>>> {
        tree_adjacency(self.bags.len(), &self.edges)
    }
}

pub(crate) fn tree_adjacency(nodes: usize, edges: &[(usize, usize)]) -> Result<Vec<Vec<usize>>> {
    let bad = |m: String| Err(Error::InvalidDecomposition(m));
    if nodes == 0 {
        return if edges.is_empty() {
            Ok(Vec::new())
        } else {
            bad("edges without nodes".into())
        };
    }
    if edges.len() != nodes - 1 {
        return bad(format!(
            "{} nodes need {} tree edges, found {}",
            nodes,
            nodes - 1,
            edges.len()
        ));
    }
    let mut adj = vec![Vec::new(); nodes];
    for &(a, b) in edges {
        if a >= nodes || b >= nodes {
            return bad(format!("tree edge {{{a},{b}}} names a missing node"));
        }
        if a == b {
            return bad(format!("tree self-loop at node {a}"));
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; nodes];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    if count != nodes {
        return bad("tree is disconnected".into());
    }
    Ok(adj)
}

/// First item whose occurrence set does not induce a subtree.
///
/// In a tree, `k` nodes induce a connected subgraph iff they span `k - 1` tree edges.
pub(crate) fn first_disconnected<T, B>(bags: &[B], edges: &[(usize, usize)]) -> Option<T>
where
    T: Hash + Eq + Clone + Ord,
    B: AsRef<[T]>,
{
    let mut nodes: HashMap<&T, usize> = HashMap::new();
    for b in bags {
        for x in b.as_ref() {
            *nodes.entry(x).or_default() += 1;
        }
    }
    let mut spans: HashMap<&T, usize> = HashMap::new();
    for &(a, b) in edges {
        let (small, large) = if bags[a].as_ref().len() <= bags[b].as_ref().len() {
            (bags[a].as_ref(), bags[b].as_ref())
        } else {
            (bags[b].as_ref(), bags[a].as_ref())
        };
        for x in small {
            if large.contains(x) {
                *spans.entry(x).or_default() += 1;
            }
        }
    }
    let mut bad: Vec<&T> = nodes
        .iter()
        .filter(|(x, &k)| spans.get(*x).copied().unwrap_or(0) + 1 != k)
        .map(|(x, _)| *x)
        .collect();
    bad.sort();
    bad.first().map(|x| (*x).clone())
}

/// Outcome of checking the three tree-decomposition conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TdcReport {
    pub width: usize,
    /// Condition (i): a vertex in no bag.
    pub uncovered_vertex: Option<usize>,
    /// Condition (ii): an edge contained in no bag.
    pub uncovered_edge: Option<(usize, usize)>,
    /// Condition (iii): a vertex whose bags do not form a subtree.
    pub disconnected_vertex: Option<usize>,
}

impl TdcReport {
    pub fn is_valid(&self) -> bool {
        self.uncovered_vertex.is_none()
            && self.uncovered_edge.is_none()
            && self.disconnected_vertex.is_none()
    }
}

/// Checks `d` against `g`. A non-tree or out-of-range vertex is a structural error.
pub fn validate_tdc(g: &StaticGraph, d: &TreeDecomposition) -> Result<TdcReport> {
    d.tree_adjacency()?;
    let n = g.n();
    let mut bags_of = vec![Vec::new(); n];
    for (i, b) in d.bags.iter().enumerate() {
        for &v in b {
            if v >= n {
                return Err(Error::InvalidDecomposition(format!(
                    "bag {i} holds vertex {v} outside 0..{n}"
                )));
            }
            bags_of[v].push(i);
        }
    }
    let uncovered_vertex = (0..n).find(|&v| bags_of[v].is_empty());
    let uncovered_edge = g.edges().find(|&(u, v)| {
        let (a, b) = if bags_of[u].len() <= bags_of[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        !bags_of[a]
            .iter()
            .any(|&i| d.bags[i].binary_search(&b).is_ok())
    });
    let disconnected_vertex = first_disconnected(&d.bags, &d.edges);
    Ok(TdcReport {
        width: d.width(),
        uncovered_vertex,
        uncovered_edge,
        disconnected_vertex,
    })
}

/// Reads a PACE `.td` file. Returns the decomposition (0-based vertices) and the declared vertex count.
pub fn parse_td(text: &str) -> Result<(TreeDecomposition, usize)> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
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
                if header.is_some() || f.len() != 5 || f[1] != "td" {
                    return Err(Error::parse(
                        line_no,
                        "expected a single `s td <bags> <width+1> <n>` line",
                    ));
                }
                let h = (num(f[2])?, num(f[3])?, num(f[4])?);
                bags = vec![None; h.0];
                header = Some(h);
            }
            "b" => {
                let (nb, _, n) =
                    header.ok_or_else(|| Error::parse(line_no, "bag before `s td` line"))?;
                if f.len() < 2 {
                    return Err(Error::parse(line_no, "bag line needs an id"));
                }
                let id = num(f[1])?;
                if id == 0 || id > nb {
                    return Err(Error::parse(
                        line_no,
                        format!("bag id {id} outside 1..{nb}"),
                    ));
                }
                let mut bag = Vec::new();
                for s in &f[2..] {
                    let v = num(s)?;
                    if v == 0 || v > n {
                        return Err(Error::parse(line_no, format!("vertex {v} outside 1..{n}")));
                    }
                    bag.push(v - 1);
                }
                if bags[id - 1].replace(bag).is_some() {
                    return Err(Error::parse(line_no, format!("bag {id} listed twice")));
                }
            }
            _ => {
                let (nb, _, _) =
                    header.ok_or_else(|| Error::parse(line_no, "edge before `s td` line"))?;
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
    let (_, declared, n) = header.ok_or_else(|| Error::parse(0, "missing `s td` line"))?;
    let bags: Vec<Vec<usize>> = bags.into_iter().map(Option::unwrap_or_default).collect();
    let td = TreeDecomposition::new(bags, edges);
    let actual = td.bags.iter().map(Vec::len).max().unwrap_or(0);
    if actual > declared {
        return Err(Error::parse(
            0,
            format!("declared bag size {declared} but found {actual}"),
        ));
    }
    Ok((td, n))
}

/// Writes a PACE `.td` file for a graph on `n` vertices.
pub fn write_td(d: &TreeDecomposition, n: usize) -> String {
    let max_bag = d.bags.iter().map(Vec::len).max().unwrap_or(0);
    let mut s = format!("s td {} {} {}\n", d.bags.len(), max_bag, n);
    for (i, b) in d.bags.iter().enumerate() {
        let _ = write!(s, "b {}", i + 1);
        for v in b {
            let _ = write!(s, " {}", v + 1);
        }
        s.push('\n');
    }
    for &(a, b) in &d.edges {
        let _ = writeln!(s, "{} {}", a + 1, b + 1);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p4_path_td() -> TreeDecomposition {
        TreeDecomposition::new(
            vec![vec![0, 1], vec![1, 2], vec![2, 3]],
            vec![(0, 1), (1, 2)],
        )
    }

    #[test]
    fn validates_path() {
        let rep = validate_tdc(&StaticGraph::path(4), &p4_path_td()).unwrap();
        assert!(rep.is_valid());
        assert_eq!(rep.width, 1);
    }

    #[test]
    fn witnesses() {
        let g = StaticGraph::path(4);
        let mut d = p4_path_td();
        d.bags[2] = vec![2];
        let rep = validate_tdc(&g, &d).unwrap();
        assert_eq!(rep.uncovered_vertex, Some(3));
        assert_eq!(rep.uncovered_edge, Some((2, 3)));

        let d = TreeDecomposition::new(
            vec![vec![0, 1], vec![1, 2], vec![2, 3, 0]],
            vec![(0, 1), (1, 2)],
        );
        assert_eq!(validate_tdc(&g, &d).unwrap().disconnected_vertex, Some(0));

        let d = TreeDecomposition::new(vec![vec![0], vec![1]], vec![]);
        assert!(validate_tdc(&StaticGraph::new(2), &d).is_err());
        let d = TreeDecomposition::new(vec![vec![5]], vec![]);
        assert!(validate_tdc(&StaticGraph::new(2), &d).is_err());
    }

    #[test]
    fn single_vertex() {
        let rep = validate_tdc(&StaticGraph::new(1), &TreeDecomposition::trivial(1)).unwrap();
        assert!(rep.is_valid());
        assert_eq!(rep.width, 0);
    }

    #[test]
    fn pace_round_trip() {
        let d = p4_path_td();
        let text = write_td(&d, 4);
        assert_eq!(text, "s td 3 2 4\nb 1 1 2\nb 2 2 3\nb 3 3 4\n1 2\n2 3\n");
        let (back, n) = parse_td(&format!("c hello\n{text}")).unwrap();
        assert_eq!((back, n), (d, 4));
        assert!(parse_td("s td 1 1 2\nb 1 3\n").is_err());
        assert!(parse_td("s td 1 1 2\nb 1 1 2\n").is_err());
        assert!(parse_td("b 1 1\n").is_err());
    }
}
