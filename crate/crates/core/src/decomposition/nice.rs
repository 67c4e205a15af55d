use crate::error::{Error, Result};

use super::td::{first_disconnected, TreeDecomposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceKind,
    /// Sorted.
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// Rooted nice decomposition with empty root and leaf bags.
///
/// Children always precede their parent in `nodes`, so a forward pass is a
/// bottom-up traversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
    pub root: usize,
}

impl NiceTreeDecomposition {
    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| n.bag.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// Checks the node grammar; the message names the offending node.
    pub fn check(&self) -> Result<(), String> {
        if self.nodes.is_empty() {
            return Err("no nodes".into());
        }
        if self.root != self.nodes.len() - 1 || !self.nodes[self.root].bag.is_empty() {
            return Err("root must be the last node and have an empty bag".into());
        }
        let mut parents = vec![0usize; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            if node.bag.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("node {i}: bag not sorted"));
            }
            for &c in &node.children {
                if c >= i {
                    return Err(format!("node {i}: child {c} does not precede it"));
                }
                parents[c] += 1;
            }
            let child_bag = |j: usize| &self.nodes[node.children[j]].bag;
            match node.kind {
                NiceKind::Leaf => {
                    if !node.children.is_empty() || !node.bag.is_empty() {
                        return Err(format!("node {i}: leaf must be childless and empty"));
                    }
                }
                NiceKind::Introduce(v) => {
                    if node.children.len() != 1 {
                        return Err(format!("node {i}: introduce needs one child"));
                    }
                    let mut expect = child_bag(0).clone();
                    if expect.contains(&v) {
                        return Err(format!("node {i}: introduced vertex {v} already in child"));
                    }
                    expect.push(v);
                    expect.sort_unstable();
                    if expect != node.bag {
                        return Err(format!("node {i}: bag is not child bag plus {v}"));
                    }
                }
                NiceKind::Forget(v) => {
                    if node.children.len() != 1 {
                        return Err(format!("node {i}: forget needs one child"));
                    }
                    let mut expect = node.bag.clone();
                    if expect.contains(&v) {
                        return Err(format!("node {i}: forgotten vertex {v} still present"));
                    }
                    expect.push(v);
                    expect.sort_unstable();
                    if &expect != child_bag(0) {
                        return Err(format!("node {i}: bag is not child bag minus {v}"));
                    }
                }
                NiceKind::Join => {
                    if node.children.len() != 2
                        || child_bag(0) != &node.bag
                        || child_bag(1) != &node.bag
                    {
                        return Err(format!(
                            "node {i}: join needs two children with identical bags"
                        ));
                    }
                }
            }
        }
        for (i, &p) in parents.iter().enumerate() {
            if (i == self.root && p != 0) || (i != self.root && p != 1) {
                return Err(format!("node {i}: has {p} parents"));
            }
        }
        Ok(())
    }

    /// Forgets the tags, keeping bags and tree edges.
    pub fn to_tree_decomposition(&self) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|n| n.bag.clone()).collect();
        let edges = self
            .nodes
            .iter()
            .enumerate()
            .flat_map(|(i, n)| n.children.iter().map(move |&c| (c, i)))
            .collect();
        TreeDecomposition { bags, edges }
    }
}

/// Converts a decomposition to nice form rooted at bag 0. Width is preserved.
///
/// Fails if `d` is not a tree or some vertex's bags are not connected.
pub fn make_nice(d: &TreeDecomposition) -> Result<NiceTreeDecomposition> {
    let adj = d.tree_adjacency()?;
    if let Some(v) = first_disconnected::<usize, _>(&d.bags, &d.edges) {
        return Err(Error::InvalidDecomposition(format!(
            "bags of vertex {v} are not connected"
        )));
    }
    let mut b = Builder { nodes: Vec::new() };
    let top = if d.bags.is_empty() {
        b.push(NiceKind::Leaf, Vec::new(), Vec::new())
    } else {
        b.subtree(d, &adj, 0)
    };
    let root = b.forget_to(top, &[]);
    Ok(NiceTreeDecomposition {
        nodes: b.nodes,
        root,
    })
}

struct Builder {
    nodes: Vec<NiceNode>,
}

impl Builder {
    fn push(&mut self, kind: NiceKind, bag: Vec<usize>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode {
            kind,
            bag,
            children,
        });
        self.nodes.len() - 1
    }

    /// Nice subtree for the tree rooted at `root`; its top bag equals `bags[root]`.
    fn subtree(&mut self, d: &TreeDecomposition, adj: &[Vec<usize>], root: usize) -> usize {
        let mut order = Vec::with_capacity(adj.len());
        let mut parent = vec![usize::MAX; adj.len()];
        let mut stack = vec![root];
        parent[root] = root;
        while let Some(u) = stack.pop() {
            order.push(u);
            for &v in &adj[u] {
                if parent[v] == usize::MAX {
                    parent[v] = u;
                    stack.push(v);
                }
            }
        }
        let mut top = vec![usize::MAX; adj.len()];
        for &u in order.iter().rev() {
            let target = &d.bags[u];
            let mut branches = Vec::new();
            for &c in &adj[u] {
                if c != u && parent[c] == u {
                    let t = self.forget_to(top[c], target);
                    branches.push(self.introduce_to(t, target));
                }
            }
            if branches.is_empty() {
                let leaf = self.push(NiceKind::Leaf, Vec::new(), Vec::new());
                branches.push(self.introduce_to(leaf, target));
            }
            let mut acc = branches[0];
            for &br in &branches[1..] {
                acc = self.push(NiceKind::Join, target.clone(), vec![acc, br]);
            }
            top[u] = acc;
        }
        top[root]
    }

    /// Forgets every vertex of the node's bag that is not in `keep`.
    fn forget_to(&mut self, mut node: usize, keep: &[usize]) -> usize {
        let drop: Vec<usize> = self.nodes[node]
            .bag
            .iter()
            .copied()
            .filter(|v| keep.binary_search(v).is_err())
            .collect();
        for v in drop {
            let bag: Vec<usize> = self.nodes[node]
                .bag
                .iter()
                .copied()
                .filter(|&x| x != v)
                .collect();
            node = self.push(NiceKind::Forget(v), bag, vec![node]);
        }
        node
    }

    /// Introduces every vertex of `target` missing from the node's bag.
    fn introduce_to(&mut self, mut node: usize, target: &[usize]) -> usize {
        for &v in target {
            if self.nodes[node].bag.binary_search(&v).is_err() {
                let mut bag = self.nodes[node].bag.clone();
                let pos = bag.binary_search(&v).unwrap_err();
                bag.insert(pos, v);
                node = self.push(NiceKind::Introduce(v), bag, vec![node]);
            }
        }
        node
    }
}
