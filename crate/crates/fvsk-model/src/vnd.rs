//! Very nice tree decompositions. Every bag carries the virtual vertex
//! `v0`, which has id `n`, so the root and the leaves have bag `{v0}`.

use std::collections::HashSet;

use crate::error::{ModelError, Result};
use crate::graph::LabeledGraph;
use crate::td::TreeDecomposition;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VnKind {
    Leaf,
    IntroduceVertex(usize),
    IntroduceEdge(usize, usize),
    ForgetVertex(usize),
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VnNode {
    pub kind: VnKind,
    pub children: Vec<usize>,
    /// Sorted, always contains `v0`.
    pub bag: Vec<usize>,
}

/// Nodes are stored children first; `root` is the last node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VeryNiceDecomposition {
    pub n: usize,
    pub nodes: Vec<VnNode>,
    pub root: usize,
}

impl VeryNiceDecomposition {
    pub fn v0(&self) -> usize {
        self.n
    }

    pub fn max_bag(&self) -> usize {
        self.nodes.iter().map(|x| x.bag.len()).max().unwrap_or(0)
    }

    pub fn parents(&self) -> Vec<Option<usize>> {
        let mut p = vec![None; self.nodes.len()];
        for (i, x) in self.nodes.iter().enumerate() {
            for &c in &x.children {
                p[c] = Some(i);
            }
        }
        p
    }

    /// Checks node semantics, that every edge of `g` is introduced exactly
    /// once and that each edge node sits above every join holding both ends.
    pub fn check(&self, g: &LabeledGraph) -> Result<()> {
        let bad = |m: String| Err(ModelError::InvalidDecomposition(m));
        let v0 = self.v0();
        if self.n != g.n || self.root + 1 != self.nodes.len() {
            return bad("shape mismatch".into());
        }
        let mut edge_nodes: Vec<(usize, (usize, usize))> = Vec::new();
        let mut forgotten = vec![0usize; self.n];
        for (i, x) in self.nodes.iter().enumerate() {
            if x.children.iter().any(|&c| c >= i) {
                return bad(format!("node {i} is not in topological order"));
            }
            if x.bag.binary_search(&v0).is_err() {
                return bad(format!("node {i} lacks v0"));
            }
            let child_bag = |j: usize| &self.nodes[x.children[j]].bag;
            let ok = match x.kind {
                VnKind::Leaf => x.children.is_empty() && x.bag == [v0],
                VnKind::IntroduceVertex(v) => {
                    x.children.len() == 1 && {
                        let mut b = child_bag(0).clone();
                        let fresh = b.binary_search(&v).is_err();
                        b.push(v);
                        b.sort_unstable();
                        fresh && v < self.n && b == x.bag
                    }
                }
                VnKind::ForgetVertex(v) => {
                    x.children.len() == 1 && {
                        let b: Vec<usize> = child_bag(0).iter().copied().filter(|&w| w != v).collect();
                        if let Some(c) = forgotten.get_mut(v) {
                            *c += 1;
                        }
                        v < self.n && b.len() + 1 == child_bag(0).len() && b == x.bag
                    }
                }
                VnKind::IntroduceEdge(u, v) => {
                    edge_nodes.push((i, (u.min(v), u.max(v))));
                    x.children.len() == 1
                        && *child_bag(0) == x.bag
                        && u != v
                        && x.bag.binary_search(&u).is_ok()
                        && x.bag.binary_search(&v).is_ok()
                }
                VnKind::Join => x.children.len() == 2 && *child_bag(0) == x.bag && *child_bag(1) == x.bag,
            };
            if !ok {
                return bad(format!("node {i} ({:?}) violates its bag rule", x.kind));
            }
        }
        if self.nodes[self.root].bag != [v0] {
            return bad("root bag is not {v0}".into());
        }
        if let Some(v) = forgotten.iter().position(|&c| c != 1) {
            return bad(format!("vertex {} forgotten {} times", v + 1, forgotten[v]));
        }
        let want: HashSet<(usize, usize)> = g.edges.iter().copied().collect();
        let mut have = HashSet::new();
        for &(_, e) in &edge_nodes {
            if !have.insert(e) {
                return bad(format!("edge {} {} introduced twice", e.0 + 1, e.1 + 1));
            }
        }
        if have != want || want.len() != g.edges.len() {
            return bad("introduced edges differ from the graph".into());
        }
        let parent = self.parents();
        for (j, x) in self.nodes.iter().enumerate() {
            if x.kind != VnKind::Join {
                continue;
            }
            let mut anc = HashSet::new();
            let mut cur = parent[j];
            while let Some(p) = cur {
                anc.insert(p);
                cur = parent[p];
            }
            for &(e_node, (u, v)) in &edge_nodes {
                let holds = x.bag.binary_search(&u).is_ok() && x.bag.binary_search(&v).is_ok();
                if holds && !anc.contains(&e_node) {
                    return bad(format!("edge {} {} is introduced below join {j}", u + 1, v + 1));
                }
            }
        }
        Ok(())
    }
}

struct Builder {
    v0: usize,
    nodes: Vec<VnNode>,
    adj: Vec<HashSet<usize>>,
}

impl Builder {
    fn push(&mut self, kind: VnKind, children: Vec<usize>, bag: Vec<usize>) -> usize {
        self.nodes.push(VnNode { kind, children, bag });
        self.nodes.len() - 1
    }

    fn introduce(&mut self, mut top: usize, v: usize) -> usize {
        let mut bag = self.nodes[top].bag.clone();
        bag.push(v);
        bag.sort_unstable();
        top = self.push(VnKind::IntroduceVertex(v), vec![top], bag);
        top
    }

    /// Emits the edges from `v` to the rest of the bag, then forgets `v`.
    fn forget(&mut self, mut top: usize, v: usize) -> usize {
        let bag = self.nodes[top].bag.clone();
        for &w in &bag {
            if w != self.v0 && w != v && self.adj[v].contains(&w) {
                top = self.push(VnKind::IntroduceEdge(v.min(w), v.max(w)), vec![top], bag.clone());
            }
        }
        let rest: Vec<usize> = bag.into_iter().filter(|&w| w != v).collect();
        self.push(VnKind::ForgetVertex(v), vec![top], rest)
    }

    /// Moves from bag `from ∪ {v0}` at `top` to `to ∪ {v0}`.
    fn transition(&mut self, mut top: usize, from: &[usize], to: &[usize]) -> usize {
        for &v in from {
            if to.binary_search(&v).is_err() {
                top = self.forget(top, v);
            }
        }
        for &v in to {
            if from.binary_search(&v).is_err() {
                top = self.introduce(top, v);
            }
        }
        top
    }
}

/// Converts a valid decomposition of `g` into a very nice one rooted at
/// bag 0. The maximum bag size grows by exactly one.
pub fn make_very_nice(td: &TreeDecomposition, g: &LabeledGraph) -> Result<VeryNiceDecomposition> {
    td.validate(g)?;
    if !g.is_simple() {
        return Err(ModelError::InvalidGraph("multigraph".into()));
    }
    let v0 = g.n;
    let mut adj = vec![HashSet::new(); g.n];
    for &(u, v) in &g.edges {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    let mut b = Builder { v0, nodes: Vec::new(), adj };
    let tadj = td.tree_adjacency();
    // Post-order over the bag tree without recursion.
    let mut parent = vec![usize::MAX; td.bags.len()];
    let mut order = Vec::with_capacity(td.bags.len());
    let mut stack = vec![0usize];
    parent[0] = 0;
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in &tadj[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    let mut top = vec![usize::MAX; td.bags.len()];
    for &x in order.iter().rev() {
        let bag = &td.bags[x];
        let mut acc: Option<usize> = None;
        for &y in &tadj[x] {
            if parent[y] != x || y == 0 {
                continue;
            }
            let t = b.transition(top[y], &td.bags[y], bag);
            acc = Some(match acc {
                None => t,
                Some(a) => {
                    let jb = b.nodes[a].bag.clone();
                    b.push(VnKind::Join, vec![a, t], jb)
                }
            });
        }
        top[x] = match acc {
            Some(a) => a,
            None => {
                let leaf = b.push(VnKind::Leaf, Vec::new(), vec![v0]);
                b.transition(leaf, &[], bag)
            }
        };
    }
    let root = b.transition(top[0], &td.bags[0], &[]);
    Ok(VeryNiceDecomposition { n: g.n, nodes: b.nodes, root })
}

/// Labels from a top-down pass over the forget nodes: each forgotten vertex
/// takes the least value missing from the labels of the rest of its bag.
/// Index `n` (the virtual `v0`) gets 0; real vertices get `1..=max_bag-1`.
pub fn assign_labels(vnd: &VeryNiceDecomposition) -> Vec<u32> {
    let mut label = vec![u32::MAX; vnd.n + 1];
    label[vnd.n] = 0;
    let mut stack = vec![vnd.root];
    while let Some(x) = stack.pop() {
        let node = &vnd.nodes[x];
        if let VnKind::ForgetVertex(v) = node.kind {
            let used: HashSet<u32> = node.bag.iter().map(|&w| label[w]).collect();
            label[v] = (0..).find(|l| !used.contains(l)).unwrap();
        }
        stack.extend(node.children.iter().copied());
    }
    label
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::td::greedy_td;

    fn roundtrip(g: &LabeledGraph) -> VeryNiceDecomposition {
        let td = greedy_td(g);
        let vnd = make_very_nice(&td, g).unwrap();
        vnd.check(g).unwrap();
        assert_eq!(vnd.max_bag(), td.max_bag() + 1);
        vnd
    }

    #[test]
    fn small_graphs() {
        for g in [named::triangle(), named::cycle(5), named::complete(4), LabeledGraph::new(2)] {
            let vnd = roundtrip(&g);
            let labels = assign_labels(&vnd);
            assert!(labels[..g.n].iter().all(|&l| l >= 1 && (l as usize) < vnd.max_bag()));
        }
    }

    #[test]
    fn labels_distinct_within_bags() {
        let g = named::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]);
        let vnd = roundtrip(&g);
        let labels = assign_labels(&vnd);
        for x in &vnd.nodes {
            let set: HashSet<u32> = x.bag.iter().map(|&v| labels[v]).collect();
            assert_eq!(set.len(), x.bag.len());
        }
    }

    #[test]
    fn empty_graph() {
        let g = LabeledGraph::new(0);
        let vnd = roundtrip(&g);
        assert_eq!(vnd.nodes.len(), 1);
    }

    #[test]
    fn misplaced_edge_is_caught() {
        let g = named::path(3);
        let mut vnd = roundtrip(&g);
        let pos = vnd.nodes.iter().position(|x| matches!(x.kind, VnKind::IntroduceEdge(..))).unwrap();
        vnd.nodes[pos].kind = VnKind::IntroduceEdge(0, 2);
        assert!(vnd.check(&g).is_err());
    }
}
