//! Labeled undirected graphs and the `.gr` format.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{ModelError, Result};
use crate::text;

/// Vertex-labeled undirected graph. Vertices are `0..n`.
///
/// `edges` is a multiset: evaluation of a redundant expression can produce
/// the same pair twice, and that must stay observable. Each pair is stored
/// with the smaller endpoint first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LabeledGraph {
    pub n: usize,
    pub labels: Vec<u32>,
    pub edges: Vec<(usize, usize)>,
}

impl LabeledGraph {
    pub fn new(n: usize) -> Self {
        LabeledGraph { n, labels: vec![1; n], edges: Vec::new() }
    }

    pub fn with_labels(labels: Vec<u32>) -> Self {
        LabeledGraph { n: labels.len(), labels, edges: Vec::new() }
    }

    pub fn add_vertex(&mut self, label: u32) -> usize {
        self.labels.push(label);
        self.n += 1;
        self.n - 1
    }

    /// Adds `{u, v}` without checking for duplicates.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u < self.n && v < self.n);
        self.edges.push(if u < v { (u, v) } else { (v, u) });
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn max_label(&self) -> u32 {
        self.labels.iter().copied().max().unwrap_or(0)
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// No self-loops and no repeated pairs.
    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.edges.len());
        self.edges.iter().all(|&(u, v)| u != v && seen.insert((u, v)))
    }

    /// Sorted edge list; the canonical form compared by roundtrip tests.
    pub fn canonical(&self) -> LabeledGraph {
        let mut g = self.clone();
        g.edges.sort_unstable();
        g
    }

    /// Same vertex set, labels and edge multiset.
    pub fn same_as(&self, other: &LabeledGraph) -> bool {
        self.n == other.n && self.labels == other.labels && {
            let mut a = self.edges.clone();
            let mut b = other.edges.clone();
            a.sort_unstable();
            b.sort_unstable();
            a == b
        }
    }

    /// Subgraph induced by `keep`, with vertices renumbered in increasing order.
    pub fn induced(&self, keep: &[bool]) -> LabeledGraph {
        let mut map = vec![usize::MAX; self.n];
        let mut labels = Vec::new();
        for v in 0..self.n {
            if keep[v] {
                map[v] = labels.len();
                labels.push(self.labels[v]);
            }
        }
        let mut g = LabeledGraph::with_labels(labels);
        for &(u, v) in &self.edges {
            if keep[u] && keep[v] {
                g.add_edge(map[u], map[v]);
            }
        }
        g
    }
}

/// Parses the `.gr` format. Every vertex gets label 1.
pub fn parse_graph(input: &str) -> Result<LabeledGraph> {
    let mut lines = text::lines(input);
    let header = lines.next().ok_or_else(|| ModelError::parse(0, "empty input"))?;
    header.expect_len(4)?;
    if header.toks[0] != "p" || header.toks[1] != "fvs" {
        return Err(header.err("expected header 'p fvs <n> <m>'"));
    }
    let n = header.int(2)?;
    let m = header.int(3)?;
    let mut g = LabeledGraph::new(n);
    let mut seen = HashSet::new();
    for line in lines {
        if line.toks[0] == "p" {
            return Err(line.err("duplicate header"));
        }
        line.expect_len(2)?;
        let (u, v) = (line.int(0)?, line.int(1)?);
        for x in [u, v] {
            if x == 0 || x > n {
                return Err(line.err(format!("vertex {x} out of range 1..{n}")));
            }
        }
        if u == v {
            return Err(line.err(format!("self-loop on vertex {u}")));
        }
        let key = (u.min(v) - 1, u.max(v) - 1);
        if !seen.insert(key) {
            return Err(line.err(format!("duplicate edge {u} {v}")));
        }
        if g.edges.len() == m {
            return Err(line.err(format!("more than {m} edges")));
        }
        g.edges.push(key);
    }
    if g.edges.len() != m {
        return Err(ModelError::parse(0, format!("expected {m} edges, found {}", g.edges.len())));
    }
    Ok(g)
}

/// Writes the canonical `.gr` text (sorted edges, LF endings).
pub fn write_graph(g: &LabeledGraph) -> String {
    let mut edges = g.edges.clone();
    edges.sort_unstable();
    let mut out = format!("p fvs {} {}\n", g.n, edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "{} {}", u + 1, v + 1);
    }
    out
}

/// Small constructors used throughout the test suites.
pub mod named {
    use super::LabeledGraph;

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> LabeledGraph {
        let mut g = LabeledGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn cycle(n: usize) -> LabeledGraph {
        from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    pub fn path(n: usize) -> LabeledGraph {
        from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>())
    }

    pub fn complete(n: usize) -> LabeledGraph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        from_edges(n, &e)
    }

    pub fn triangle() -> LabeledGraph {
        cycle(3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_parses() {
        let g = parse_graph("p fvs 3 3\n1 2\n2 3\n1 3\n").unwrap();
        assert!(g.same_as(&named::triangle()));
    }

    #[test]
    fn isolated_vertices() {
        let g = parse_graph("p fvs 2 0\n").unwrap();
        assert_eq!((g.n, g.m()), (2, 0));
    }

    #[test]
    fn self_loop_rejected_with_line() {
        let e = parse_graph("p fvs 2 1\n1 1\n").unwrap_err();
        assert_eq!(e, ModelError::Parse { line: 2, msg: "self-loop on vertex 1".into() });
    }

    #[test]
    fn rejects_bad_inputs() {
        for bad in [
            "",
            "p fvs 2\n",
            "p gr 2 0\n",
            "p fvs 2 1\n1 3\n",
            "p fvs 2 1\n0 1\n",
            "p fvs 3 2\n1 2\n2 1\n",
            "p fvs 3 1\n1 2\n2 3\n",
            "p fvs 3 2\n1 2\n",
            "p fvs 3 1\n+1 2\n",
            "p fvs 3 1\n1 2 3\n",
        ] {
            assert!(parse_graph(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn comments_and_roundtrip() {
        let g = parse_graph("c hello\np fvs 4 2\nc mid\n3 4\n1 2\n").unwrap();
        let text = write_graph(&g);
        assert_eq!(text, "p fvs 4 2\n1 2\n3 4\n");
        assert_eq!(parse_graph(&text).unwrap(), g.canonical());
    }
}
