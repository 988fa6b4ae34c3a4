//! Clique expressions: structure checks, evaluation, validation, the
//! canonical expression of a labeled graph and the `.cwe` format.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use crate::error::{ModelError, Result};
use crate::graph::LabeledGraph;
use crate::text;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExprNode {
    Introduce(u32),
    Relabel { from: u32, to: u32, child: usize },
    Join { a: u32, b: u32, child: usize },
    Union { left: usize, right: usize },
}

impl ExprNode {
    pub fn children(&self) -> impl Iterator<Item = usize> {
        let (a, b) = match *self {
            ExprNode::Introduce(_) => (None, None),
            ExprNode::Relabel { child, .. } | ExprNode::Join { child, .. } => (Some(child), None),
            ExprNode::Union { left, right } => (Some(left), Some(right)),
        };
        a.into_iter().chain(b)
    }
}

/// Nodes in topological order (children first); the last node is the root.
/// Vertex `v` is the `v`-th `Introduce` node in node order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueExpression {
    pub width: u32,
    pub nodes: Vec<ExprNode>,
}

impl CliqueExpression {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn num_vertices(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, ExprNode::Introduce(_))).count()
    }

    /// Every union has at least one introduce child.
    pub fn is_linear(&self) -> bool {
        self.nodes.iter().all(|n| match *n {
            ExprNode::Union { left, right } => {
                matches!(self.nodes[left], ExprNode::Introduce(_))
                    || matches!(self.nodes[right], ExprNode::Introduce(_))
            }
            _ => true,
        })
    }

    /// Vertex id for each introduce node, `None` elsewhere.
    pub fn vertex_ids(&self) -> Vec<Option<usize>> {
        let mut next = 0;
        self.nodes
            .iter()
            .map(|n| {
                matches!(n, ExprNode::Introduce(_)).then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    }

    /// Node count above this is rejected (`64·n·k²`).
    pub fn node_cap(&self) -> usize {
        let k = self.width.max(1) as usize;
        64 * self.num_vertices().max(1) * k * k
    }

    /// Structural invariants: topological references, a single parent per
    /// non-root node, labels in `1..=width`, distinct label pairs, node cap.
    pub fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(ModelError::InvalidExpression(msg));
        if self.nodes.is_empty() {
            return bad("no nodes".into());
        }
        let k = self.width;
        let in_range = |l: u32| l >= 1 && l <= k;
        let mut parents = vec![0u32; self.nodes.len()];
        for (id, node) in self.nodes.iter().enumerate() {
            match *node {
                ExprNode::Introduce(l) if !in_range(l) => {
                    return bad(format!("node {}: label {l} outside 1..{k}", id + 1))
                }
                ExprNode::Relabel { from: a, to: b, .. } | ExprNode::Join { a, b, .. } => {
                    if !in_range(a) || !in_range(b) {
                        return bad(format!("node {}: label outside 1..{k}", id + 1));
                    }
                    if a == b {
                        return bad(format!("node {}: identical labels {a}", id + 1));
                    }
                }
                _ => {}
            }
            for c in node.children() {
                if c >= id {
                    return bad(format!("node {}: reference to later node {}", id + 1, c + 1));
                }
                parents[c] += 1;
            }
        }
        let root = self.root();
        for (id, &p) in parents.iter().enumerate() {
            if id != root && p != 1 {
                return bad(format!("node {} has {p} parents", id + 1));
            }
        }
        if parents[root] != 0 {
            return bad("root has a parent".into());
        }
        if self.nodes.len() > self.node_cap() {
            return bad(format!("{} nodes exceed the cap {}", self.nodes.len(), self.node_cap()));
        }
        Ok(())
    }

    /// Evaluates the expression. Edges added twice appear twice.
    pub fn eval(&self) -> LabeledGraph {
        self.eval_inner().0
    }

    fn eval_inner(&self) -> (LabeledGraph, Vec<usize>) {
        let mut g = LabeledGraph::default();
        let mut frags: Vec<Option<BTreeMap<u32, Vec<usize>>>> = vec![None; self.nodes.len()];
        let mut present = HashSet::new();
        let mut redundant = Vec::new();
        for (id, node) in self.nodes.iter().enumerate() {
            let frag = match *node {
                ExprNode::Introduce(l) => {
                    let v = g.add_vertex(l);
                    BTreeMap::from([(l, vec![v])])
                }
                ExprNode::Relabel { from, to, child } => {
                    let mut f = frags[child].take().expect("child evaluated");
                    if let Some(mut moved) = f.remove(&from) {
                        for &v in &moved {
                            g.labels[v] = to;
                        }
                        let dst = f.entry(to).or_default();
                        if dst.len() < moved.len() {
                            std::mem::swap(dst, &mut moved);
                        }
                        dst.append(&mut moved);
                    }
                    f
                }
                ExprNode::Join { a, b, child } => {
                    let f = frags[child].take().expect("child evaluated");
                    let mut dup = false;
                    if let (Some(xs), Some(ys)) = (f.get(&a), f.get(&b)) {
                        for &x in xs {
                            for &y in ys {
                                let e = (x.min(y), x.max(y));
                                dup |= !present.insert(e);
                                g.edges.push(e);
                            }
                        }
                    }
                    if dup {
                        redundant.push(id);
                    }
                    f
                }
                ExprNode::Union { left, right } => {
                    let mut big = frags[left].take().expect("child evaluated");
                    let mut small = frags[right].take().expect("child evaluated");
                    if big.len() < small.len() {
                        std::mem::swap(&mut big, &mut small);
                    }
                    for (l, mut vs) in small {
                        let dst = big.entry(l).or_default();
                        if dst.len() < vs.len() {
                            std::mem::swap(dst, &mut vs);
                        }
                        dst.append(&mut vs);
                    }
                    big
                }
            };
            frags[id] = Some(frag);
        }
        (g, redundant)
    }
}

/// Outcome of `validate_expr`. `violations` is empty for a valid expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprReport {
    pub width: u32,
    pub width_used: u32,
    pub nodes: usize,
    pub vertices: usize,
    pub unions: usize,
    pub linear: bool,
    pub irredundant: bool,
    /// Join nodes (0-based ids) that re-add an existing edge.
    pub redundant_joins: Vec<usize>,
    pub violations: Vec<String>,
}

pub fn validate_expr(expr: &CliqueExpression) -> ExprReport {
    let mut violations = Vec::new();
    if let Err(e) = expr.check() {
        violations.push(e.to_string());
    }
    let structural_ok = violations.is_empty();
    let width_used = expr
        .nodes
        .iter()
        .flat_map(|n| match *n {
            ExprNode::Introduce(l) => [l, 0],
            ExprNode::Relabel { from, to, .. } => [from, to],
            ExprNode::Join { a, b, .. } => [a, b],
            ExprNode::Union { .. } => [0, 0],
        })
        .max()
        .unwrap_or(0);
    let (redundant_joins, irredundant) = if structural_ok {
        let (_, red) = expr.eval_inner();
        let ok = red.is_empty();
        for &id in &red {
            violations.push(format!("node {}: join re-adds existing edges", id + 1));
        }
        (red, ok)
    } else {
        (Vec::new(), false)
    };
    let vertices = expr.num_vertices();
    let unions = expr.nodes.iter().filter(|n| matches!(n, ExprNode::Union { .. })).count();
    if structural_ok && unions + 1 != vertices {
        violations.push(format!("{unions} unions for {vertices} introduced vertices"));
    }
    ExprReport {
        width: expr.width,
        width_used,
        nodes: expr.nodes.len(),
        vertices,
        unions,
        linear: expr.is_linear(),
        irredundant,
        redundant_joins,
        violations,
    }
}

/// Linear `(n+k)`-expression of a simple labeled graph: introduce `v_i` with
/// label `k+i`, union in order, one join per edge, then relabel each vertex
/// to its final label.
pub fn canonical_expr(g: &LabeledGraph, k: u32) -> Result<CliqueExpression> {
    if g.n == 0 {
        return Err(ModelError::InvalidGraph("canonical expression of an empty graph".into()));
    }
    if let Some(&l) = g.labels.iter().find(|&&l| l == 0 || l > k) {
        return Err(ModelError::InvalidGraph(format!("label {l} outside 1..{k}")));
    }
    if !g.is_simple() {
        return Err(ModelError::InvalidGraph("graph is not simple".into()));
    }
    let tmp = |v: usize| k + 1 + v as u32;
    let mut nodes = Vec::with_capacity(3 * g.n + g.m());
    nodes.push(ExprNode::Introduce(tmp(0)));
    let mut top = 0;
    for v in 1..g.n {
        nodes.push(ExprNode::Introduce(tmp(v)));
        nodes.push(ExprNode::Union { left: top, right: nodes.len() - 1 });
        top = nodes.len() - 1;
    }
    let mut edges = g.edges.clone();
    edges.sort_unstable();
    for (u, v) in edges {
        nodes.push(ExprNode::Join { a: tmp(u), b: tmp(v), child: top });
        top = nodes.len() - 1;
    }
    for v in 0..g.n {
        nodes.push(ExprNode::Relabel { from: tmp(v), to: g.labels[v], child: top });
        top = nodes.len() - 1;
    }
    Ok(CliqueExpression { width: k + g.n as u32, nodes })
}

/// Parses the `.cwe` format and checks the structural invariants.
pub fn parse_clique_expr(input: &str) -> Result<CliqueExpression> {
    let mut lines = text::lines(input);
    let header = lines.next().ok_or_else(|| ModelError::parse(0, "empty input"))?;
    header.expect_len(4)?;
    if header.toks[0] != "p" || header.toks[1] != "cwe" {
        return Err(header.err("expected header 'p cwe <k> <num-nodes>'"));
    }
    let k = header.int(2)?;
    let count = header.int(3)?;
    if k == 0 || k > u32::MAX as usize / 2 {
        return Err(header.err(format!("bad width {k}")));
    }
    let k = k as u32;
    if count == 0 {
        return Err(header.err("expression without nodes"));
    }
    let mut nodes = Vec::new();
    let mut parents = Vec::new();
    for line in lines {
        let id = line.int(0)?;
        if id != nodes.len() + 1 {
            return Err(line.err(format!("expected node id {}, found {id}", nodes.len() + 1)));
        }
        if nodes.len() == count {
            return Err(line.err(format!("more than {count} nodes")));
        }
        let kind = *line.toks.get(1).ok_or_else(|| line.err("missing node type"))?;
        let label = |i: usize| -> Result<u32> {
            let l = line.int(i)?;
            if l == 0 || l > k as usize {
                return Err(line.err(format!("label {l} outside 1..{k}")));
            }
            Ok(l as u32)
        };
        let child = |i: usize, parents: &mut Vec<u32>| -> Result<usize> {
            let c = line.int(i)?;
            if c == 0 || c >= id {
                return Err(line.err(format!("reference {c} is not an earlier node")));
            }
            if parents[c - 1] > 0 {
                return Err(line.err(format!("node {c} already has a parent")));
            }
            parents[c - 1] += 1;
            Ok(c - 1)
        };
        let node = match kind {
            "v" => {
                line.expect_len(3)?;
                ExprNode::Introduce(label(2)?)
            }
            "r" | "j" => {
                line.expect_len(5)?;
                let (a, b) = (label(2)?, label(3)?);
                if a == b {
                    return Err(line.err(format!("identical labels {a}")));
                }
                let c = child(4, &mut parents)?;
                if kind == "r" {
                    ExprNode::Relabel { from: a, to: b, child: c }
                } else {
                    ExprNode::Join { a, b, child: c }
                }
            }
            "u" => {
                line.expect_len(4)?;
                let l = child(2, &mut parents)?;
                let r = child(3, &mut parents)?;
                ExprNode::Union { left: l, right: r }
            }
            other => return Err(line.err(format!("unknown node type '{other}'"))),
        };
        nodes.push(node);
        parents.push(0);
    }
    if nodes.len() != count {
        return Err(ModelError::parse(0, format!("expected {count} nodes, found {}", nodes.len())));
    }
    if let Some(orphan) = parents[..count - 1].iter().position(|&p| p == 0) {
        return Err(ModelError::parse(0, format!("node {} has no parent", orphan + 1)));
    }
    let e = CliqueExpression { width: k, nodes };
    e.check().map_err(|err| ModelError::parse(0, err.to_string()))?;
    Ok(e)
}

pub fn write_clique_expr(e: &CliqueExpression) -> String {
    let mut out = format!("p cwe {} {}\n", e.width, e.nodes.len());
    for (i, n) in e.nodes.iter().enumerate() {
        let id = i + 1;
        let _ = match *n {
            ExprNode::Introduce(l) => writeln!(out, "{id} v {l}"),
            ExprNode::Relabel { from, to, child } => writeln!(out, "{id} r {from} {to} {}", child + 1),
            ExprNode::Join { a, b, child } => writeln!(out, "{id} j {a} {b} {}", child + 1),
            ExprNode::Union { left, right } => writeln!(out, "{id} u {} {}", left + 1, right + 1),
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn edge_expr() -> CliqueExpression {
        CliqueExpression {
            width: 2,
            nodes: vec![
                ExprNode::Introduce(1),
                ExprNode::Introduce(2),
                ExprNode::Union { left: 0, right: 1 },
                ExprNode::Join { a: 1, b: 2, child: 2 },
            ],
        }
    }

    #[test]
    fn single_join_gives_an_edge() {
        let g = edge_expr().eval();
        assert_eq!(g.edges, vec![(0, 1)]);
        assert_eq!(g.labels, vec![1, 2]);
        assert!(validate_expr(&edge_expr()).violations.is_empty());
    }

    #[test]
    fn join_of_empty_class_is_a_no_op() {
        let e =
            CliqueExpression { width: 2, nodes: vec![ExprNode::Introduce(1), ExprNode::Join { a: 1, b: 2, child: 0 }] };
        assert_eq!(e.eval().m(), 0);
    }

    #[test]
    fn relabel_then_join_builds_p3() {
        // a:1 b:2 join(1,2); relabel 1->3; add c:1; join(2,1) gives a-b-c.
        let e = CliqueExpression {
            width: 3,
            nodes: vec![
                ExprNode::Introduce(1),
                ExprNode::Introduce(2),
                ExprNode::Union { left: 0, right: 1 },
                ExprNode::Join { a: 1, b: 2, child: 2 },
                ExprNode::Relabel { from: 1, to: 3, child: 3 },
                ExprNode::Introduce(1),
                ExprNode::Union { left: 4, right: 5 },
                ExprNode::Join { a: 2, b: 1, child: 6 },
            ],
        };
        let g = e.eval();
        assert!(g.same_as(&{
            let mut p = named::path(3);
            p.labels = vec![3, 2, 1];
            p
        }));
    }

    #[test]
    fn double_join_is_redundant() {
        let mut e = edge_expr();
        e.nodes.push(ExprNode::Join { a: 1, b: 2, child: 3 });
        let r = validate_expr(&e);
        assert!(!r.irredundant);
        assert_eq!(r.redundant_joins, vec![4]);
        assert_eq!(e.eval().m(), 2);
    }

    #[test]
    fn canonical_of_single_vertex() {
        let g = LabeledGraph::with_labels(vec![2]);
        let e = canonical_expr(&g, 2).unwrap();
        assert_eq!(e.nodes, vec![ExprNode::Introduce(3), ExprNode::Relabel { from: 3, to: 2, child: 0 }]);
    }

    #[test]
    fn canonical_triangle_roundtrip() {
        let mut g = named::triangle();
        g.labels = vec![1, 2, 3];
        let e = canonical_expr(&g, 3).unwrap();
        assert_eq!(e.width, 6);
        let r = validate_expr(&e);
        assert!(r.linear && r.irredundant && r.violations.is_empty());
        assert!(e.eval().same_as(&g));
    }

    #[test]
    fn edgeless_canonical_emits_no_joins() {
        let e = canonical_expr(&LabeledGraph::new(4), 1).unwrap();
        assert!(!e.nodes.iter().any(|n| matches!(n, ExprNode::Join { .. })));
    }

    #[test]
    fn cwe_roundtrip_and_errors() {
        let text = write_clique_expr(&edge_expr());
        assert_eq!(text, "p cwe 2 4\n1 v 1\n2 v 2\n3 u 1 2\n4 j 1 2 3\n");
        assert_eq!(parse_clique_expr(&text).unwrap(), edge_expr());
        for bad in [
            "p cwe 2 2\n1 v 1\n2 r 1 2 3\n",
            "p cwe 2 2\n1 v 1\n2 r 1 1 1\n",
            "p cwe 2 1\n1 v 3\n",
            "p cwe 2 3\n1 v 1\n2 v 2\n3 r 1 2 1\n",
            "p cwe 2 2\n1 v 1\n3 v 2\n",
            "p cwe 2 3\n1 v 1\n2 j 1 2 1\n3 r 1 2 1\n",
        ] {
            assert!(parse_clique_expr(bad).is_err(), "accepted {bad:?}");
        }
    }
}
