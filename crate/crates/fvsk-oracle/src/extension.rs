//! Clique extensions: expressions with one hole, used as probes for
//! pattern equivalence.
//!
//! The extension never touches label 0. Every vertex of the plugged content
//! that carries label 0 is identified with the single zero vertex, which is
//! vertex 0 of the plugged graph.

use std::collections::BTreeMap;

use fvsk_model::{CliqueExpression, ExprNode, LabeledGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::acyclic::is_forest_uf;
use crate::{OracleError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtNode {
    Hole,
    Introduce(u32),
    Relabel { from: u32, to: u32, child: usize },
    Join { a: u32, b: u32, child: usize },
    Union { left: usize, right: usize },
}

/// Nodes children first, root last, labels in `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueExtension {
    pub k: u32,
    pub nodes: Vec<ExtNode>,
}

/// Result of plugging content into the hole.
#[derive(Debug, Clone)]
pub struct Plugged {
    /// Multigraph; vertex 0 is the zero vertex and has label 0.
    pub graph: LabeledGraph,
    /// Content vertex to plugged id.
    pub hole: Vec<usize>,
    /// `i`-th own introduce to plugged id.
    pub own: Vec<usize>,
}

impl CliqueExtension {
    /// The trivial extension `x ↦ x`.
    pub fn identity(k: u32) -> Self {
        CliqueExtension { k, nodes: vec![ExtNode::Hole] }
    }

    /// Wraps a clique expression: `ops(hole ∪ expr)` where `ops` are joins
    /// and relabels applied above the union.
    pub fn around(expr: &CliqueExpression, ops: &[ExtNode]) -> Self {
        let mut nodes = vec![ExtNode::Hole];
        let shift = 1;
        for n in &expr.nodes {
            nodes.push(match *n {
                ExprNode::Introduce(l) => ExtNode::Introduce(l),
                ExprNode::Relabel { from, to, child } => ExtNode::Relabel { from, to, child: child + shift },
                ExprNode::Join { a, b, child } => ExtNode::Join { a, b, child: child + shift },
                ExprNode::Union { left, right } => ExtNode::Union { left: left + shift, right: right + shift },
            });
        }
        nodes.push(ExtNode::Union { left: 0, right: nodes.len() - 1 });
        for op in ops {
            let top = nodes.len() - 1;
            nodes.push(match *op {
                ExtNode::Relabel { from, to, .. } => ExtNode::Relabel { from, to, child: top },
                ExtNode::Join { a, b, .. } => ExtNode::Join { a, b, child: top },
                other => panic!("around() takes unary operations only, got {other:?}"),
            });
        }
        CliqueExtension { k: expr.width, nodes }
    }

    pub fn check(&self) -> Result<()> {
        let bad = |m: String| Err(OracleError::InvalidExtension(m));
        if self.nodes.is_empty() {
            return bad("no nodes".into());
        }
        let holes = self.nodes.iter().filter(|n| matches!(n, ExtNode::Hole)).count();
        if holes != 1 {
            return bad(format!("{holes} holes"));
        }
        let ok = |l: u32| (1..=self.k).contains(&l);
        let mut parents = vec![0; self.nodes.len()];
        for (i, n) in self.nodes.iter().enumerate() {
            let kids: Vec<usize> = match *n {
                ExtNode::Hole => vec![],
                ExtNode::Introduce(l) => {
                    if !ok(l) {
                        return bad(format!("node {i}: label {l}"));
                    }
                    vec![]
                }
                ExtNode::Relabel { from: a, to: b, child } | ExtNode::Join { a, b, child } => {
                    if !ok(a) || !ok(b) || a == b {
                        return bad(format!("node {i}: labels {a},{b}"));
                    }
                    vec![child]
                }
                ExtNode::Union { left, right } => vec![left, right],
            };
            for c in kids {
                if c >= i {
                    return bad(format!("node {i}: forward reference"));
                }
                parents[c] += 1;
            }
        }
        let root = self.nodes.len() - 1;
        if parents[..root].iter().any(|&p| p != 1) || parents[root] != 0 {
            return bad("not a tree".into());
        }
        Ok(())
    }

    pub fn own_vertices(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, ExtNode::Introduce(_))).count()
    }

    /// Evaluates with `content` in the hole. Content labels above `k` are
    /// carried along but never joined unless the extension names them.
    pub fn plug(&self, content: &LabeledGraph) -> Result<Plugged> {
        self.check()?;
        let mut g = LabeledGraph::with_labels(vec![0]);
        let mut hole = Vec::with_capacity(content.n);
        let mut own = Vec::new();
        let mut frag: Vec<Option<BTreeMap<u32, Vec<usize>>>> = vec![None; self.nodes.len()];
        for (i, n) in self.nodes.iter().enumerate() {
            let f = match *n {
                ExtNode::Hole => {
                    let mut classes: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
                    for v in 0..content.n {
                        let l = content.labels[v];
                        let id = if l == 0 { 0 } else { g.add_vertex(l) };
                        if l != 0 {
                            classes.entry(l).or_default().push(id);
                        }
                        hole.push(id);
                    }
                    for &(u, v) in &content.edges {
                        g.add_edge(hole[u], hole[v]);
                    }
                    classes
                }
                ExtNode::Introduce(l) => {
                    let id = g.add_vertex(l);
                    own.push(id);
                    BTreeMap::from([(l, vec![id])])
                }
                ExtNode::Relabel { from, to, child } => {
                    let mut f = frag[child].take().unwrap();
                    if let Some(vs) = f.remove(&from) {
                        for &v in &vs {
                            g.labels[v] = to;
                        }
                        f.entry(to).or_default().extend(vs);
                    }
                    f
                }
                ExtNode::Join { a, b, child } => {
                    let f = frag[child].take().unwrap();
                    if let (Some(xs), Some(ys)) = (f.get(&a), f.get(&b)) {
                        for &x in xs {
                            for &y in ys {
                                g.add_edge(x, y);
                            }
                        }
                    }
                    f
                }
                ExtNode::Union { left, right } => {
                    let mut a = frag[left].take().unwrap();
                    for (l, vs) in frag[right].take().unwrap() {
                        a.entry(l).or_default().extend(vs);
                    }
                    a
                }
            };
            frag[i] = Some(f);
        }
        Ok(Plugged { graph: g, hole, own })
    }

    /// `F'` (own vertex indices) is a partial solution of `G_τ`: it induces
    /// a forest together with the zero vertex.
    pub fn check_partial_solution(&self, fprime: &[usize]) -> Result<()> {
        let p = self.plug(&LabeledGraph::default())?;
        let mut keep = vec![false; p.graph.n];
        keep[0] = true;
        for &i in fprime {
            let id = *p
                .own
                .get(i)
                .ok_or_else(|| OracleError::NotPartialSolution(format!("own vertex {i} does not exist")))?;
            keep[id] = true;
        }
        if !is_forest_uf(&p.graph, &keep) {
            return Err(OracleError::NotPartialSolution("induces a cycle".into()));
        }
        Ok(())
    }
}

/// `F ∪ F'` acyclic in `G_{τ(F)}`. Parallel edges count as cycles.
pub fn extension_compatible(f: &LabeledGraph, ext: &CliqueExtension, fprime: &[usize]) -> Result<bool> {
    ext.check_partial_solution(fprime)?;
    let p = ext.plug(f)?;
    let mut keep = vec![false; p.graph.n];
    keep[0] = true;
    for &id in &p.hole {
        keep[id] = true;
    }
    for &i in fprime {
        keep[p.own[i]] = true;
    }
    Ok(is_forest_uf(&p.graph, &keep))
}

/// A random extension with `size` own vertices and a random partial solution
/// of it. Deterministic per arguments.
pub fn random_extension(k: u32, size: usize, seed: u64) -> (CliqueExtension, Vec<usize>) {
    assert!(k >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nodes: Vec<ExtNode> = Vec::new();
    let mut pool: Vec<usize> = Vec::new();
    let mut introduced = 0;
    let mut hole_placed = false;
    let unary = |rng: &mut ChaCha8Rng, nodes: &mut Vec<ExtNode>, child: usize| -> usize {
        if k < 2 {
            return child;
        }
        let a = rng.gen_range(1..=k);
        let mut b = rng.gen_range(1..k);
        if b >= a {
            b += 1;
        }
        nodes.push(if rng.gen_bool(0.65) {
            ExtNode::Join { a, b, child }
        } else {
            ExtNode::Relabel { from: a, to: b, child }
        });
        nodes.len() - 1
    };
    loop {
        let leaves_left = introduced < size || !hole_placed;
        if !leaves_left && pool.len() == 1 {
            break;
        }
        let r: f64 = rng.gen();
        if leaves_left && (pool.is_empty() || r < 0.4) {
            let remaining = size - introduced;
            if !hole_placed && rng.gen_range(0..=remaining) == 0 {
                nodes.push(ExtNode::Hole);
                hole_placed = true;
            } else {
                nodes.push(ExtNode::Introduce(rng.gen_range(1..=k)));
                introduced += 1;
            }
            pool.push(nodes.len() - 1);
        } else if pool.len() >= 2 && (!leaves_left || r < 0.6) {
            let b = pool.swap_remove(rng.gen_range(0..pool.len()));
            let a = pool.swap_remove(rng.gen_range(0..pool.len()));
            nodes.push(ExtNode::Union { left: a, right: b });
            pool.push(nodes.len() - 1);
        } else {
            let i = rng.gen_range(0..pool.len());
            pool[i] = unary(&mut rng, &mut nodes, pool[i]);
        }
    }
    let mut top = pool[0];
    for _ in 0..rng.gen_range(0..=2 * k as usize) {
        top = unary(&mut rng, &mut nodes, top);
    }
    debug_assert_eq!(top, nodes.len() - 1);
    let ext = CliqueExtension { k, nodes };
    let base = ext.plug(&LabeledGraph::default()).expect("generated extension is valid");
    let mut order: Vec<usize> = (0..size).collect();
    order.shuffle(&mut rng);
    let mut keep = vec![false; base.graph.n];
    keep[0] = true;
    let mut chosen = Vec::new();
    for i in order {
        if !rng.gen_bool(0.7) {
            continue;
        }
        keep[base.own[i]] = true;
        if is_forest_uf(&base.graph, &keep) {
            chosen.push(i);
        } else {
            keep[base.own[i]] = false;
        }
    }
    chosen.sort_unstable();
    (ext, chosen)
}
