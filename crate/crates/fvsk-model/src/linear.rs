//! Exact linear clique expression for a simple graph, introducing vertices in
//! id order.
//!
//! Vertices introduced so far are grouped by the set of their neighbours
//! that are still to come. Each group owns one label; groups with nothing
//! left to wait for share the dead label 1. The width is then the largest
//! number of live groups plus two.

use std::collections::{BTreeSet, HashMap};

use crate::error::{ModelError, Result};
use crate::expr::{CliqueExpression, ExprNode};
use crate::graph::LabeledGraph;

pub const DEAD_LABEL: u32 = 1;

/// Returns an expression whose evaluation equals `g` with every label set
/// to `DEAD_LABEL`, vertex ids preserved.
pub fn linear_expr_in_order(g: &LabeledGraph) -> Result<CliqueExpression> {
    if g.n == 0 {
        return Err(ModelError::InvalidGraph("no vertices".into()));
    }
    if !g.is_simple() {
        return Err(ModelError::InvalidGraph("multigraph".into()));
    }
    let mut future: Vec<Vec<usize>> = vec![Vec::new(); g.n];
    for &(u, v) in &g.edges {
        future[u.min(v)].push(u.max(v));
    }
    for f in &mut future {
        f.sort_unstable();
    }
    let mut nodes: Vec<ExprNode> = Vec::new();
    let mut free: BTreeSet<u32> = BTreeSet::new();
    let mut next_label = DEAD_LABEL + 1;
    let mut width = DEAD_LABEL;
    // label -> remaining future neighbours, and the reverse index.
    let mut sig_of: HashMap<u32, Vec<usize>> = HashMap::new();
    let mut label_of: HashMap<Vec<usize>, u32> = HashMap::new();
    let mut top: Option<usize> = None;

    // Parks `label` under `sig`, merging into an existing group if needed.
    let settle = |label: u32,
                  sig: Vec<usize>,
                  top: &mut usize,
                  nodes: &mut Vec<ExprNode>,
                  free: &mut BTreeSet<u32>,
                  sig_of: &mut HashMap<u32, Vec<usize>>,
                  label_of: &mut HashMap<Vec<usize>, u32>| {
        let target = if sig.is_empty() { Some(DEAD_LABEL) } else { label_of.get(&sig).copied() };
        match target {
            Some(to) => {
                nodes.push(ExprNode::Relabel { from: label, to, child: *top });
                *top = nodes.len() - 1;
                free.insert(label);
            }
            None => {
                label_of.insert(sig.clone(), label);
                sig_of.insert(label, sig);
            }
        }
    };

    for v in 0..g.n {
        let l = match free.pop_first() {
            Some(l) => l,
            None => {
                next_label += 1;
                next_label - 1
            }
        };
        width = width.max(l);
        nodes.push(ExprNode::Introduce(l));
        let intro = nodes.len() - 1;
        let mut cur = match top {
            None => intro,
            Some(t) => {
                nodes.push(ExprNode::Union { left: t, right: intro });
                nodes.len() - 1
            }
        };
        let mut hit: Vec<u32> = sig_of.iter().filter(|(_, s)| s.binary_search(&v).is_ok()).map(|(&l, _)| l).collect();
        hit.sort_unstable();
        for &c in &hit {
            nodes.push(ExprNode::Join { a: l, b: c, child: cur });
            cur = nodes.len() - 1;
        }
        for &c in &hit {
            let mut sig = sig_of.remove(&c).unwrap();
            label_of.remove(&sig);
            sig.retain(|&w| w != v);
            settle(c, sig, &mut cur, &mut nodes, &mut free, &mut sig_of, &mut label_of);
        }
        settle(l, future[v].clone(), &mut cur, &mut nodes, &mut free, &mut sig_of, &mut label_of);
        top = Some(cur);
    }
    Ok(CliqueExpression { width, nodes })
}
