//! Reference DP that keeps every acyclicity pattern, for tiny inputs.

use std::collections::{BTreeMap, BTreeSet};

use fvsk_model::{CliqueExpression, ExprNode};
use fvsk_patterns::cw::state;
use fvsk_patterns::{decode_state, join_pattern, relabel_pattern, toggle, union_pattern, AcyclicityPattern};

use crate::{Result, SolverError};

/// `(b, w)` to the patterns with odd multiplicity.
pub type PatternSlices = BTreeMap<(usize, usize), BTreeSet<AcyclicityPattern>>;

fn add(out: &mut PatternSlices, key: (usize, usize), p: AcyclicityPattern) {
    toggle(out.entry(key).or_default(), p);
}

/// Fails once a node holds more than `limit` patterns in total.
pub fn run_unreduced(expr: &CliqueExpression, weights: &[usize], limit: usize) -> Result<PatternSlices> {
    expr.check()?;
    let n = expr.num_vertices();
    if weights.len() != n {
        return Err(SolverError::Invalid(format!("{} weights for {n} vertices", weights.len())));
    }
    let k = expr.width as usize;
    let ids = expr.vertex_ids();
    let mut res: Vec<Option<PatternSlices>> = vec![None; expr.nodes.len()];
    for (x, node) in expr.nodes.iter().enumerate() {
        let mut out = PatternSlices::new();
        match *node {
            ExprNode::Introduce(l) => {
                let mut s = vec![state::EMPTY; k];
                add(&mut out, (0, 0), decode_state(&s));
                s[l as usize - 1] = state::D;
                add(&mut out, (1, weights[ids[x].expect("vertex")]), decode_state(&s));
            }
            ExprNode::Relabel { from, to, child } => {
                for (&key, ps) in res[child].take().expect("child done").iter() {
                    for p in ps {
                        add(&mut out, key, relabel_pattern(p, from as usize, to as usize));
                    }
                }
            }
            ExprNode::Join { a, b, child } => {
                for (&key, ps) in res[child].take().expect("child done").iter() {
                    for p in ps {
                        if let Some(q) = join_pattern(p, a as usize, b as usize) {
                            add(&mut out, key, q);
                        }
                    }
                }
            }
            ExprNode::Union { left, right } => {
                let (a, b) = (res[left].take().expect("child done"), res[right].take().expect("child done"));
                for (&(b1, w1), ps) in &a {
                    for (&(b2, w2), qs) in &b {
                        for p in ps {
                            for q in qs {
                                add(&mut out, (b1 + b2, w1 + w2), union_pattern(p, q));
                            }
                        }
                    }
                }
            }
        }
        out.retain(|_, ps| !ps.is_empty());
        if out.values().map(BTreeSet::len).sum::<usize>() > limit {
            return Err(SolverError::LimitExceeded { limit, node: x });
        }
        res[x] = Some(out);
    }
    Ok(res.pop().flatten().expect("root done"))
}

/// Parity per `(b, w)`: the number of odd patterns, mod 2.
pub fn root_parities(slices: &PatternSlices) -> BTreeMap<(usize, usize), u8> {
    slices.iter().map(|(&k, ps)| (k, (ps.len() % 2) as u8)).filter(|&(_, p)| p == 1).collect()
}
