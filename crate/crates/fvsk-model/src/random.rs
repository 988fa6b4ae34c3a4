//! Seeded generator of valid, irredundant clique expressions.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::{CliqueExpression, ExprNode};
use crate::graph::LabeledGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// Every union takes a fresh introduce as its right operand.
    Linear,
    /// Unions of arbitrary subexpressions.
    Mixed,
}

struct Frag {
    node: usize,
    classes: BTreeMap<u32, Vec<usize>>,
}

struct Gen {
    rng: ChaCha8Rng,
    k: u32,
    nodes: Vec<ExprNode>,
    edges: HashSet<(usize, usize)>,
    g: LabeledGraph,
}

impl Gen {
    fn push(&mut self, n: ExprNode) -> usize {
        self.nodes.push(n);
        self.nodes.len() - 1
    }

    fn introduce(&mut self) -> Frag {
        let l = self.rng.gen_range(1..=self.k);
        let v = self.g.add_vertex(l);
        let node = self.push(ExprNode::Introduce(l));
        Frag { node, classes: BTreeMap::from([(l, vec![v])]) }
    }

    fn union(&mut self, mut a: Frag, b: Frag) -> Frag {
        let node = self.push(ExprNode::Union { left: a.node, right: b.node });
        for (l, vs) in b.classes {
            a.classes.entry(l).or_default().extend(vs);
        }
        a.node = node;
        a
    }

    /// One join or relabel on `f`; joins that would repeat an edge are
    /// skipped.
    fn unary(&mut self, f: &mut Frag) {
        if self.k < 2 {
            return;
        }
        let present: Vec<u32> = f.classes.keys().copied().collect();
        let from = present[self.rng.gen_range(0..present.len())];
        let mut other = self.rng.gen_range(1..self.k);
        if other >= from {
            other += 1;
        }
        if self.rng.gen_bool(0.65) {
            let (xs, ys) = match (f.classes.get(&from), f.classes.get(&other)) {
                (Some(x), Some(y)) => (x.clone(), y.clone()),
                _ => return,
            };
            let pairs: Vec<(usize, usize)> =
                xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x.min(y), x.max(y)))).collect();
            if pairs.iter().any(|e| self.edges.contains(e)) {
                return;
            }
            for e in pairs {
                self.edges.insert(e);
                self.g.edges.push(e);
            }
            f.node = self.push(ExprNode::Join { a: from, b: other, child: f.node });
        } else {
            let moved = f.classes.remove(&from).unwrap();
            for &v in &moved {
                self.g.labels[v] = other;
            }
            f.classes.entry(other).or_default().extend(moved);
            f.node = self.push(ExprNode::Relabel { from, to: other, child: f.node });
        }
    }
}

pub fn random_expr(k: u32, n: usize, seed: u64) -> (CliqueExpression, LabeledGraph) {
    random_expr_with(k, n, seed, Shape::Mixed)
}

/// Deterministic per `(k, n, seed, shape)`. The result has exactly `n`
/// introduces, passes `validate_expr` and uses labels `1..=k` only.
pub fn random_expr_with(k: u32, n: usize, seed: u64, shape: Shape) -> (CliqueExpression, LabeledGraph) {
    assert!(k >= 1 && n >= 1, "random_expr needs k >= 1 and n >= 1");
    let mut gen = Gen {
        rng: ChaCha8Rng::seed_from_u64(seed),
        k,
        nodes: Vec::new(),
        edges: HashSet::new(),
        g: LabeledGraph::default(),
    };
    let mut pool: Vec<Frag> = Vec::new();
    let mut introduced = 0;
    loop {
        if introduced == n && pool.len() == 1 {
            break;
        }
        let step: f64 = gen.rng.gen();
        match shape {
            Shape::Linear => {
                if pool.is_empty() {
                    pool.push(gen.introduce());
                    introduced += 1;
                } else if introduced < n && step < 0.45 {
                    let leaf = gen.introduce();
                    introduced += 1;
                    let f = pool.pop().unwrap();
                    let u = gen.union(f, leaf);
                    pool.push(u);
                } else if introduced < n {
                    let mut f = pool.pop().unwrap();
                    gen.unary(&mut f);
                    pool.push(f);
                }
            }
            Shape::Mixed => {
                if introduced < n && (pool.is_empty() || step < 0.4) {
                    pool.push(gen.introduce());
                    introduced += 1;
                } else if pool.len() >= 2 && (introduced == n || step < 0.65) {
                    let j = gen.rng.gen_range(0..pool.len());
                    let b = pool.swap_remove(j);
                    let i = gen.rng.gen_range(0..pool.len());
                    let a = pool.swap_remove(i);
                    let u = gen.union(a, b);
                    pool.push(u);
                } else {
                    let i = gen.rng.gen_range(0..pool.len());
                    let mut f = pool.swap_remove(i);
                    gen.unary(&mut f);
                    pool.push(f);
                }
            }
        }
    }
    let mut f = pool.pop().unwrap();
    for _ in 0..gen.rng.gen_range(0..=k as usize) {
        gen.unary(&mut f);
    }
    let expr = CliqueExpression { width: k, nodes: gen.nodes };
    (expr, gen.g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::validate_expr;

    #[test]
    fn deterministic_and_valid() {
        for shape in [Shape::Linear, Shape::Mixed] {
            for seed in 0..40 {
                let (e, g) = random_expr_with(3, 9, seed, shape);
                assert_eq!(random_expr_with(3, 9, seed, shape).0, e);
                let r = validate_expr(&e);
                assert!(r.violations.is_empty(), "{:?}", r.violations);
                assert_eq!(r.vertices, 9);
                assert!(r.width_used <= 3);
                assert!(e.eval().same_as(&g));
                if shape == Shape::Linear {
                    assert!(r.linear);
                }
            }
        }
    }

    #[test]
    fn width_one_is_edgeless() {
        for seed in 0..10 {
            let (_, g) = random_expr(1, 6, seed);
            assert_eq!(g.m(), 0);
        }
    }
}
