//! GF(2) DP over a clique expression with six states per label.
//!
//! A node result maps `(b, w)` (forest size, forest weight) to a table over
//! `{∅,D,D*,C,C⁺,C*}^k`. Feedback vertex sets of size `t` are complements of
//! forests with `b = n - t`.

use std::collections::{BTreeMap, HashMap};

use fvsk_model::{CliqueExpression, ExprNode};
use fvsk_patterns::cw::state;
use fvsk_patterns::{cw_join_table, cw_relabel_state, cw_union_state};
use fvsk_transforms::{AcycConv, CoordMap, GfTable, Layout};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{par, DpStats, Options, Result, SolverError};

pub type CwSlices = BTreeMap<(usize, usize), GfTable>;

pub const DEFAULT_REPEATS: usize = 20;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum MapKey {
    AddD(usize),
    Relabel(usize, usize),
    Join(usize, usize),
}

struct Ctx<'a> {
    layout: Layout,
    weights: &'a [usize],
    max_b: usize,
    opts: Options,
    conv: Option<AcycConv>,
    maps: HashMap<MapKey, CoordMap>,
}

impl Ctx<'_> {
    fn map(&mut self, key: MapKey) -> &CoordMap {
        let layout = self.layout;
        self.maps.entry(key).or_insert_with(|| match key {
            MapKey::AddD(i) => CoordMap::new(layout, &[i], |s| vec![vec![cw_union_state(s[0], state::D)]]),
            MapKey::Relabel(i, j) => {
                CoordMap::new(layout, &[i, j], |s| vec![vec![state::EMPTY, cw_relabel_state(s[0], s[1])]])
            }
            MapKey::Join(i, j) => CoordMap::new(layout, &[i, j], |s| match cw_join_table().get(s[0], s[1]) {
                Some(ts) => ts.iter().map(|&(a, b)| vec![a, b]).collect(),
                None => Vec::new(),
            }),
        })
    }

    fn introduce(&self, label: u32, v: usize) -> CwSlices {
        let mut out = CwSlices::new();
        out.insert((0, 0), GfTable::delta(self.layout, 0));
        if self.max_b >= 1 {
            let mut d = vec![state::EMPTY; self.layout.k];
            d[label as usize - 1] = state::D;
            out.insert((1, self.weights[v]), GfTable::delta(self.layout, self.layout.index(&d)));
        }
        out
    }

    fn map_all(&mut self, key: MapKey, src: CwSlices) -> CwSlices {
        let threads = self.opts.threads;
        let m = self.map(key);
        let items: Vec<_> = src.into_iter().collect();
        let mapped = par::map(&items, threads, |(_, t)| m.map(t));
        items.into_iter().zip(mapped).filter(|(_, t)| !t.is_zero()).map(|((key, _), t)| (key, t)).collect()
    }

    /// `other ∪ introduce(label, v)`.
    fn add_vertex(&mut self, label: u32, v: usize, other: CwSlices) -> CwSlices {
        let (max_b, wv, threads) = (self.max_b, self.weights[v], self.opts.threads);
        let m = self.map(MapKey::AddD(label as usize - 1));
        let items: Vec<_> = other.iter().filter(|((b, _), _)| *b < max_b).collect();
        let shifted = par::map(&items, threads, |(_, t)| m.map(t));
        let mut out = other.clone();
        for (((b, w), _), t) in items.into_iter().zip(shifted) {
            let e = out.entry((b + 1, w + wv)).or_insert_with(|| GfTable::zero(t.layout));
            e.xor_assign(&t);
        }
        out.retain(|_, t| !t.is_zero());
        out
    }

    fn union(&mut self, a: CwSlices, b: CwSlices) -> CwSlices {
        let layout = self.layout;
        let conv = self.conv.get_or_insert_with(|| AcycConv::new6(layout.k));
        let threads = self.opts.threads;
        let aa: Vec<_> = a.into_iter().collect();
        let bb: Vec<_> = b.into_iter().collect();
        let sa = par::map(&aa, threads, |(_, t)| conv.stage(t));
        let sb = par::map(&bb, threads, |(_, t)| conv.stage(t));
        let mut groups: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
        for (x, ((b1, w1), _)) in aa.iter().enumerate() {
            for (y, ((b2, w2), _)) in bb.iter().enumerate() {
                if b1 + b2 <= self.max_b {
                    groups.entry((b1 + b2, w1 + w2)).or_default().push((x, y));
                }
            }
        }
        let jobs: Vec<_> = groups.into_iter().collect();
        let tables = par::map(&jobs, threads, |(_, pairs)| {
            let mut acc = conv.new_acc();
            for &(x, y) in pairs {
                conv.accumulate(&mut acc, &sa[x], &sb[y]);
            }
            conv.finish(acc)
        });
        jobs.into_iter().zip(tables).filter(|(_, t)| !t.is_zero()).map(|((key, _), t)| (key, t)).collect()
    }
}

fn depth(expr: &CliqueExpression) -> usize {
    let mut d = vec![0usize; expr.nodes.len()];
    for (x, node) in expr.nodes.iter().enumerate() {
        d[x] = 1 + node.children().map(|c| d[c]).max().unwrap_or(0);
    }
    d[expr.root()]
}

/// Bytes for the live slices of one run, roughly.
pub fn estimate_bytes(width: usize, n: usize, max_weight: usize) -> u128 {
    let table = Layout::new(6, width.max(1)).word_bytes() as u128;
    let slices = if max_weight <= 1 { n as u128 + 1 } else { (n as u128 + 1) * (n as u128 * max_weight as u128 + 1) };
    // parent plus a staged child
    3 * table * slices
}

fn check_input(expr: &CliqueExpression, weights: &[usize]) -> Result<usize> {
    expr.check()?;
    let n = expr.num_vertices();
    if weights.len() != n {
        return Err(SolverError::Invalid(format!("{} weights for {n} vertices", weights.len())));
    }
    if expr.width == 0 {
        return Err(SolverError::Invalid("width 0".into()));
    }
    Ok(n)
}

/// Runs the DP bottom-up. Slices with `b > max_b` are dropped.
pub fn run_dp(
    expr: &CliqueExpression,
    weights: &[usize],
    max_b: Option<usize>,
    opts: Options,
) -> Result<(CwSlices, DpStats)> {
    let n = check_input(expr, weights)?;
    let wmax = weights.iter().copied().max().unwrap_or(1);
    opts.check_memory(estimate_bytes(expr.width as usize, n, wmax))?;
    let layout = Layout::new(6, expr.width as usize);
    let mut ctx = Ctx { layout, weights, max_b: max_b.unwrap_or(n), opts, conv: None, maps: HashMap::new() };
    let ids = expr.vertex_ids();
    let intro = |x: usize| match expr.nodes[x] {
        ExprNode::Introduce(l) => Some((l, ids[x].expect("introduce has a vertex"))),
        _ => None,
    };
    // For a union with an introduce child, the child is folded into the union.
    let folded = |x: usize| -> Option<(usize, u32, usize)> {
        if let ExprNode::Union { left, right } = expr.nodes[x] {
            if let Some((l, v)) = intro(right) {
                return Some((left, l, v));
            }
            if let Some((l, v)) = intro(left) {
                return Some((right, l, v));
            }
        }
        None
    };

    let mut stats = DpStats { nodes: expr.nodes.len(), depth: depth(expr), peak_live: 0 };
    let mut results: HashMap<usize, CwSlices> = HashMap::new();
    let mut stack = vec![(expr.root(), false)];
    while let Some((x, ready)) = stack.pop() {
        if !ready {
            stack.push((x, true));
            let kids: Vec<usize> = match folded(x) {
                Some((other, _, _)) => vec![other],
                None => expr.nodes[x].children().collect(),
            };
            for c in kids.into_iter().rev() {
                stack.push((c, false));
            }
            continue;
        }
        let out = match expr.nodes[x] {
            ExprNode::Introduce(l) => ctx.introduce(l, ids[x].expect("introduce has a vertex")),
            ExprNode::Relabel { from, to, child } => {
                let src = results.remove(&child).expect("child done");
                ctx.map_all(MapKey::Relabel(from as usize - 1, to as usize - 1), src)
            }
            ExprNode::Join { a, b, child } => {
                let src = results.remove(&child).expect("child done");
                ctx.map_all(MapKey::Join(a as usize - 1, b as usize - 1), src)
            }
            ExprNode::Union { left, right } => match folded(x) {
                Some((other, l, v)) => {
                    let src = results.remove(&other).expect("child done");
                    ctx.add_vertex(l, v, src)
                }
                None => {
                    let a = results.remove(&left).expect("child done");
                    let b = results.remove(&right).expect("child done");
                    ctx.union(a, b)
                }
            },
        };
        results.insert(x, out);
        stats.peak_live = stats.peak_live.max(results.len());
    }
    let root = results.remove(&expr.root()).expect("root done");
    Ok((root, stats))
}

/// Parity of each `(b, w)` root table.
pub fn weight_parities(
    expr: &CliqueExpression,
    weights: &[usize],
    opts: Options,
) -> Result<BTreeMap<(usize, usize), u8>> {
    let (root, _) = run_dp(expr, weights, None, opts)?;
    Ok(root.into_iter().map(|(k, t)| (k, t.parity())).filter(|&(_, p)| p == 1).collect())
}

/// Parity of the number of feedback vertex sets of each size `t = 0..=n`.
pub fn count_parities(expr: &CliqueExpression, opts: Options) -> Result<Vec<u8>> {
    let n = expr.num_vertices();
    let (root, _) = run_dp(expr, &vec![1; n], None, opts)?;
    let mut out = vec![0u8; n + 1];
    for ((b, _), t) in root {
        out[n - b] ^= t.parity();
    }
    Ok(out)
}

/// Parity of the number of feedback vertex sets of size `t`.
pub fn count_parity(expr: &CliqueExpression, t: usize, opts: Options) -> Result<u8> {
    let n = expr.num_vertices();
    if t > n {
        return Ok(0);
    }
    let (root, _) = run_dp(expr, &vec![1; n], Some(n - t), opts)?;
    Ok(root.get(&(n - t, n - t)).map_or(0, |t| t.parity()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecideReport {
    pub accepted: bool,
    pub trials: usize,
    /// `(trial, forest weight)` of the first odd root table.
    pub witness: Option<(usize, usize)>,
}

/// Random weights in `1..=2n` for trial `trial`.
pub fn trial_weights(n: usize, seed: u64, trial: usize) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (trial as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    (0..n).map(|_| rng.gen_range(1..=2 * n.max(1))).collect()
}

/// One-sided randomized test for a feedback vertex set of size `t`:
/// `accepted` implies one exists; a no answer is wrong with probability at
/// most `2^-repeats`.
pub fn decide(expr: &CliqueExpression, t: usize, repeats: usize, seed: u64, opts: Options) -> Result<DecideReport> {
    let n = expr.num_vertices();
    if t > n {
        return Err(SolverError::Invalid(format!("budget {t} exceeds {n} vertices")));
    }
    let b = n - t;
    for trial in 0..repeats {
        let weights = trial_weights(n, seed, trial);
        let (root, _) = run_dp(expr, &weights, Some(b), opts)?;
        if let Some((&(_, w), _)) = root.iter().find(|(&(bb, _), tab)| bb == b && tab.parity() == 1) {
            return Ok(DecideReport { accepted: true, trials: trial + 1, witness: Some((trial, w)) });
        }
    }
    Ok(DecideReport { accepted: false, trials: repeats, witness: None })
}
