//! Exhaustive subset enumeration.

use fvsk_model::LabeledGraph;

use crate::acyclic::is_forest_uf;
use crate::{OracleError, Result};

pub const MAX_BRUTE_N: usize = 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Fvs,
    ConnectedFvs,
}

/// `counts[s][w]` is the number of feedback vertex sets of size `s` and
/// weight `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FvsCounts {
    pub counts: Vec<Vec<u64>>,
}

impl FvsCounts {
    pub fn count(&self, size: usize) -> u64 {
        self.counts.get(size).map_or(0, |r| r.iter().sum())
    }

    pub fn parity(&self, size: usize) -> u8 {
        (self.count(size) & 1) as u8
    }

    pub fn count_weighted(&self, size: usize, weight: usize) -> u64 {
        self.counts.get(size).and_then(|r| r.get(weight)).copied().unwrap_or(0)
    }
}

fn check_size(g: &LabeledGraph) -> Result<()> {
    if g.n > MAX_BRUTE_N {
        return Err(OracleError::TooLarge { what: "vertex count", size: g.n as u64, cap: MAX_BRUTE_N as u64 });
    }
    Ok(())
}

/// Bitmask adjacency; `None` when the graph has loops or parallel edges.
fn masks(g: &LabeledGraph) -> Option<Vec<u32>> {
    if !g.is_simple() {
        return None;
    }
    let mut adj = vec![0u32; g.n];
    for &(u, v) in &g.edges {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    Some(adj)
}

/// Forest iff edges = vertices − components.
fn forest_mask(adj: &[u32], mask: u32) -> bool {
    if mask == 0 {
        return true;
    }
    let mut edges = 0u32;
    let mut rest = mask;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        edges += (adj[v] & mask).count_ones();
    }
    edges /= 2;
    if edges >= mask.count_ones() {
        return false;
    }
    let mut comps = 0;
    let mut rest = mask;
    while rest != 0 {
        let mut comp = rest & rest.wrapping_neg();
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let nb = adj[v] & mask & !comp;
            comp |= nb;
            frontier |= nb;
        }
        rest &= !comp;
        comps += 1;
    }
    edges + comps == mask.count_ones()
}

fn keep_vec(n: usize, mask: u32) -> Vec<bool> {
    (0..n).map(|v| mask >> v & 1 == 1).collect()
}

fn is_forest(g: &LabeledGraph, adj: &Option<Vec<u32>>, keep: u32) -> bool {
    match adj {
        Some(a) => forest_mask(a, keep),
        None => is_forest_uf(g, &keep_vec(g.n, keep)),
    }
}

fn count_range(g: &LabeledGraph, weights: &[usize], lo: u64, hi: u64, out: &mut [Vec<u64>]) {
    let adj = masks(g);
    let full = if g.n == 0 { 0 } else { u32::MAX >> (32 - g.n) };
    for s in lo..hi {
        let s = s as u32;
        if is_forest(g, &adj, full & !s) {
            let w: usize = (0..g.n).filter(|&v| s >> v & 1 == 1).map(|v| weights[v]).sum();
            out[s.count_ones() as usize][w] += 1;
        }
    }
}

/// Counts every subset `S` with `G − S` acyclic, by `(|S|, ω(S))`. Unit
/// weights when `weights` is `None`.
pub fn brute_fvs_counts(g: &LabeledGraph, weights: Option<&[usize]>) -> Result<FvsCounts> {
    brute_fvs_counts_threads(g, weights, 1)
}

pub fn brute_fvs_counts_threads(g: &LabeledGraph, weights: Option<&[usize]>, threads: usize) -> Result<FvsCounts> {
    check_size(g)?;
    let unit = vec![1; g.n];
    let weights = weights.unwrap_or(&unit);
    assert_eq!(weights.len(), g.n, "one weight per vertex");
    let total: usize = weights.iter().sum();
    let blank = vec![vec![0u64; total + 1]; g.n + 1];
    let space = 1u64 << g.n;
    let threads = threads.clamp(1, 64) as u64;
    let chunk = space.div_ceil(threads);
    let parts: Vec<Vec<Vec<u64>>> = std::thread::scope(|sc| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let mut out = blank.clone();
                sc.spawn(move || {
                    let lo = (t * chunk).min(space);
                    let hi = ((t + 1) * chunk).min(space);
                    count_range(g, weights, lo, hi, &mut out);
                    out
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut counts = blank;
    for p in parts {
        for (row, prow) in counts.iter_mut().zip(p) {
            for (c, x) in row.iter_mut().zip(prow) {
                *c += x;
            }
        }
    }
    Ok(FvsCounts { counts })
}

fn connected_mask(adj: &[u32], mask: u32) -> bool {
    if mask == 0 {
        return true;
    }
    let mut comp = mask & mask.wrapping_neg();
    let mut frontier = comp;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let nb = adj[v] & mask & !comp;
        comp |= nb;
        frontier |= nb;
    }
    comp == mask
}

/// Some connected feedback vertex set of size exactly `t`, if any. The empty
/// set counts as connected.
pub fn brute_connected_fvs(g: &LabeledGraph, t: usize) -> Result<Option<Vec<usize>>> {
    check_size(g)?;
    if t > g.n {
        return Ok(None);
    }
    let mut adj = vec![0u32; g.n];
    for &(u, v) in &g.edges {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let simple = masks(g);
    let full = if g.n == 0 { 0 } else { u32::MAX >> (32 - g.n) };
    for s in 0..(1u64 << g.n) {
        let s = s as u32;
        if s.count_ones() as usize == t && connected_mask(&adj, s) && is_forest(g, &simple, full & !s) {
            return Ok(Some((0..g.n).filter(|&v| s >> v & 1 == 1).collect()));
        }
    }
    Ok(None)
}

/// `G − S` acyclic; in connected mode `G[S]` must also be connected.
pub fn verify_solution(g: &LabeledGraph, s: &[usize], mode: Mode) -> bool {
    let mut keep = vec![true; g.n];
    for &v in s {
        if v >= g.n {
            return false;
        }
        keep[v] = false;
    }
    if !is_forest_uf(g, &keep) {
        return false;
    }
    if mode == Mode::Fvs || s.is_empty() {
        return true;
    }
    let mut adj = vec![Vec::new(); g.n];
    for &(u, v) in &g.edges {
        if !keep[u] && !keep[v] {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut seen = vec![false; g.n];
    seen[s[0]] = true;
    let mut stack = vec![s[0]];
    let mut reached = 1;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                reached += 1;
                stack.push(y);
            }
        }
    }
    let distinct = keep.iter().filter(|k| !**k).count();
    reached == distinct
}
