//! GF(2) DP over a very nice tree decomposition with states `{∅,D,C}` per
//! label. Slice `b` counts forest vertices forgotten below the node.

use std::collections::HashMap;

use fvsk_model::{assign_labels, VeryNiceDecomposition, VnKind};
use fvsk_patterns::tw::state;
use fvsk_patterns::tw_edge_table;
use fvsk_transforms::{CoordMap, GfTable, Layout, TwConv};

use crate::{par, DpStats, Options, Result, SolverError};

/// `slices[b]`; `None` is the zero table.
pub type TwSlices = Vec<Option<GfTable>>;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum MapKey {
    Introduce(usize),
    Keep(usize),
    Fold(usize),
    Edge(usize, usize),
}

fn build(layout: Layout, key: MapKey) -> CoordMap {
    use state::{C, D, EMPTY};
    match key {
        MapKey::Introduce(i) => {
            CoordMap::new(layout, &[i], |s| if s[0] == EMPTY { vec![vec![EMPTY], vec![D]] } else { Vec::new() })
        }
        MapKey::Keep(i) => CoordMap::new(layout, &[i], |s| if s[0] == EMPTY { vec![vec![EMPTY]] } else { Vec::new() }),
        MapKey::Fold(i) => {
            CoordMap::new(layout, &[i], |s| if s[0] == D || s[0] == C { vec![vec![EMPTY]] } else { Vec::new() })
        }
        MapKey::Edge(i, j) => {
            CoordMap::new(layout, &[i, j], |s| match &tw_edge_table()[3 * s[0] as usize + s[1] as usize] {
                Some(ts) => ts.iter().map(|&(a, b)| vec![a, b]).collect(),
                None => Vec::new(),
            })
        }
    }
}

fn nonzero(t: GfTable) -> Option<GfTable> {
    (!t.is_zero()).then_some(t)
}

/// Runs the DP; returns the root slices.
pub fn run_tw_dp(vnd: &VeryNiceDecomposition, max_b: Option<usize>, opts: Options) -> Result<(TwSlices, DpStats)> {
    let n = vnd.n;
    if vnd.nodes.is_empty() || vnd.root + 1 != vnd.nodes.len() {
        return Err(SolverError::Invalid("decomposition has no root".into()));
    }
    let max_b = max_b.unwrap_or(n).min(n);
    let labels = assign_labels(vnd);
    if labels.iter().any(|&l| l == u32::MAX) {
        return Err(SolverError::Invalid("vertex never forgotten".into()));
    }
    let k = vnd.max_bag().saturating_sub(1).max(1);
    let layout = Layout::new(3, k);
    opts.check_memory(3 * layout.word_bytes() as u128 * (n as u128 + 1))?;
    let coord = |v: usize| labels[v] as usize - 1;
    let mut maps: HashMap<MapKey, CoordMap> = HashMap::new();
    let mut conv: Option<TwConv> = None;
    let threads = opts.threads;

    let mut depth = vec![0usize; vnd.nodes.len()];
    let mut results: HashMap<usize, TwSlices> = HashMap::new();
    let mut peak = 0;
    for x in 0..vnd.nodes.len() {
        let node = &vnd.nodes[x];
        depth[x] = 1 + node.children.iter().map(|&c| depth[c]).max().unwrap_or(0);
        let mut take = |i: usize| results.remove(&node.children[i]).expect("child done");
        let mut map_all = |key: MapKey, src: &TwSlices| -> TwSlices {
            let m = maps.entry(key).or_insert_with(|| build(layout, key));
            let m = &*m;
            par::map(src, threads, |t| t.as_ref().and_then(|t| nonzero(m.map(t))))
        };
        let out: TwSlices = match node.kind {
            VnKind::Leaf => {
                let mut s = vec![None; max_b + 1];
                s[0] = Some(GfTable::delta(layout, 0));
                s
            }
            VnKind::IntroduceVertex(v) => {
                let src = take(0);
                map_all(MapKey::Introduce(coord(v)), &src)
            }
            VnKind::IntroduceEdge(u, v) => {
                let src = take(0);
                map_all(MapKey::Edge(coord(u), coord(v)), &src)
            }
            VnKind::ForgetVertex(v) => {
                let src = take(0);
                let keep = map_all(MapKey::Keep(coord(v)), &src);
                let fold = map_all(MapKey::Fold(coord(v)), &src);
                (0..=max_b)
                    .map(|b| {
                        let mut t = keep[b].clone();
                        if b > 0 {
                            if let Some(f) = &fold[b - 1] {
                                t.get_or_insert_with(|| GfTable::zero(layout)).xor_assign(f);
                            }
                        }
                        t.and_then(nonzero)
                    })
                    .collect()
            }
            VnKind::Join => {
                let (a, b) = (take(0), take(1));
                let conv = conv.get_or_insert_with(|| TwConv::new(k));
                let sa = par::map(&a, threads, |t| t.as_ref().map(|t| conv.stage(t)));
                let sb = par::map(&b, threads, |t| t.as_ref().map(|t| conv.stage(t)));
                let targets: Vec<usize> = (0..=max_b).collect();
                par::map(&targets, threads, |&bt| {
                    let mut acc = None;
                    for b1 in 0..=bt {
                        if let (Some(x), Some(y)) = (&sa[b1], &sb[bt - b1]) {
                            conv.accumulate(acc.get_or_insert_with(|| conv.new_acc()), x, y);
                        }
                    }
                    acc.map(|a| conv.finish(a)).and_then(nonzero)
                })
            }
        };
        results.insert(x, out);
        peak = peak.max(results.len());
    }
    let root = results.remove(&vnd.root).expect("root done");
    Ok((root, DpStats { nodes: vnd.nodes.len(), depth: depth[vnd.root], peak_live: peak }))
}

/// Parity of the number of feedback vertex sets of each size `t = 0..=n`.
pub fn count_parities_tw(vnd: &VeryNiceDecomposition, opts: Options) -> Result<Vec<u8>> {
    let n = vnd.n;
    let (root, _) = run_tw_dp(vnd, None, opts)?;
    Ok((0..=n).map(|t| root[n - t].as_ref().map_or(0, |x| x.get(0) as u8)).collect())
}

pub fn count_parity_tw(vnd: &VeryNiceDecomposition, t: usize, opts: Options) -> Result<u8> {
    let n = vnd.n;
    if t > n {
        return Ok(0);
    }
    let (root, _) = run_tw_dp(vnd, Some(n - t), opts)?;
    Ok(root[n - t].as_ref().map_or(0, |x| x.get(0) as u8))
}

#[cfg(test)]
mod tests {
    use super::*;
    use fvsk_model::{greedy_td, make_very_nice, LabeledGraph};

    fn vnd_of(n: usize, edges: &[(usize, usize)]) -> VeryNiceDecomposition {
        let mut g = LabeledGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        make_very_nice(&greedy_td(&g), &g).unwrap()
    }

    #[test]
    fn triangle_and_square() {
        let o = Options::default();
        assert_eq!(count_parities_tw(&vnd_of(3, &[(0, 1), (1, 2), (0, 2)]), o).unwrap(), vec![0, 1, 1, 1]);
        assert_eq!(count_parities_tw(&vnd_of(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]), o).unwrap(), vec![0, 0, 0, 0, 1]);
        assert_eq!(count_parity_tw(&vnd_of(2, &[(0, 1)]), 0, o).unwrap(), 1);
    }

    #[test]
    fn edgeless() {
        // every subset is a feedback vertex set: parity of C(3, t)
        assert_eq!(count_parities_tw(&vnd_of(3, &[]), Options::default()).unwrap(), vec![1, 1, 1, 1]);
    }
}
