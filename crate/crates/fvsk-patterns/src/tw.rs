//! Treewidth patterns: partitions of a label set `L ⊆ [k]₀` with `0 ∈ L`.
//!
//! Stored as a label → block map where every block is named by its smallest
//! label, so derived equality is partition equality.

use std::collections::BTreeSet;
use std::fmt;

use crate::reduce::toggle;
use crate::uf::Uf;
use crate::{PatternError, Result};

/// Per-label state codes of `CTP` patterns.
pub mod state {
    pub const EMPTY: u8 = 0;
    pub const D: u8 = 1;
    pub const C: u8 = 2;
    pub const NAMES: [&str; 3] = ["0", "D", "C"];
}

const NONE: u8 = u8::MAX;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwPattern {
    block: Vec<u8>,
}

impl TwPattern {
    /// `{{0}}`.
    pub fn empty(k: usize) -> Self {
        let mut block = vec![NONE; k + 1];
        block[0] = 0;
        TwPattern { block }
    }

    pub fn from_blocks(k: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut raw = vec![NONE; k + 1];
        for (b, set) in blocks.iter().enumerate() {
            if set.is_empty() {
                return Err(PatternError::Invalid("empty block".into()));
            }
            for &l in set {
                if l > k {
                    return Err(PatternError::LabelRange { label: l as u32, k });
                }
                if raw[l] != NONE {
                    return Err(PatternError::Invalid(format!("label {l} in two blocks")));
                }
                raw[l] = b as u8;
            }
        }
        if raw[0] == NONE {
            return Err(PatternError::Invalid("label 0 missing".into()));
        }
        Ok(Self::normalized(raw))
    }

    /// Renames arbitrary block ids to smallest-member names.
    fn normalized(mut raw: Vec<u8>) -> Self {
        let mut rename = [NONE; 256];
        for l in 0..raw.len() {
            let b = raw[l];
            if b != NONE {
                if rename[b as usize] == NONE {
                    rename[b as usize] = l as u8;
                }
                raw[l] = rename[b as usize];
            }
        }
        TwPattern { block: raw }
    }

    pub fn k(&self) -> usize {
        self.block.len() - 1
    }

    pub fn contains(&self, l: usize) -> bool {
        self.block[l] != NONE
    }

    /// Name (smallest label) of the block of `l`.
    pub fn block_of(&self, l: usize) -> Option<usize> {
        self.contains(l).then(|| self.block[l] as usize)
    }

    pub fn label_set(&self) -> Vec<usize> {
        (0..self.block.len()).filter(|&l| self.contains(l)).collect()
    }

    pub fn zero_set(&self) -> Vec<usize> {
        (0..self.block.len()).filter(|&l| self.block[l] == 0).collect()
    }

    /// Blocks in order of their smallest label; the zero set comes first.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for l in 0..self.block.len() {
            if self.contains(l) {
                let b = self.block[l] as usize;
                match out.iter_mut().find(|s| s[0] == b) {
                    Some(s) => s.push(l),
                    None => out.push(vec![l]),
                }
            }
        }
        out
    }

    /// In `CTP`: every block other than the zero set is a singleton.
    pub fn is_compact(&self) -> bool {
        self.blocks().iter().skip(1).all(|b| b.len() == 1)
    }
}

/// `[0 3][1][2]`.
impl fmt::Display for TwPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.blocks() {
            let names: Vec<String> = b.iter().map(|l| l.to_string()).collect();
            write!(f, "[{}]", names.join(" "))?;
        }
        Ok(())
    }
}

/// `p ∪ i`; `None` when `i` is already present.
pub fn tw_add_label(p: &TwPattern, i: usize) -> Option<TwPattern> {
    if p.contains(i) {
        return None;
    }
    let mut q = p.clone();
    q.block[i] = i as u8;
    Some(TwPattern::normalized(q.block))
}

/// `p ∖ i`.
pub fn tw_remove_label(p: &TwPattern, i: usize) -> TwPattern {
    assert!(i >= 1);
    let mut raw = p.block.clone();
    raw[i] = NONE;
    TwPattern::normalized(raw)
}

/// `⊕_{i,j}`: merges the blocks of `i` and `j`; `None` if they already
/// share a block.
pub fn tw_patadd(p: &TwPattern, i: usize, j: usize) -> Option<TwPattern> {
    assert!(i != j);
    let (Some(a), Some(b)) = (p.block_of(i), p.block_of(j)) else { return Some(p.clone()) };
    if a == b {
        return None;
    }
    let raw = p.block.iter().map(|&x| if x == b as u8 { a as u8 } else { x }).collect();
    Some(TwPattern::normalized(raw))
}

/// `p ⊼ q`: folds the blocks of `q` into `p` one at a time.
pub fn tw_join(p: &TwPattern, q: &TwPattern) -> Option<TwPattern> {
    if p.label_set() != q.label_set() {
        return None;
    }
    let mut cur = p.block.clone();
    for s in q.blocks() {
        let hit: Vec<u8> = s.iter().map(|&l| cur[l]).collect();
        let distinct: BTreeSet<u8> = hit.iter().copied().collect();
        if distinct.len() < hit.len() {
            return None;
        }
        let target = *distinct.iter().next().unwrap();
        for x in cur.iter_mut() {
            if distinct.contains(x) {
                *x = target;
            }
        }
    }
    Some(TwPattern::normalized(cur))
}

/// Glues the star forests of `p` and `q` along equal labels and tests the
/// result for cycles. Each glued label joins a block of `p` to a block of
/// `q`, so this is acyclicity of that bipartite multigraph.
pub fn tw_glue_compatible(p: &TwPattern, q: &TwPattern) -> bool {
    if p.label_set() != q.label_set() {
        return false;
    }
    let off = p.block.len();
    let mut uf = Uf::new(2 * off);
    p.label_set().into_iter().all(|l| uf.union(p.block[l] as usize, off + q.block[l] as usize))
}

/// `redind(p, i)` for the treewidth family.
pub fn tw_redind(p: &TwPattern, i: usize) -> BTreeSet<TwPattern> {
    let Some(x) = p.block_of(i) else { return BTreeSet::from([p.clone()]) };
    let size = p.block.iter().filter(|&&b| b == x as u8).count();
    if x == 0 || size == 1 {
        return BTreeSet::from([p.clone()]);
    }
    // ids: 0 = zero set, `x` = X̃, `i` = the split-off label
    let mut p2 = p.block.clone();
    p2[i] = 0;
    let mut p3: Vec<u8> = p.block.iter().map(|&b| if b == x as u8 { 0 } else { b }).collect();
    p3[i] = i as u8;
    let p4: Vec<u8> = p.block.iter().map(|&b| if b == x as u8 { 0 } else { b }).collect();
    let mut out = BTreeSet::new();
    for raw in [p2, p3, p4] {
        toggle(&mut out, TwPattern::normalized(raw));
    }
    out
}

/// `redpat` for the treewidth family, as `CTP` patterns.
pub fn tw_reduce_patterns(p: &TwPattern) -> BTreeSet<TwPattern> {
    let targets: Vec<usize> = p.blocks().into_iter().filter(|b| b[0] != 0 && b.len() > 1).flatten().collect();
    let mut cur = BTreeSet::from([p.clone()]);
    for i in targets {
        let mut next = BTreeSet::new();
        for q in &cur {
            for r in tw_redind(q, i) {
                toggle(&mut next, r);
            }
        }
        cur = next;
    }
    cur
}

pub fn tw_reduce(p: &TwPattern) -> BTreeSet<Vec<u8>> {
    tw_reduce_patterns(p).iter().map(|q| tw_encode(q).expect("reduced patterns are compact")).collect()
}

/// State vector `s[i-1]` for labels `1..=k`.
pub fn tw_encode(p: &TwPattern) -> Result<Vec<u8>> {
    if !p.is_compact() {
        return Err(PatternError::NotVeryNice(p.to_string()));
    }
    Ok((1..=p.k())
        .map(|l| match p.block_of(l) {
            None => state::EMPTY,
            Some(0) => state::C,
            Some(_) => state::D,
        })
        .collect())
}

pub fn tw_decode(s: &[u8]) -> TwPattern {
    let mut block = vec![NONE; s.len() + 1];
    block[0] = 0;
    for (i, &st) in s.iter().enumerate() {
        block[i + 1] = match st {
            state::EMPTY => NONE,
            state::D => (i + 1) as u8,
            _ => 0,
        };
    }
    TwPattern { block }
}

/// Base-3 index; label 1 is the lowest digit.
pub fn tw_pack(s: &[u8]) -> usize {
    s.iter().rev().fold(0, |acc, &d| acc * 3 + d as usize)
}

pub fn tw_unpack(mut idx: usize, k: usize) -> Vec<u8> {
    (0..k)
        .map(|_| {
            let d = (idx % 3) as u8;
            idx /= 3;
            d
        })
        .collect()
}
