//! Two-coordinate transition tables, derived from the pattern operations on
//! width-2 (join, relabel) and width-1 (union) patterns.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use crate::cw::{decode_state, encode_state, join_pattern, relabel_pattern, union_pattern};
use crate::reduce::{clean_pattern, reduce, toggle};
use crate::tw::{tw_decode, tw_patadd, tw_reduce};

/// `reduce ∘ join_pattern` on one label pair, indexed `6·a + b`.
/// `None` is the bad pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CwJoinTable {
    pub entries: Vec<Option<Vec<(u8, u8)>>>,
}

impl CwJoinTable {
    pub fn get(&self, a: u8, b: u8) -> Option<&[(u8, u8)]> {
        self.entries[6 * a as usize + b as usize].as_deref()
    }
}

pub fn cw_join_table() -> &'static CwJoinTable {
    static T: OnceLock<CwJoinTable> = OnceLock::new();
    T.get_or_init(|| {
        let mut entries = Vec::with_capacity(36);
        for a in 0..6u8 {
            for b in 0..6u8 {
                entries.push(
                    join_pattern(&decode_state(&[a, b]), 1, 2)
                        .map(|p| reduce(&p).into_iter().map(|s| (s[0], s[1])).collect()),
                );
            }
        }
        CwJoinTable { entries }
    })
}

fn cw_pair_tables() -> &'static ([[u8; 6]; 6], [[u8; 6]; 6]) {
    static T: OnceLock<([[u8; 6]; 6], [[u8; 6]; 6])> = OnceLock::new();
    T.get_or_init(|| {
        let mut relabel = [[0u8; 6]; 6];
        let mut union = [[0u8; 6]; 6];
        for a in 0..6u8 {
            for b in 0..6u8 {
                let r = clean_pattern(&relabel_pattern(&decode_state(&[a, b]), 1, 2)).unwrap();
                let s = encode_state(&r).unwrap();
                assert_eq!(s[0], 0);
                relabel[a as usize][b as usize] = s[1];
                let u = clean_pattern(&union_pattern(&decode_state(&[a]), &decode_state(&[b]))).unwrap();
                union[a as usize][b as usize] = encode_state(&u).unwrap()[0];
            }
        }
        (relabel, union)
    })
}

/// New state of `j` after relabelling `i → j`; `i` becomes empty.
pub fn cw_relabel_state(si: u8, sj: u8) -> u8 {
    cw_pair_tables().0[si as usize][sj as usize]
}

/// `⊻` on one coordinate.
pub fn cw_union_state(a: u8, b: u8) -> u8 {
    cw_pair_tables().1[a as usize][b as usize]
}

/// Join on a full state vector through the table (labels `i`, `j` are
/// 1-based). `None` is the bad pattern.
pub fn join_states(s: &[u8], i: usize, j: usize) -> Option<BTreeSet<Vec<u8>>> {
    let targets = cw_join_table().get(s[i - 1], s[j - 1])?;
    let mut out = BTreeSet::new();
    for &(a, b) in targets {
        let mut t = s.to_vec();
        t[i - 1] = a;
        t[j - 1] = b;
        toggle(&mut out, t);
    }
    Some(out)
}

/// Introduce-edge transitions on `{∅,D,C}²`, indexed `3·a + b`.
pub fn tw_edge_table() -> &'static [Option<Vec<(u8, u8)>>; 9] {
    static T: OnceLock<[Option<Vec<(u8, u8)>>; 9]> = OnceLock::new();
    T.get_or_init(|| {
        std::array::from_fn(|idx| {
            let (a, b) = ((idx / 3) as u8, (idx % 3) as u8);
            tw_patadd(&tw_decode(&[a, b]), 1, 2).map(|p| tw_reduce(&p).into_iter().map(|s| (s[0], s[1])).collect())
        })
    })
}
