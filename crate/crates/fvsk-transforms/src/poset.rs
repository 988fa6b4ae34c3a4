//! Finite posets on state codes and their zeta / Moebius matrices.

use crate::table::{apply_lower, GfTable};

/// Acyclicity states, base 6.
pub mod cw {
    pub const EMPTY: u8 = 0;
    pub const D: u8 = 1;
    pub const DSTAR: u8 = 2;
    pub const C: u8 = 3;
    pub const CPLUS: u8 = 4;
    pub const CSTAR: u8 = 5;
    pub const NAMES: [&str; 6] = ["0", "D", "D*", "C", "C+", "C*"];
}

/// Treewidth states, base 3.
pub mod tw {
    pub const EMPTY: u8 = 0;
    pub const D: u8 = 1;
    pub const C: u8 = 2;
}

/// Connectivity part of a base-18 code `a + 6·conn`.
pub mod conn {
    pub const NONE: u8 = 0;
    pub const S: u8 = 1;
    pub const R: u8 = 2;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasePoset {
    pub name: &'static str,
    /// `leq[y][x]` is `y ≤ x`.
    pub leq: Vec<Vec<bool>>,
    /// `mobius[y][x]` for `y ≤ x`, zero elsewhere.
    pub mobius: Vec<Vec<i64>>,
    zeta_rows: Vec<u32>,
    mobius_rows: Vec<u32>,
}

impl BasePoset {
    /// Reflexive-transitive closure of the given cover pairs `(lower, upper)`.
    /// Codes must form a linear extension: every pair needs `lower < upper`.
    pub fn from_covers(name: &'static str, size: usize, covers: &[(u8, u8)]) -> BasePoset {
        let mut leq = vec![vec![false; size]; size];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in covers {
            assert!(a < b, "codes must extend the order");
            leq[a as usize][b as usize] = true;
        }
        for m in 0..size {
            for y in 0..size {
                for x in 0..size {
                    if leq[y][m] && leq[m][x] {
                        leq[y][x] = true;
                    }
                }
            }
        }
        BasePoset::from_leq(name, leq)
    }

    pub fn from_leq(name: &'static str, leq: Vec<Vec<bool>>) -> BasePoset {
        let n = leq.len();
        assert!(n <= 32);
        for y in 0..n {
            for x in 0..y {
                assert!(!leq[y][x], "{name}: codes are not a linear extension");
            }
        }
        // Integer Moebius function: mu(x,x) = 1, mu(y,x) = -sum_{y<=c<x} mu(y,c).
        let mut mobius = vec![vec![0i64; n]; n];
        for y in 0..n {
            mobius[y][y] = 1;
            for x in y + 1..n {
                if leq[y][x] {
                    mobius[y][x] = -(y..x).filter(|&c| leq[y][c] && leq[c][x]).map(|c| mobius[y][c]).sum::<i64>();
                }
            }
        }
        let zeta_rows = (0..n).map(|x| row_mask((0..x).filter(|&y| leq[y][x]))).collect();
        let mobius_rows = (0..n).map(|x| row_mask((0..x).filter(|&y| mobius[y][x].rem_euclid(2) == 1))).collect();
        BasePoset { name, leq, mobius, zeta_rows, mobius_rows }
    }

    pub fn size(&self) -> usize {
        self.leq.len()
    }

    /// Product with a second poset on code `a + size(self)·b`.
    pub fn lift(&self, other: &BasePoset, name: &'static str) -> BasePoset {
        let (s, t) = (self.size(), other.size());
        let mut leq = vec![vec![false; s * t]; s * t];
        for y in 0..s * t {
            for x in 0..s * t {
                leq[y][x] = self.leq[y % s][x % s] && other.leq[y / s][x / s];
            }
        }
        BasePoset::from_leq(name, leq)
    }

    pub fn discrete(name: &'static str, size: usize) -> BasePoset {
        BasePoset::from_covers(name, size, &[])
    }

    pub fn zeta(&self, t: &mut GfTable) {
        assert_eq!(t.layout.base, self.size());
        apply_lower(t, &self.zeta_rows, 0..t.layout.k);
    }

    pub fn mobius(&self, t: &mut GfTable) {
        assert_eq!(t.layout.base, self.size());
        apply_lower(t, &self.mobius_rows, 0..t.layout.k);
    }

    pub fn zeta_coords(&self, t: &mut GfTable, coords: impl IntoIterator<Item = usize>) {
        apply_lower(t, &self.zeta_rows, coords);
    }

    pub fn mobius_coords(&self, t: &mut GfTable, coords: impl IntoIterator<Item = usize>) {
        apply_lower(t, &self.mobius_rows, coords);
    }

    /// Least upper bound, if unique.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let ups: Vec<usize> = (0..self.size()).filter(|&x| self.leq[a][x] && self.leq[b][x]).collect();
        ups.iter().copied().find(|&u| ups.iter().all(|&x| self.leq[u][x]))
    }
}

fn row_mask(ys: impl Iterator<Item = usize>) -> u32 {
    ys.fold(0, |m, y| m | 1 << y)
}

/// The fixed posets used by the convolutions.
#[derive(Debug, Clone)]
pub struct Builtins {
    pub main: BasePoset,
    pub l1: BasePoset,
    pub l2: BasePoset,
    pub l3: BasePoset,
    pub tw: BasePoset,
    pub conn: BasePoset,
}

pub fn builtin_posets() -> Builtins {
    use cw::*;
    let main = BasePoset::from_covers(
        "main",
        6,
        &[(EMPTY, D), (D, DSTAR), (DSTAR, CPLUS), (CPLUS, CSTAR), (EMPTY, C), (C, CPLUS)],
    );
    let l1 = BasePoset::from_covers("L1", 6, &[(EMPTY, CSTAR), (D, CSTAR), (DSTAR, CSTAR), (C, CSTAR), (CPLUS, CSTAR)]);
    let l2 = BasePoset::from_covers("L2", 6, &[(EMPTY, C), (EMPTY, DSTAR), (D, DSTAR), (DSTAR, CPLUS), (C, CPLUS)]);
    let l3 = BasePoset::from_covers("L3", 6, &[(EMPTY, D)]);
    let tw = BasePoset::from_covers("tw", 3, &[(tw::D, tw::C)]);
    let conn = BasePoset::from_covers("conn", 3, &[(conn::NONE, conn::S), (conn::S, conn::R)]);
    Builtins { main, l1, l2, l3, tw, conn }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cw::*;

    #[test]
    fn l2_down_sets() {
        let p = builtin_posets().l2;
        let down = |x: u8| (0..6u8).filter(|&y| p.leq[y as usize][x as usize]).collect::<Vec<_>>();
        assert_eq!(down(EMPTY), vec![EMPTY]);
        assert_eq!(down(C), vec![EMPTY, C]);
        assert_eq!(down(CPLUS), vec![EMPTY, D, DSTAR, C, CPLUS]);
        assert_eq!(down(DSTAR), vec![EMPTY, D, DSTAR]);
        assert_eq!(down(D), vec![D]);
        assert_eq!(down(CSTAR), vec![CSTAR]);
    }

    #[test]
    fn main_join_and_chain_mobius() {
        let b = builtin_posets();
        assert_eq!(b.main.join(D as usize, C as usize), Some(CPLUS as usize));
        assert_eq!(b.conn.mobius[0][1], -1);
        assert_eq!(b.conn.mobius[0][2], 0);
        let l3 = &b.l3;
        for x in 0..6 {
            let nontrivial = (0..6).any(|y| y != x && l3.leq[y][x]);
            assert_eq!(nontrivial, x == D as usize);
        }
    }

    #[test]
    fn mobius_sums() {
        let b = builtin_posets();
        for p in [&b.main, &b.l1, &b.l2, &b.l3, &b.tw, &b.conn] {
            let n = p.size();
            for y in 0..n {
                for x in 0..n {
                    if !p.leq[y][x] {
                        continue;
                    }
                    let s: i64 = (0..n).filter(|&c| p.leq[y][c] && p.leq[c][x]).map(|c| p.mobius[c][x]).sum();
                    assert_eq!(s, (x == y) as i64, "{} at ({y},{x})", p.name);
                }
            }
        }
    }

    #[test]
    fn tw_chain_zeta() {
        let b = builtin_posets();
        let mut t = GfTable::delta(crate::table::Layout::new(3, 1), tw::C as usize);
        b.tw.zeta(&mut t);
        assert_eq!(t.ones(), vec![2]);
        let mut t = GfTable::delta(crate::table::Layout::new(3, 1), tw::D as usize);
        b.tw.zeta(&mut t);
        assert_eq!(t.ones(), vec![1, 2]);
    }
}
