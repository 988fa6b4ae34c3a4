//! State convolutions over GF(2).
//!
//! `conv6` (acyclicity union), `conv3` (treewidth join) and `conv18`
//! (acyclicity union paired with connectivity union) each split the inputs
//! by class counts, move to a product poset where the operation becomes a
//! pointwise product, and come back. Products are skipped per word when the
//! supports rule out every position that the later filters keep.

use crate::filter::{class_of, CountPlan};
use crate::poset::{builtin_posets, cw, tw, BasePoset};
use crate::table::{GfTable, Layout};

/// Per-coordinate acyclicity union on base-6 codes.
pub fn cw_union_state(a: u8, b: u8) -> u8 {
    const DC: [(u8, u8); 6] = [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (0, 2)];
    let (d1, c1) = DC[a as usize];
    let (d2, c2) = DC[b as usize];
    let c = (c1 + c2).min(2);
    let d = (d1 + d2).min(2 - c);
    DC.iter().position(|&x| x == (d, c)).unwrap() as u8
}

/// Per-coordinate treewidth join; `None` is the bad pattern.
pub fn tw_join_state(a: u8, b: u8) -> Option<u8> {
    match (a, b) {
        (tw::EMPTY, tw::EMPTY) => Some(tw::EMPTY),
        (tw::EMPTY, _) | (_, tw::EMPTY) => None,
        (tw::C, tw::C) => None,
        (x, y) => Some(x.max(y)),
    }
}

/// Per-coordinate union on base-18 codes `a + 6·conn`.
pub fn cfvs_union_state(a: u8, b: u8) -> u8 {
    cw_union_state(a % 6, b % 6) + 6 * (a / 6).max(b / 6)
}

/// Reference double loop: `h[x] = Σ_{op(y,z)=x} a[y]·b[z]`, bad products
/// dropped.
pub fn conv_naive(a: &GfTable, b: &GfTable, op: impl Fn(u8, u8) -> Option<u8>) -> GfTable {
    assert_eq!(a.layout, b.layout);
    let lay = a.layout;
    let mut h = GfTable::zero(lay);
    let ys: Vec<Vec<u8>> = a.ones().into_iter().map(|y| lay.digits(y)).collect();
    let zs: Vec<Vec<u8>> = b.ones().into_iter().map(|z| lay.digits(z)).collect();
    for y in &ys {
        for z in &zs {
            let x: Option<Vec<u8>> = y.iter().zip(z).map(|(&p, &q)| op(p, q)).collect();
            if let Some(x) = x {
                h.flip(lay.index(&x));
            }
        }
    }
    h
}

/// Words grouped by their high-digit class counts.
#[derive(Debug, Clone)]
struct Group {
    c: usize,
    d: usize,
    words: Vec<u32>,
}

/// Inputs moved to the product poset, indexed `[i][j]` by C-class and
/// D-class counts.
#[derive(Debug, Clone)]
pub struct Staged {
    parts: Vec<Vec<Option<GfTable>>>,
}

impl Staged {
    pub fn tables(&self) -> usize {
        self.parts.iter().flatten().filter(|t| t.is_some()).count()
    }
}

/// Product accumulators `h3[i][j]`.
#[derive(Debug, Clone)]
pub struct Acc {
    parts: Vec<Vec<Option<GfTable>>>,
}

/// The acyclicity-union convolution on a fixed layout. Base 6 gives
/// `conv6`; base 18 with lifted posets gives the inner part of `conv18`.
#[derive(Debug, Clone)]
pub struct AcycConv {
    pub layout: Layout,
    l1: BasePoset,
    l2: BasePoset,
    l3: BasePoset,
    cplan: CountPlan,
    dplan: CountPlan,
    groups: Vec<Group>,
}

impl AcycConv {
    pub fn new6(k: usize) -> AcycConv {
        let b = builtin_posets();
        AcycConv::with(Layout::new(6, k), b.l1, b.l2, b.l3, class_of(&[cw::C, cw::CPLUS]), class_of(&[cw::D]))
    }

    fn with(layout: Layout, l1: BasePoset, l2: BasePoset, l3: BasePoset, cclass: u32, dclass: u32) -> AcycConv {
        let cplan = CountPlan::new(layout, cclass);
        let dplan = CountPlan::new(layout, dclass);
        let hk = layout.k - layout.low;
        let mut groups: Vec<Group> = Vec::new();
        let mut index = vec![vec![usize::MAX; hk + 1]; hk + 1];
        for w in 0..layout.words {
            let (c, d) = (cplan.high[w] as usize, dplan.high[w] as usize);
            if index[c][d] == usize::MAX {
                index[c][d] = groups.len();
                groups.push(Group { c, d, words: Vec::new() });
            }
            groups[index[c][d]].words.push(w as u32);
        }
        AcycConv { layout, l1, l2, l3, cplan, dplan, groups }
    }

    pub fn stage(&self, t: &GfTable) -> Staged {
        assert_eq!(t.layout, self.layout);
        let k = self.layout.k;
        let mut f1 = t.clone();
        self.l1.zeta(&mut f1);
        let mut parts = vec![vec![None; k + 1]; k + 1];
        for (i, row) in parts.iter_mut().enumerate() {
            let mut f1i = self.cplan.filter(&f1, i);
            if f1i.is_zero() {
                continue;
            }
            self.l2.zeta(&mut f1i);
            for (j, slot) in row.iter_mut().enumerate().take(k - i + 1) {
                let mut f2 = self.dplan.filter(&f1i, j);
                if f2.is_zero() {
                    continue;
                }
                self.l3.zeta(&mut f2);
                *slot = Some(f2);
            }
        }
        Staged { parts }
    }

    pub fn new_acc(&self) -> Acc {
        let k = self.layout.k;
        Acc { parts: vec![vec![None; k + 1]; k + 1] }
    }

    /// `acc += x ⊛ y` in staged form.
    ///
    /// The index products `(i1,j1) × (i2,j2) → (i,j)` allowed in a word depend
    /// only on its group, so they are listed once per group; per word, every
    /// staged part is read once.
    pub fn accumulate(&self, acc: &mut Acc, x: &Staged, y: &Staged) {
        let k = self.layout.k;
        let low = self.layout.low;
        let dim = k + 1;
        let mut xa = vec![0u64; dim * dim];
        let mut yb = vec![0u64; dim * dim];
        let mut out = vec![0u64; dim * dim];
        for g in &self.groups {
            let (ci, dj) = ((g.c + low).min(k), (g.d + low).min(k));
            let xs = live_parts(&x.parts, ci, dj);
            let ys = live_parts(&y.parts, ci, dj);
            // (output, x part, y part), grouped by output
            let mut prods: Vec<(u16, u16, u16)> = Vec::new();
            for &(i1, j1, _) in &xs {
                for &(i2, j2, _) in &ys {
                    let (i, j) = (i1 + i2, j1 + j2);
                    if i >= g.c && j >= g.d && i + j <= k {
                        prods.push(((i * dim + j) as u16, (i1 * dim + j1) as u16, (i2 * dim + j2) as u16));
                    }
                }
            }
            if prods.is_empty() {
                continue;
            }
            prods.sort_unstable();
            let mut outs: Vec<usize> = prods.iter().map(|p| p.0 as usize).collect();
            outs.dedup();
            for &o in &outs {
                acc.parts[o / dim][o % dim].get_or_insert_with(|| GfTable::zero(self.layout));
            }
            for &w in &g.words {
                let w = w as usize;
                for &(i1, j1, t) in &xs {
                    xa[i1 * dim + j1] = t.words[w];
                }
                for &(i2, j2, t) in &ys {
                    yb[i2 * dim + j2] = t.words[w];
                }
                for &(o, a, b) in &prods {
                    out[o as usize] ^= xa[a as usize] & yb[b as usize];
                }
                for &o in &outs {
                    let v = std::mem::take(&mut out[o]);
                    if v != 0 {
                        if let Some(h) = acc.parts[o / dim][o % dim].as_mut() {
                            h.words[w] ^= v;
                        }
                    }
                }
            }
        }
    }

    pub fn finish(&self, acc: Acc) -> GfTable {
        let mut h1 = GfTable::zero(self.layout);
        for (i, row) in acc.parts.into_iter().enumerate() {
            let mut h2 = GfTable::zero(self.layout);
            let mut any = false;
            for (j, h3) in row.into_iter().enumerate() {
                if let Some(mut h3) = h3 {
                    self.l3.mobius(&mut h3);
                    self.dplan.filter_into(&mut h2, &h3, j);
                    any = true;
                }
            }
            if any {
                self.l2.mobius(&mut h2);
                self.cplan.filter_into(&mut h1, &h2, i);
            }
        }
        self.l1.mobius(&mut h1);
        h1
    }

    pub fn conv(&self, a: &GfTable, b: &GfTable) -> GfTable {
        let mut acc = self.new_acc();
        self.accumulate(&mut acc, &self.stage(a), &self.stage(b));
        self.finish(acc)
    }
}

/// Non-empty staged parts `[i][j]` with `i ≤ ci`, `j ≤ cj`.
fn live_parts(parts: &[Vec<Option<GfTable>>], ci: usize, cj: usize) -> Vec<(usize, usize, &GfTable)> {
    let mut out = Vec::new();
    for (i, row) in parts.iter().enumerate().take(ci + 1) {
        for (j, t) in row.iter().enumerate().take(cj + 1) {
            if let Some(t) = t {
                out.push((i, j, t));
            }
        }
    }
    out
}

/// Treewidth join convolution: split by C count, lattice join product over
/// the chain `D < C` (with `∅` isolated), keep the C count additive.
#[derive(Debug, Clone)]
pub struct TwConv {
    pub layout: Layout,
    order: BasePoset,
    cplan: CountPlan,
    groups: Vec<(usize, Vec<u32>)>,
}

#[derive(Debug, Clone)]
pub struct TwStaged {
    parts: Vec<Option<GfTable>>,
}

#[derive(Debug, Clone)]
pub struct TwAcc {
    parts: Vec<Option<GfTable>>,
}

impl TwConv {
    pub fn new(k: usize) -> TwConv {
        let layout = Layout::new(3, k);
        let cplan = CountPlan::new(layout, class_of(&[tw::C]));
        let mut groups: Vec<(usize, Vec<u32>)> = (0..=k - layout.low).map(|c| (c, Vec::new())).collect();
        for w in 0..layout.words {
            groups[cplan.high[w] as usize].1.push(w as u32);
        }
        groups.retain(|g| !g.1.is_empty());
        TwConv { layout, order: builtin_posets().tw, cplan, groups }
    }

    pub fn stage(&self, t: &GfTable) -> TwStaged {
        assert_eq!(t.layout, self.layout);
        let parts = (0..=self.layout.k)
            .map(|i| {
                let mut f = self.cplan.filter(t, i);
                (!f.is_zero()).then(|| {
                    self.order.zeta(&mut f);
                    f
                })
            })
            .collect();
        TwStaged { parts }
    }

    pub fn new_acc(&self) -> TwAcc {
        TwAcc { parts: vec![None; self.layout.k + 1] }
    }

    pub fn accumulate(&self, acc: &mut TwAcc, x: &TwStaged, y: &TwStaged) {
        let k = self.layout.k;
        let low = self.layout.low;
        for (hc, words) in &self.groups {
            for c in *hc..=k {
                for i1 in 0..=c {
                    let i2 = c - i1;
                    if i1.max(i2) > hc + low {
                        continue;
                    }
                    let (Some(a), Some(b)) = (&x.parts[i1], &y.parts[i2]) else { continue };
                    let h = acc.parts[c].get_or_insert_with(|| GfTable::zero(self.layout));
                    for &w in words {
                        let w = w as usize;
                        h.words[w] ^= a.words[w] & b.words[w];
                    }
                }
            }
        }
    }

    pub fn finish(&self, acc: TwAcc) -> GfTable {
        let mut h = GfTable::zero(self.layout);
        for (c, part) in acc.parts.into_iter().enumerate() {
            if let Some(mut p) = part {
                self.order.mobius(&mut p);
                self.cplan.filter_into(&mut h, &p, c);
            }
        }
        h
    }

    pub fn conv(&self, a: &GfTable, b: &GfTable) -> GfTable {
        let mut acc = self.new_acc();
        self.accumulate(&mut acc, &self.stage(a), &self.stage(b));
        self.finish(acc)
    }
}

/// Connected variant on base 18: zeta over the connectivity chain on both
/// inputs, the acyclicity pipeline with the connectivity part held fixed,
/// Moebius over the chain last.
#[derive(Debug, Clone)]
pub struct CfvsConv {
    pub inner: AcycConv,
    conn: BasePoset,
}

impl CfvsConv {
    pub fn new(k: usize) -> CfvsConv {
        let b = builtin_posets();
        let flat3 = BasePoset::discrete("flat3", 3);
        let flat6 = BasePoset::discrete("flat6", 6);
        let cclass: Vec<u8> = (0..3).flat_map(|c| [cw::C + 6 * c, cw::CPLUS + 6 * c]).collect();
        let dclass: Vec<u8> = (0..3).map(|c| cw::D + 6 * c).collect();
        let inner = AcycConv::with(
            Layout::new(18, k),
            b.l1.lift(&flat3, "L1x"),
            b.l2.lift(&flat3, "L2x"),
            b.l3.lift(&flat3, "L3x"),
            class_of(&cclass),
            class_of(&dclass),
        );
        CfvsConv { inner, conn: flat6.lift(&b.conn, "conn18") }
    }

    pub fn stage(&self, t: &GfTable) -> Staged {
        let mut a = t.clone();
        self.conn.zeta(&mut a);
        self.inner.stage(&a)
    }

    pub fn finish(&self, acc: Acc) -> GfTable {
        let mut h = self.inner.finish(acc);
        self.conn.mobius(&mut h);
        h
    }

    pub fn conv(&self, a: &GfTable, b: &GfTable) -> GfTable {
        let mut acc = self.inner.new_acc();
        self.inner.accumulate(&mut acc, &self.stage(a), &self.stage(b));
        self.finish(acc)
    }
}

pub fn conv6(a: &GfTable, b: &GfTable) -> GfTable {
    AcycConv::new6(a.layout.k).conv(a, b)
}

pub fn conv3(a: &GfTable, b: &GfTable) -> GfTable {
    TwConv::new(a.layout.k).conv(a, b)
}

pub fn conv18(a: &GfTable, b: &GfTable) -> GfTable {
    CfvsConv::new(a.layout.k).conv(a, b)
}
