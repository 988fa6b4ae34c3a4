//! Linear maps that change one or two coordinates of every index:
//! `dst[x'] ^= src[x]` for each target `x'` of `x`, where targets differ from
//! `x` only on the chosen coordinates.
//!
//! In-word coordinates are handled by a per-word linear map evaluated through
//! byte lookup tables; word coordinates become word offsets.

use std::collections::BTreeMap;

use crate::table::{GfTable, Layout};

#[derive(Debug, Clone)]
enum WordMap {
    Identity,
    Lut(Vec<u64>),
}

impl WordMap {
    #[inline]
    fn apply(&self, v: u64) -> u64 {
        match self {
            WordMap::Identity => v,
            WordMap::Lut(t) => {
                let mut out = 0;
                let mut v = v;
                let mut base = 0;
                while v != 0 {
                    out ^= t[base + (v & 0xff) as usize];
                    v >>= 8;
                    base += 256;
                }
                out
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct CoordMap {
    pub layout: Layout,
    hi_coords: Vec<usize>,
    /// Indexed by the source digits at the word-digit coordinates.
    entries: Vec<Vec<(isize, WordMap)>>,
}

impl CoordMap {
    /// `targets(src)` lists the target digits for the source digits at
    /// `coords` (in that order). Repeated targets cancel.
    pub fn new(layout: Layout, coords: &[usize], targets: impl Fn(&[u8]) -> Vec<Vec<u8>>) -> CoordMap {
        let b = layout.base;
        for (n, &c) in coords.iter().enumerate() {
            assert!(c < layout.k && !coords[..n].contains(&c), "bad coordinates {coords:?}");
        }
        let lo: Vec<(usize, usize)> =
            coords.iter().enumerate().filter(|(_, &c)| c < layout.low).map(|(n, &c)| (n, c)).collect();
        let hi: Vec<(usize, usize)> = coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c >= layout.low)
            .map(|(n, &c)| (n, layout.pow(c - layout.low)))
            .collect();
        let hi_coords = coords.iter().copied().filter(|&c| c >= layout.low).collect();
        let nh = b.pow(hi.len() as u32);
        let cache: Vec<Vec<u8>> = {
            // Flattened target lists, one entry per source code.
            let total = b.pow(coords.len() as u32);
            (0..total)
                .map(|mut code| {
                    let src: Vec<u8> = (0..coords.len())
                        .map(|_| {
                            let d = code % b;
                            code /= b;
                            d as u8
                        })
                        .collect();
                    let mut out = Vec::new();
                    for t in targets(&src) {
                        assert_eq!(t.len(), coords.len());
                        out.extend(t);
                    }
                    out
                })
                .collect()
        };
        let decode = |mut code: usize, n: usize| -> Vec<u8> {
            (0..n)
                .map(|_| {
                    let d = code % b;
                    code /= b;
                    d as u8
                })
                .collect()
        };
        let mut entries = Vec::with_capacity(nh);
        for hs in 0..nh {
            let hdig = decode(hs, hi.len());
            let mut images: BTreeMap<Vec<u8>, Vec<u64>> = BTreeMap::new();
            for p in 0..layout.bits {
                let mut src = vec![0u8; coords.len()];
                for &(n, c) in &lo {
                    src[n] = layout.digit(p, c) as u8;
                }
                for (h, &(n, _)) in hi.iter().enumerate() {
                    src[n] = hdig[h];
                }
                let code = src.iter().rev().fold(0, |a, &d| a * b + d as usize);
                for t in cache[code].chunks(coords.len()) {
                    let key: Vec<u8> = hi.iter().map(|&(n, _)| t[n]).collect();
                    let mut q = p;
                    for &(n, c) in &lo {
                        q = q + t[n] as usize * layout.pow(c) - src[n] as usize * layout.pow(c);
                    }
                    images.entry(key).or_insert_with(|| vec![0; layout.bits])[p] ^= 1 << q;
                }
            }
            let mut list = Vec::new();
            for (key, img) in images {
                if img.iter().all(|&x| x == 0) {
                    continue;
                }
                let mut delta = 0isize;
                for (h, &(_, stride)) in hi.iter().enumerate() {
                    delta += (key[h] as isize - hdig[h] as isize) * stride as isize;
                }
                let identity = img.iter().enumerate().all(|(p, &x)| x == 1 << p);
                let m = if identity {
                    WordMap::Identity
                } else {
                    let chunks = layout.bits.div_ceil(8);
                    let mut lut = vec![0u64; chunks * 256];
                    for c in 0..chunks {
                        for v in 1..256usize {
                            let bit = v.trailing_zeros() as usize;
                            let p = c * 8 + bit;
                            let img_p = if p < layout.bits { img[p] } else { 0 };
                            lut[c * 256 + v] = lut[c * 256 + (v & (v - 1))] ^ img_p;
                        }
                    }
                    WordMap::Lut(lut)
                };
                list.push((delta, m));
            }
            entries.push(list);
        }
        CoordMap { layout, hi_coords, entries }
    }

    /// `dst ^= M(src)`.
    pub fn apply(&self, src: &GfTable, dst: &mut GfTable) {
        assert_eq!(src.layout, self.layout);
        assert_eq!(dst.layout, self.layout);
        let b = self.layout.base;
        let lowk = self.layout.low;
        for (w, &v) in src.words.iter().enumerate() {
            if v == 0 {
                continue;
            }
            let mut hs = 0;
            let mut mul = 1;
            for &c in &self.hi_coords {
                hs += (w / self.layout.pow(c - lowk) % b) * mul;
                mul *= b;
            }
            for (delta, m) in &self.entries[hs] {
                let t = (w as isize + delta) as usize;
                dst.words[t] ^= m.apply(v);
            }
        }
    }

    pub fn map(&self, src: &GfTable) -> GfTable {
        let mut dst = GfTable::zero(self.layout);
        self.apply(src, &mut dst);
        dst
    }
}
