//! Bit-packed GF(2) tables indexed by base-`b` vectors of length `k`.
//!
//! The lowest `low` digits of an index select a bit inside a word, the
//! remaining digits select the word. Bits above `bits` in each word are
//! always zero.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Layout {
    pub base: usize,
    pub k: usize,
    pub low: usize,
    /// `base^low`, bits used per word.
    pub bits: usize,
    pub words: usize,
}

impl Layout {
    pub fn new(base: usize, k: usize) -> Layout {
        let per_word = match base {
            2..=4 => 3,
            5..=8 => 2,
            9..=64 => 1,
            _ => panic!("unsupported base {base}"),
        };
        let low = per_word.min(k);
        let bits = base.pow(low as u32);
        assert!(bits <= 64);
        let words = base.checked_pow((k - low) as u32).expect("table too large");
        Layout { base, k, low, bits, words }
    }

    pub fn len(&self) -> usize {
        self.bits * self.words
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn word_bytes(&self) -> usize {
        self.words * 8
    }

    /// `base^c`.
    pub fn pow(&self, c: usize) -> usize {
        self.base.pow(c as u32)
    }

    pub fn digit(&self, index: usize, c: usize) -> usize {
        index / self.pow(c) % self.base
    }

    pub fn digits(&self, mut index: usize) -> Vec<u8> {
        (0..self.k)
            .map(|_| {
                let d = index % self.base;
                index /= self.base;
                d as u8
            })
            .collect()
    }

    pub fn index(&self, digits: &[u8]) -> usize {
        digits.iter().rev().fold(0, |acc, &d| acc * self.base + d as usize)
    }

    /// Bits of an in-word position range whose digit `c` (< low) is `y`.
    pub fn digit_mask(&self, c: usize, y: usize) -> u64 {
        let run = self.pow(c);
        let period = run * self.base;
        let unit = ((1u64 << run) - 1) << (y * run);
        let mut m = 0u64;
        let mut at = 0;
        while at < self.bits {
            m |= unit << at;
            at += period;
        }
        m
    }

    pub fn word_mask(&self) -> u64 {
        if self.bits == 64 {
            u64::MAX
        } else {
            (1u64 << self.bits) - 1
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct GfTable {
    pub layout: Layout,
    pub words: Vec<u64>,
}

impl fmt::Debug for GfTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GfTable(base {}, k {}, ones {:?})", self.layout.base, self.layout.k, self.ones())
    }
}

impl GfTable {
    pub fn zero(layout: Layout) -> GfTable {
        GfTable { layout, words: vec![0; layout.words] }
    }

    pub fn new(base: usize, k: usize) -> GfTable {
        GfTable::zero(Layout::new(base, k))
    }

    pub fn delta(layout: Layout, index: usize) -> GfTable {
        let mut t = GfTable::zero(layout);
        t.flip(index);
        t
    }

    /// Takes raw words; padding bits are cleared.
    pub fn from_words(layout: Layout, mut words: Vec<u64>) -> GfTable {
        assert_eq!(words.len(), layout.words, "word count mismatch");
        let m = layout.word_mask();
        for w in &mut words {
            *w &= m;
        }
        GfTable { layout, words }
    }

    pub fn get(&self, index: usize) -> bool {
        let (w, b) = (index / self.layout.bits, index % self.layout.bits);
        self.words[w] >> b & 1 == 1
    }

    pub fn set(&mut self, index: usize, value: bool) {
        if self.get(index) != value {
            self.flip(index);
        }
    }

    pub fn flip(&mut self, index: usize) {
        let (w, b) = (index / self.layout.bits, index % self.layout.bits);
        self.words[w] ^= 1 << b;
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Parity of the number of set entries.
    pub fn parity(&self) -> u8 {
        (self.words.iter().map(|w| w.count_ones()).sum::<u32>() & 1) as u8
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(wi * self.layout.bits + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    pub fn xor_assign(&mut self, other: &GfTable) {
        assert_eq!(self.layout, other.layout);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn and(&self, other: &GfTable) -> GfTable {
        assert_eq!(self.layout, other.layout);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        GfTable { layout: self.layout, words }
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }
}

/// Applies a unipotent lower-triangular matrix to each listed coordinate in
/// place. `rows[x]` is the bitmask of `y < x` whose entries are added to `x`.
/// State codes must be a linear extension of the order behind `rows`.
pub fn apply_lower(t: &mut GfTable, rows: &[u32], coords: impl IntoIterator<Item = usize>) {
    let lay = t.layout;
    let b = lay.base;
    debug_assert_eq!(rows.len(), b);
    // in-word coordinates share one pass over the words
    let mut inword: Vec<(u64, u32)> = Vec::new();
    for c in coords {
        assert!(c < lay.k, "coordinate {c} out of range");
        if c < lay.low {
            let shift = lay.pow(c);
            let masks: Vec<u64> = (0..b).map(|y| lay.digit_mask(c, y)).collect();
            inword.extend(
                (1..b)
                    .rev()
                    .flat_map(|x| bits(rows[x]).map(move |y| (x, y)))
                    .map(|(x, y)| (masks[y], ((x - y) * shift) as u32)),
            );
        } else {
            let s = lay.pow(c - lay.low);
            let block = s * b;
            let pairs: Vec<(usize, usize)> = (1..b).rev().flat_map(|x| bits(rows[x]).map(move |y| (x, y))).collect();
            for start in (0..lay.words).step_by(block) {
                for &(x, y) in &pairs {
                    let (lo, hi) = t.words[start..start + block].split_at_mut(x * s);
                    let src = &lo[y * s..y * s + s];
                    for (d, v) in hi[..s].iter_mut().zip(src) {
                        *d ^= v;
                    }
                }
            }
        }
    }
    if !inword.is_empty() {
        for w in t.words.iter_mut() {
            if *w == 0 {
                continue;
            }
            let mut v = *w;
            for &(m, s) in &inword {
                v ^= (v & m) << s;
            }
            *w = v;
        }
    }
}

pub(crate) fn bits(mut m: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let y = m.trailing_zeros() as usize;
            m &= m - 1;
            y
        })
    })
}
