//! Filters on the number of index coordinates whose state lies in a class.

use crate::table::{GfTable, Layout};

/// Per-word counts for one class. `high[w]` counts the class coordinates
/// among the word digits of word `w`; `low[j]` marks the in-word positions
/// with exactly `j` class coordinates.
#[derive(Debug, Clone)]
pub struct CountPlan {
    pub layout: Layout,
    pub class: u32,
    pub high: Vec<u8>,
    pub low: Vec<u64>,
}

impl CountPlan {
    pub fn new(layout: Layout, class: u32) -> CountPlan {
        let in_class = |d: usize| class >> d & 1 == 1;
        let mut high = vec![0u8; layout.words];
        for (w, h) in high.iter_mut().enumerate() {
            let mut x = w;
            for _ in layout.low..layout.k {
                *h += in_class(x % layout.base) as u8;
                x /= layout.base;
            }
        }
        let mut low = vec![0u64; layout.low + 1];
        for p in 0..layout.bits {
            let c = (0..layout.low).filter(|&c| in_class(layout.digit(p, c))).count();
            low[c] |= 1 << p;
        }
        CountPlan { layout, class, high, low }
    }

    /// Mask of positions in word `w` with exactly `i` class coordinates.
    #[inline]
    pub fn mask(&self, w: usize, i: usize) -> u64 {
        let h = self.high[w] as usize;
        if i < h || i - h > self.layout.low {
            0
        } else {
            self.low[i - h]
        }
    }

    /// `t · [count = i]`.
    pub fn filter(&self, t: &GfTable, i: usize) -> GfTable {
        assert_eq!(t.layout, self.layout);
        let words = t.words.iter().enumerate().map(|(w, &v)| v & self.mask(w, i)).collect();
        GfTable { layout: self.layout, words }
    }

    /// `acc ^= t · [count = i]`.
    pub fn filter_into(&self, acc: &mut GfTable, t: &GfTable, i: usize) {
        for (w, (a, &v)) in acc.words.iter_mut().zip(&t.words).enumerate() {
            *a ^= v & self.mask(w, i);
        }
    }

    /// Number of class coordinates of a full index.
    pub fn count_of(&self, index: usize) -> usize {
        self.layout.digits(index).iter().filter(|&&d| self.class >> d & 1 == 1).count()
    }
}

/// Bitmask over state codes.
pub fn class_of(states: &[u8]) -> u32 {
    states.iter().fold(0, |m, &s| m | 1 << s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_and_direct_count() {
        for (base, k) in [(6, 2), (6, 4), (3, 5), (18, 2)] {
            let lay = Layout::new(base, k);
            let plan = CountPlan::new(lay, class_of(&[1, 4]));
            let all = GfTable::from_words(lay, vec![u64::MAX; lay.words]);
            let mut sum = GfTable::zero(lay);
            for i in 0..=k {
                let f = plan.filter(&all, i);
                for x in f.ones() {
                    assert_eq!(plan.count_of(x), i);
                }
                sum.xor_assign(&f);
            }
            assert_eq!(sum, all);
        }
        let lay = Layout::new(6, 2);
        let plan = CountPlan::new(lay, class_of(&[1]));
        let all = GfTable::from_words(lay, vec![u64::MAX; lay.words]);
        assert_eq!(plan.filter(&all, 1).count_ones(), 10);
    }
}
