//! Reduction of arbitrary patterns to very nice families.
//!
//! Families are sets under symmetric difference: adding a pattern that is
//! already present removes it.

use std::collections::BTreeSet;

use crate::cw::{encode_state, two_sum, AcyclicityPattern, CapVector};
use crate::{PatternError, Result};

/// Symmetric-difference insert.
pub fn toggle<T: Ord>(set: &mut BTreeSet<T>, x: T) {
    if !set.remove(&x) {
        set.insert(x);
    }
}

/// `p` with one copy of each of `drop` removed.
fn without(p: &AcyclicityPattern, drop: &[&CapVector]) -> Vec<CapVector> {
    let mut rest = p.expand();
    for d in drop {
        let at = rest.iter().position(|v| v == *d).expect("member present");
        rest.remove(at);
    }
    rest
}

/// `redind(p, v, j)`: splits label `j` off the non-zero member `v`.
pub fn red_index(p: &AcyclicityPattern, v: &CapVector, j: usize) -> BTreeSet<AcyclicityPattern> {
    let k = p.k();
    assert!(p.mult(v) > 0 && !v.is_zero_vector(), "v must be a non-zero member of p");
    if v.get(j) == 0 || v.is_unit() {
        return BTreeSet::from([p.clone()]);
    }
    let z = p.zero_vector().clone();
    let unit = CapVector::unit(k, j);
    let mut v0 = v.clone();
    v0.0[j] -= 1;
    let rest = without(p, &[v, &z]);
    let with = |extra: Vec<CapVector>| AcyclicityPattern::capped(k, rest.iter().cloned().chain(extra));
    let p2 = with(vec![two_sum(&z, &unit), v0.clone()]);
    let p3 = with(vec![two_sum(&z, &v0), unit.clone()]);
    let p4 = with(vec![two_sum(&two_sum(&z, &v0), &unit)]);
    let mut out = red_index(&p2, &v0, j);
    toggle(&mut out, p3);
    toggle(&mut out, p4);
    out
}

/// Some non-unit non-zero member with a positive entry at `i`.
fn reducible(p: &AcyclicityPattern, i: usize) -> Option<CapVector> {
    p.members().iter().find(|(v, _)| !v.is_zero_vector() && !v.is_unit() && v.get(i) > 0).map(|(v, _)| v.clone())
}

/// `rednice`: exhausts `red_index` label by label, `1..=k`.
pub fn rednice(family: BTreeSet<AcyclicityPattern>) -> BTreeSet<AcyclicityPattern> {
    let mut cur = family;
    let Some(k) = cur.iter().next().map(|p| p.k()) else { return cur };
    for i in 1..=k {
        loop {
            let mut changed = false;
            let mut next = BTreeSet::new();
            for p in cur {
                match reducible(&p, i) {
                    Some(v) => {
                        changed = true;
                        for q in red_index(&p, &v, i) {
                            toggle(&mut next, q);
                        }
                    }
                    None => toggle(&mut next, p),
                }
            }
            cur = next;
            if !changed {
                break;
            }
        }
    }
    cur
}

/// `CleanPattern`: drops surplus singletons so that `tot_i ≤ 2`.
pub fn clean_pattern(p: &AcyclicityPattern) -> Result<AcyclicityPattern> {
    if !p.is_nice() {
        return Err(PatternError::NotNice(p.to_string()));
    }
    let k = p.k();
    let z = p.zero_vector().clone();
    let mut vectors = vec![z.clone()];
    for i in 1..=k {
        let unit = CapVector::unit(k, i);
        let m = p.mult(&unit) as u32;
        let surplus = (z.get(i) as u32 + m).saturating_sub(2);
        for _ in 0..m - surplus.min(m) {
            vectors.push(unit.clone());
        }
    }
    Ok(AcyclicityPattern::capped(k, vectors))
}

/// `redpat`: `rednice` followed by `CleanPattern` on every member.
pub fn reduce_patterns(p: &AcyclicityPattern) -> BTreeSet<AcyclicityPattern> {
    let mut out = BTreeSet::new();
    for q in rednice(BTreeSet::from([p.clone()])) {
        toggle(&mut out, clean_pattern(&q).expect("rednice output is nice"));
    }
    out
}

/// `redpat` as state vectors.
pub fn reduce(p: &AcyclicityPattern) -> BTreeSet<Vec<u8>> {
    reduce_patterns(p).iter().map(|q| encode_state(q).expect("cleaned patterns are very nice")).collect()
}
