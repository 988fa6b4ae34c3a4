//! Clique-width acyclicity patterns.
//!
//! A pattern over width `k` is a multiset (multiplicities capped at 2) of
//! vectors in `{0,1,2}^{k+1}`. Index 0 counts the zero vertex; exactly one
//! member, the zero vector, has entry 0 equal to 1. Members are kept sorted,
//! so derived equality and ordering are multiset equality and a total order.

use std::collections::BTreeMap;
use std::fmt;

use fvsk_model::LabeledGraph;

use crate::uf::Uf;
use crate::{PatternError, Result};

/// Per-label state codes of very nice patterns.
pub mod state {
    pub const EMPTY: u8 = 0;
    pub const D: u8 = 1;
    pub const DSTAR: u8 = 2;
    pub const C: u8 = 3;
    pub const CPLUS: u8 = 4;
    pub const CSTAR: u8 = 5;
    pub const NAMES: [&str; 6] = ["0", "D", "D*", "C", "C+", "C*"];

    /// `(singletons, zero-vector entry)` of a state.
    pub const fn parts(s: u8) -> (u8, u8) {
        match s {
            EMPTY => (0, 0),
            D => (1, 0),
            DSTAR => (2, 0),
            C => (0, 1),
            CPLUS => (1, 1),
            _ => (0, 2),
        }
    }

    pub fn from_parts(singletons: u8, zero: u8) -> Option<u8> {
        (0..6u8).find(|&s| parts(s) == (singletons, zero))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CapVector(pub Vec<u8>);

impl CapVector {
    pub fn zero(k: usize) -> Self {
        CapVector(vec![0; k + 1])
    }

    pub fn unit(k: usize, i: usize) -> Self {
        let mut v = Self::zero(k);
        v.0[i] = 1;
        v
    }

    pub fn k(&self) -> usize {
        self.0.len() - 1
    }

    pub fn get(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().map(|&x| x as u32).sum::<u32>() == 1
    }

    pub fn is_zero_vector(&self) -> bool {
        self.0[0] == 1
    }
}

impl fmt::Display for CapVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// `w_j = min(2, u_j + v_j)`.
pub fn two_sum(u: &CapVector, v: &CapVector) -> CapVector {
    assert_eq!(u.0.len(), v.0.len());
    CapVector(u.0.iter().zip(&v.0).map(|(&a, &b)| (a + b).min(2)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AcyclicityPattern {
    k: usize,
    members: Vec<(CapVector, u8)>,
}

impl AcyclicityPattern {
    /// Builds the pattern of a vector multiset, capping multiplicities at 2.
    pub fn new(k: usize, vectors: impl IntoIterator<Item = CapVector>) -> Result<Self> {
        let mut raw: BTreeMap<CapVector, usize> = BTreeMap::new();
        for v in vectors {
            if v.0.len() != k + 1 {
                return Err(PatternError::Invalid(format!("vector {v} has length {}, expected {}", v.0.len(), k + 1)));
            }
            if v.0.iter().any(|&x| x > 2) {
                return Err(PatternError::Invalid(format!("vector {v} has an entry above 2")));
            }
            *raw.entry(v).or_default() += 1;
        }
        let zeros: Vec<_> = raw.iter().filter(|(v, _)| v.0[0] != 0).collect();
        match zeros.as_slice() {
            [(v, &1)] if v.0[0] == 1 => {}
            _ => return Err(PatternError::Invalid("need exactly one member with entry 0 equal to 1".into())),
        }
        Ok(AcyclicityPattern { k, members: raw.into_iter().map(|(v, m)| (v, m.min(2) as u8)).collect() })
    }

    /// Two-union of an already well-formed multiset.
    pub(crate) fn capped(k: usize, vectors: impl IntoIterator<Item = CapVector>) -> Self {
        let mut raw: BTreeMap<CapVector, u8> = BTreeMap::new();
        for v in vectors {
            let m = raw.entry(v).or_default();
            *m = (*m + 1).min(2);
        }
        let p = AcyclicityPattern { k, members: raw.into_iter().collect() };
        debug_assert_eq!(p.members.iter().filter(|(v, _)| v.0[0] != 0).map(|(_, m)| *m).sum::<u8>(), 1);
        p
    }

    /// `⟨𝟙₀⟩`: the pattern of the lone zero vertex.
    pub fn empty(k: usize) -> Self {
        AcyclicityPattern { k, members: vec![(CapVector::unit(k, 0), 1)] }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Distinct members with their multiplicities, in sorted order.
    pub fn members(&self) -> &[(CapVector, u8)] {
        &self.members
    }

    /// Members with repetition.
    pub fn expand(&self) -> Vec<CapVector> {
        self.members.iter().flat_map(|(v, m)| std::iter::repeat(v.clone()).take(*m as usize)).collect()
    }

    pub fn zero_vector(&self) -> &CapVector {
        &self.members.iter().find(|(v, _)| v.is_zero_vector()).unwrap().0
    }

    pub fn mult(&self, v: &CapVector) -> u8 {
        self.members.iter().find(|(w, _)| w == v).map_or(0, |(_, m)| *m)
    }

    pub fn tot(&self, i: usize) -> u32 {
        self.members.iter().map(|(v, m)| v.0[i] as u32 * *m as u32).sum()
    }

    /// `lbs(p)`: labels `1..=k` occurring in some member.
    pub fn labels(&self) -> Vec<usize> {
        (1..=self.k).filter(|&i| self.tot(i) > 0).collect()
    }

    pub fn is_nice(&self) -> bool {
        self.members.iter().all(|(v, _)| v.is_zero_vector() || v.is_unit())
    }

    pub fn is_very_nice(&self) -> bool {
        self.is_nice() && (1..=self.k).all(|i| self.tot(i) <= 2)
    }
}

/// Zero vector first, then the other members with repetition, e.g.
/// `<(1,1,0),(0,2,1)>`.
impl fmt::Display for AcyclicityPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}", self.zero_vector())?;
        for v in self.expand().iter().filter(|v| !v.is_zero_vector()) {
            write!(f, ",{v}")?;
        }
        f.write_str(">")
    }
}

/// Type vectors of the components of a labeled forest with one zero vertex.
pub fn pattern_of_forest(f: &LabeledGraph, k: usize) -> Result<AcyclicityPattern> {
    let zeros = f.labels.iter().filter(|&&l| l == 0).count();
    if zeros != 1 {
        return Err(PatternError::ZeroVertex(zeros));
    }
    if let Some(&label) = f.labels.iter().find(|&&l| l as usize > k) {
        return Err(PatternError::LabelRange { label, k });
    }
    let mut uf = Uf::new(f.n);
    for &(u, v) in &f.edges {
        if !uf.union(u, v) {
            return Err(PatternError::Cyclic);
        }
    }
    let mut comps: BTreeMap<usize, CapVector> = BTreeMap::new();
    for v in 0..f.n {
        let c = comps.entry(uf.find(v)).or_insert_with(|| CapVector::zero(k));
        let e = &mut c.0[f.labels[v] as usize];
        *e = (*e + 1).min(2);
    }
    Ok(AcyclicityPattern::capped(k, comps.into_values()))
}

/// One path per member (with repetition), holding `v_j` vertices of label
/// `j`. The zero vertex is vertex 0.
pub fn canonical_forest(p: &AcyclicityPattern) -> LabeledGraph {
    let mut g = LabeledGraph::default();
    let mut vectors = p.expand();
    vectors.sort_by_key(|v| !v.is_zero_vector());
    for v in vectors {
        let mut prev: Option<usize> = None;
        for (label, &c) in v.0.iter().enumerate() {
            for _ in 0..c {
                let id = g.add_vertex(label as u32);
                if let Some(u) = prev {
                    g.add_edge(u, id);
                }
                prev = Some(id);
            }
        }
    }
    g
}

/// State vector `s[i-1]` for labels `1..=k`.
pub fn encode_state(p: &AcyclicityPattern) -> Result<Vec<u8>> {
    if !p.is_very_nice() {
        return Err(PatternError::NotVeryNice(p.to_string()));
    }
    let z = p.zero_vector();
    Ok((1..=p.k)
        .map(|i| state::from_parts(p.mult(&CapVector::unit(p.k, i)), z.0[i]).expect("very nice totals are at most 2"))
        .collect())
}

pub fn decode_state(s: &[u8]) -> AcyclicityPattern {
    let k = s.len();
    let mut z = CapVector::unit(k, 0);
    let mut vectors = Vec::new();
    for (i, &st) in s.iter().enumerate() {
        let (single, zero) = state::parts(st);
        z.0[i + 1] = zero;
        for _ in 0..single {
            vectors.push(CapVector::unit(k, i + 1));
        }
    }
    vectors.push(z);
    AcyclicityPattern::capped(k, vectors)
}

/// Base-6 index; label 1 is the lowest digit.
pub fn pack_state(s: &[u8]) -> usize {
    s.iter().rev().fold(0, |acc, &d| acc * 6 + d as usize)
}

pub fn unpack_state(mut idx: usize, k: usize) -> Vec<u8> {
    (0..k)
        .map(|_| {
            let d = (idx % 6) as u8;
            idx /= 6;
            d
        })
        .collect()
}

/// `acyc_{i,j}`: joining labels `i` and `j` keeps the canonical forest
/// acyclic.
pub fn acyc(p: &AcyclicityPattern, i: usize, j: usize) -> bool {
    let (ti, tj) = (p.tot(i), p.tot(j));
    ti == 0 || tj == 0 || (p.members.iter().all(|(v, _)| v.0[i] + v.0[j] <= 1) && ti.min(tj) <= 1)
}

/// `⊕_{i,j}`; `None` is the bad pattern.
pub fn join_pattern(p: &AcyclicityPattern, i: usize, j: usize) -> Option<AcyclicityPattern> {
    assert!(i != j && (1..=p.k).contains(&i) && (1..=p.k).contains(&j));
    if !acyc(p, i, j) {
        return None;
    }
    if p.tot(i) == 0 || p.tot(j) == 0 {
        return Some(p.clone());
    }
    let mut merged = CapVector::zero(p.k);
    let mut rest = Vec::new();
    for v in p.expand() {
        if v.0[i] > 0 || v.0[j] > 0 {
            merged = two_sum(&merged, &v);
        } else {
            rest.push(v);
        }
    }
    rest.push(merged);
    Some(AcyclicityPattern::capped(p.k, rest))
}

/// `p_{i→j}`: label `i` folded into `j` with capping, multiplicities
/// re-capped. The result need not be very nice; compose with
/// [`crate::clean_pattern`] for the state-level operation.
pub fn relabel_pattern(p: &AcyclicityPattern, i: usize, j: usize) -> AcyclicityPattern {
    assert!(i != j && (1..=p.k).contains(&i) && (1..=p.k).contains(&j));
    let moved = p.expand().into_iter().map(|mut v| {
        v.0[j] = (v.0[j] + v.0[i]).min(2);
        v.0[i] = 0;
        v
    });
    AcyclicityPattern::capped(p.k, moved)
}

/// `p ⋓ q`: two-union with the zero vectors fused.
pub fn union_pattern(p: &AcyclicityPattern, q: &AcyclicityPattern) -> AcyclicityPattern {
    assert_eq!(p.k, q.k);
    let mut z = two_sum(p.zero_vector(), q.zero_vector());
    z.0[0] = 1;
    let mut all: Vec<CapVector> = p.expand().into_iter().chain(q.expand()).filter(|v| !v.is_zero_vector()).collect();
    all.push(z);
    AcyclicityPattern::capped(p.k, all)
}
