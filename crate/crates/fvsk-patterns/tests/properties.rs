use std::collections::BTreeSet;

use fvsk_model::LabeledGraph;
use fvsk_model::{random_expr, ExprNode};
use fvsk_oracle::{extension_compatible, random_extension, CliqueExtension, ExtNode};
use fvsk_patterns::cw::state::from_parts;
use fvsk_patterns::cw::state::parts;
use fvsk_patterns::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn all_states(k: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..6usize.pow(k as u32)).map(move |i| unpack_state(i, k))
}

fn pairs(k: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=k {
        for j in 1..=k {
            if i != j {
                out.push((i, j));
            }
        }
    }
    out
}

fn has_cycle(g: &LabeledGraph) -> bool {
    let mut parent: Vec<usize> = (0..g.n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for &(u, v) in &g.edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return true;
        }
        parent[a] = b;
    }
    false
}

fn join_forest(f: &LabeledGraph, i: u32, j: u32) -> LabeledGraph {
    let mut g = f.clone();
    for u in 0..f.n {
        for v in 0..f.n {
            if f.labels[u] == i && f.labels[v] == j {
                g.add_edge(u, v);
            }
        }
    }
    g
}

#[test]
fn forest_roundtrip_exhaustive() {
    for k in 0..=4 {
        for s in all_states(k) {
            let p = decode_state(&s);
            assert_eq!(pattern_of_forest(&canonical_forest(&p), k).unwrap(), p);
            assert_eq!(encode_state(&p).unwrap(), s);
        }
    }
}

#[test]
fn state_bijection_exhaustive() {
    for k in 0..=5 {
        let mut seen = BTreeSet::new();
        for idx in 0..6usize.pow(k as u32) {
            let s = unpack_state(idx, k);
            let p = decode_state(&s);
            assert!(p.is_very_nice());
            assert_eq!(pack_state(&encode_state(&p).unwrap()), idx);
            assert!(seen.insert(p));
        }
    }
}

#[test]
fn join_agrees_with_forests() {
    for k in 2..=3 {
        for s in all_states(k) {
            let p = decode_state(&s);
            let f = canonical_forest(&p);
            for (i, j) in pairs(k) {
                let g = join_forest(&f, i as u32, j as u32);
                assert_eq!(acyc(&p, i, j), !has_cycle(&g), "{p} {i} {j}");
                if let Some(q) = join_pattern(&p, i, j) {
                    assert_eq!(pattern_of_forest(&g, k).unwrap(), q);
                }
            }
        }
    }
}

#[test]
fn relabel_agrees_with_forests() {
    for k in 2..=3 {
        for s in all_states(k) {
            let p = decode_state(&s);
            for (i, j) in pairs(k) {
                let mut f = canonical_forest(&p);
                for l in f.labels.iter_mut() {
                    if *l == i as u32 {
                        *l = j as u32;
                    }
                }
                let q = relabel_pattern(&p, i, j);
                assert_eq!(pattern_of_forest(&f, k).unwrap(), q);
                let mut t = s.clone();
                t[j - 1] = cw_relabel_state(s[i - 1], s[j - 1]);
                t[i - 1] = cw::state::EMPTY;
                assert_eq!(encode_state(&clean_pattern(&q).unwrap()).unwrap(), t);
            }
        }
    }
}

#[test]
fn union_is_coordinatewise() {
    for k in 0..=2 {
        for a in all_states(k) {
            for b in all_states(k) {
                let (p, q) = (decode_state(&a), decode_state(&b));
                let u = union_pattern(&p, &q);
                // disjoint union with the zero vertices identified
                let (fp, fq) = (canonical_forest(&p), canonical_forest(&q));
                let mut g = fp.clone();
                let mut map = vec![0usize; fq.n];
                for v in 1..fq.n {
                    map[v] = g.add_vertex(fq.labels[v]);
                }
                for &(x, y) in &fq.edges {
                    g.add_edge(map[x], map[y]);
                }
                assert_eq!(pattern_of_forest(&g, k).unwrap(), u);
                let want: Vec<u8> = a
                    .iter()
                    .zip(&b)
                    .map(|(&x, &y)| {
                        let ((d1, c1), (d2, c2)) = (parts(x), parts(y));
                        let c = (c1 + c2).min(2);
                        from_parts((d1 + d2).min(2 - c), c).unwrap()
                    })
                    .collect();
                assert_eq!(encode_state(&clean_pattern(&u).unwrap()).unwrap(), want);
            }
        }
    }
}

#[test]
fn join_reduce_bounded_and_local() {
    let mut max = 0;
    for k in 2..=3 {
        for s in all_states(k) {
            let p = decode_state(&s);
            for (i, j) in pairs(k) {
                let direct = join_pattern(&p, i, j).map(|q| reduce(&q));
                if let Some(r) = &direct {
                    max = max.max(r.len());
                }
                assert_eq!(join_states(&s, i, j), direct, "{p} {i} {j}");
            }
        }
    }
    assert!(max <= 7);
}

#[test]
fn tw_edge_reduce_bounded_and_local() {
    for k in 2..=3 {
        for idx in 0..3usize.pow(k as u32) {
            let s = tw_unpack(idx, k);
            for (i, j) in pairs(k) {
                let direct = tw_patadd(&tw_decode(&s), i, j).map(|q| tw_reduce(&q));
                let via = tw_edge_table()[3 * s[i - 1] as usize + s[j - 1] as usize].as_ref().map(|ts| {
                    ts.iter()
                        .map(|&(a, b)| {
                            let mut t = s.clone();
                            t[i - 1] = a;
                            t[j - 1] = b;
                            t
                        })
                        .collect::<BTreeSet<_>>()
                });
                if let Some(r) = &direct {
                    assert!(r.len() <= 9);
                }
                assert_eq!(via, direct);
            }
        }
    }
}

#[test]
fn tw_state_bijection() {
    for k in 0..=8 {
        let mut seen = BTreeSet::new();
        for idx in 0..3usize.pow(k as u32) {
            let s = tw_unpack(idx, k);
            let p = tw_decode(&s);
            assert!(p.is_compact());
            assert_eq!(tw_pack(&tw_encode(&p).unwrap()), idx);
            assert!(seen.insert(p));
        }
    }
}

#[test]
fn tw_join_matches_table() {
    fn table(a: u8, b: u8) -> Option<u8> {
        use fvsk_patterns::tw::state::*;
        match (a, b) {
            (EMPTY, EMPTY) => Some(EMPTY),
            (EMPTY, _) | (_, EMPTY) | (C, C) => None,
            (x, y) => Some(x.max(y)),
        }
    }
    for k in 0..=2 {
        for x in 0..3usize.pow(k as u32) {
            for y in 0..3usize.pow(k as u32) {
                let (a, b) = (tw_unpack(x, k), tw_unpack(y, k));
                let want: Option<Vec<u8>> = a.iter().zip(&b).map(|(&p, &q)| table(p, q)).collect();
                assert_eq!(tw_join(&tw_decode(&a), &tw_decode(&b)).map(|p| tw_encode(&p).unwrap()), want);
            }
        }
    }
}

// ----- random generators -----

/// One or two positive label entries, mostly 1: dense vectors make every
/// probe incompatible with all four patterns.
fn random_vector(rng: &mut ChaCha8Rng, k: usize, zero_entry: u8) -> CapVector {
    let mut v = vec![0u8; k + 1];
    v[0] = zero_entry;
    for _ in 0..rng.gen_range(1..=2) {
        v[rng.gen_range(1..=k)] = if rng.gen_bool(0.8) { 1 } else { 2 };
    }
    if zero_entry == 1 && rng.gen_bool(0.3) {
        v[1..].fill(0);
    }
    CapVector(v)
}

/// `p₁..p₄` over `v₁ = z`, `v₂`, `v₃` and a rest `R`.
fn four_patterns(seed: u64, k: usize) -> [AcyclicityPattern; 4] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v1 = random_vector(&mut rng, k, 1);
    let v2 = random_vector(&mut rng, k, 0);
    let v3 = random_vector(&mut rng, k, 0);
    let rest: Vec<CapVector> = (0..rng.gen_range(0..=2)).map(|_| random_vector(&mut rng, k, 0)).collect();
    let mk = |a: CapVector, b: Option<CapVector>| {
        let mut vs = rest.clone();
        vs.push(a);
        vs.extend(b);
        AcyclicityPattern::new(k, vs).unwrap()
    };
    [
        mk(v1.clone(), Some(two_sum(&v2, &v3))),
        mk(v2.clone(), Some(two_sum(&v1, &v3))),
        mk(v3.clone(), Some(two_sum(&v1, &v2))),
        mk(two_sum(&two_sum(&v1, &v2), &v3), None),
    ]
}

/// Probe `τ, F'`. Odd seeds use the generic random extension. Even seeds
/// build the extension's own vertices on two fresh labels `k+1, k+2` and
/// join them to pattern labels, which splits the four patterns far more
/// often than joins among pattern labels do.
fn probe(k: usize, seed: u64, size: usize) -> (CliqueExtension, Vec<usize>) {
    if seed % 2 == 1 {
        return random_extension(k as u32, size, seed);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = k as u32;
    let (mut expr, _) = random_expr(2, size, seed);
    expr.width = k + 2;
    for n in expr.nodes.iter_mut() {
        *n = match *n {
            ExprNode::Introduce(l) => ExprNode::Introduce(l + k),
            ExprNode::Relabel { from, to, child } => ExprNode::Relabel { from: from + k, to: to + k, child },
            ExprNode::Join { a, b, child } => ExprNode::Join { a: a + k, b: b + k, child },
            u => u,
        };
    }
    let ops: Vec<ExtNode> = (0..rng.gen_range(1..=3))
        .map(|_| ExtNode::Join { a: rng.gen_range(1..=k), b: rng.gen_range(k + 1..=k + 2), child: 0 })
        .collect();
    let ext = CliqueExtension::around(&expr, &ops);
    let mut fprime: Vec<usize> = Vec::new();
    for i in 0..size {
        if rng.gen_bool(0.7) {
            fprime.push(i);
            if ext.check_partial_solution(&fprime).is_err() {
                fprime.pop();
            }
        }
    }
    (ext, fprime)
}

fn compatible(p: &AcyclicityPattern, seed: u64, size: usize) -> bool {
    let (ext, fprime) = probe(p.k(), seed, size);
    extension_compatible(&canonical_forest(p), &ext, &fprime).unwrap()
}

fn random_forest_pattern(rng: &mut ChaCha8Rng, k: usize) -> AcyclicityPattern {
    let n = rng.gen_range(2..=8);
    let mut labels = vec![0u32];
    labels.extend((1..n).map(|_| rng.gen_range(1..=k as u32)));
    let mut g = LabeledGraph::with_labels(labels);
    for v in 1..n {
        // mostly away from the zero vertex, so that reduce has work to do
        if v > 1 && rng.gen_bool(0.75) {
            g.add_edge(v, rng.gen_range(1..v));
        } else if rng.gen_bool(0.3) {
            g.add_edge(v, 0);
        }
    }
    pattern_of_forest(&g, k).unwrap()
}

fn random_tw_pattern(rng: &mut ChaCha8Rng, k: usize, min_blocks: usize) -> Option<TwPattern> {
    let mut blocks: Vec<Vec<usize>> = vec![vec![0]];
    for l in 1..=k {
        if rng.gen_bool(0.2) {
            continue;
        }
        let b = rng.gen_range(0..=blocks.len());
        if b == blocks.len() {
            blocks.push(vec![l]);
        } else {
            blocks[b].push(l);
        }
    }
    (blocks.len() >= min_blocks).then(|| TwPattern::from_blocks(k, &blocks).unwrap())
}

fn random_partition_of(rng: &mut ChaCha8Rng, k: usize, labels: &[usize]) -> TwPattern {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &l in labels {
        let b = rng.gen_range(0..=blocks.len());
        if b == blocks.len() {
            blocks.push(vec![l]);
        } else {
            blocks[b].push(l);
        }
    }
    TwPattern::from_blocks(k, &blocks).unwrap()
}

fn ctp(k: usize) -> impl Iterator<Item = TwPattern> {
    (0..3usize.pow(k as u32)).map(move |i| tw_decode(&tw_unpack(i, k)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn cw_four_pattern_parity(seed in any::<u64>(), k in 1usize..=3) {
        let ps = four_patterns(seed, k);
        for probe in 0..8u64 {
            let size = (probe % 4 + 1) as usize;
            let c = ps.iter().filter(|p| compatible(p, seed ^ (probe << 40), size)).count();
            prop_assert_eq!(c % 2, 0, "{:?}", ps.iter().map(|p| p.to_string()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn cw_reduce_preserves_parity(seed in any::<u64>(), k in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_forest_pattern(&mut rng, k);
        let red = reduce_patterns(&p);
        prop_assert!(red.iter().all(|q| q.is_very_nice()));
        for probe in 0..8u64 {
            let s = seed.wrapping_add(probe);
            let size = rng.gen_range(1..=5);
            let lhs = compatible(&p, s, size);
            let rhs = red.iter().filter(|q| compatible(q, s, size)).count() % 2 == 1;
            prop_assert_eq!(lhs, rhs, "{}", p);
        }
    }

    #[test]
    fn tw_four_pattern_parity(seed in any::<u64>(), k in 2usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some(p) = random_tw_pattern(&mut rng, k, 3) else { return Ok(()) };
        let blocks = p.blocks();
        let mut idx: Vec<usize> = (0..blocks.len()).collect();
        for i in 0..3 {
            let j = rng.gen_range(i..idx.len());
            idx.swap(i, j);
        }
        let (x, y, z) = (&blocks[idx[0]], &blocks[idx[1]], &blocks[idx[2]]);
        let rest: Vec<Vec<usize>> = idx[3..].iter().map(|&b| blocks[b].clone()).collect();
        let cat = |a: &[usize], b: &[usize]| [a, b].concat();
        let mk = |extra: Vec<Vec<usize>>| TwPattern::from_blocks(k, &[rest.clone(), extra].concat()).unwrap();
        let ps = [
            mk(vec![cat(x, y), z.clone()]),
            mk(vec![cat(x, z), y.clone()]),
            mk(vec![cat(y, z), x.clone()]),
            mk(vec![[x.as_slice(), y, z].concat()]),
        ];
        for q in ctp(k) {
            let c = ps.iter().filter(|p| tw_glue_compatible(p, &q)).count();
            prop_assert_eq!(c % 2, 0);
        }
    }

    #[test]
    fn tw_reduce_preserves_parity(seed in any::<u64>(), k in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_tw_pattern(&mut rng, k, 1).unwrap();
        let red = tw_reduce_patterns(&p);
        prop_assert!(red.iter().all(|r| r.is_compact()));
        for q in ctp(k) {
            let rhs = red.iter().filter(|r| tw_glue_compatible(r, &q)).count() % 2 == 1;
            prop_assert_eq!(tw_glue_compatible(&p, &q), rhs, "{} vs {}", p, q);
        }
    }

    #[test]
    fn tw_glue_iff_join(seed in any::<u64>(), k in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_tw_pattern(&mut rng, k, 1).unwrap();
        let q = random_partition_of(&mut rng, k, &p.label_set());
        prop_assert_eq!(tw_glue_compatible(&p, &q), tw_join(&p, &q).is_some());
        prop_assert_eq!(tw_glue_compatible(&p, &q), tw_glue_compatible(&q, &p));
    }
}

/// The probes must separate patterns, or the parity checks above say nothing.
#[test]
fn probes_are_discriminating() {
    let (mut mixed, mut total) = (0, 0);
    for seed in 0..200u64 {
        let ps = four_patterns(seed, 2 + (seed % 2) as usize);
        for probe in 0..8u64 {
            let c = ps.iter().filter(|p| compatible(p, seed ^ (probe << 40), 1 + (probe % 4) as usize)).count();
            total += 1;
            if c == 2 {
                mixed += 1;
            }
        }
    }
    assert!(mixed * 40 > total, "only {mixed} of {total} probes split the four patterns");
}

#[test]
fn reduce_probes_are_discriminating() {
    let (mut yes, mut no, mut split) = (0, 0, 0);
    for seed in 0..300u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_forest_pattern(&mut rng, 2 + (seed % 2) as usize);
        let red = reduce_patterns(&p);
        for probe in 0..4u64 {
            let s = seed.wrapping_add(probe << 32);
            let c = red.iter().filter(|q| compatible(q, s, 1 + probe as usize)).count();
            if compatible(&p, s, 1 + probe as usize) {
                yes += 1
            } else {
                no += 1
            }
            if c > 0 && c < red.len() {
                split += 1;
            }
        }
    }
    eprintln!("compatible {yes}, incompatible {no}, split reductions {split}");
    assert!(yes * 10 > yes + no && no * 10 > yes + no && split * 100 > yes + no);
}
