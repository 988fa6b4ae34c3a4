use std::collections::HashSet;

use fvsk_model::*;
use proptest::prelude::*;

fn graph_strategy(max_n: usize, max_label: u32) -> impl Strategy<Value = LabeledGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        let pairs = n * (n - 1) / 2;
        (proptest::collection::vec(1..=max_label, n), proptest::collection::vec(any::<bool>(), pairs)).prop_map(
            move |(labels, bits)| {
                let mut g = LabeledGraph::with_labels(labels);
                let mut it = bits.into_iter();
                for u in 0..n {
                    for v in u + 1..n {
                        if it.next().unwrap() {
                            g.add_edge(u, v);
                        }
                    }
                }
                g
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_expr_evaluates_to_graph(g in graph_strategy(12, 4)) {
        let e = canonical_expr(&g, 4).unwrap();
        let r = validate_expr(&e);
        prop_assert!(r.violations.is_empty(), "{:?}", r.violations);
        prop_assert!(e.eval().same_as(&g));
    }

    #[test]
    fn very_nice_invariants(g in graph_strategy(12, 1)) {
        let td = greedy_td(&g);
        td.validate(&g).unwrap();
        let vnd = make_very_nice(&td, &g).unwrap();
        prop_assert!(vnd.check(&g).is_ok(), "{:?}", vnd.check(&g));
        prop_assert_eq!(vnd.max_bag(), td.max_bag() + 1);
        let labels = assign_labels(&vnd);
        for x in &vnd.nodes {
            let set: HashSet<u32> = x.bag.iter().map(|&v| labels[v]).collect();
            prop_assert_eq!(set.len(), x.bag.len());
        }
    }

    #[test]
    fn linear_builder_is_exact(g in graph_strategy(12, 1)) {
        let e = linear_expr_in_order(&g).unwrap();
        let r = validate_expr(&e);
        prop_assert!(r.violations.is_empty() && r.linear);
        prop_assert!(e.eval().same_as(&g));
    }

    #[test]
    fn random_expr_contract(k in 1u32..5, n in 1usize..15, seed in any::<u64>(), mixed in any::<bool>()) {
        let shape = if mixed { Shape::Mixed } else { Shape::Linear };
        let (e, g) = random_expr_with(k, n, seed, shape);
        let r = validate_expr(&e);
        prop_assert!(r.violations.is_empty(), "{:?}", r.violations);
        prop_assert!(r.width_used <= k);
        prop_assert_eq!(r.vertices, n);
        prop_assert!(e.eval().same_as(&g));
    }

    #[test]
    fn text_formats_roundtrip(g in graph_strategy(10, 1), k in 1u32..4) {
        let text = write_graph(&g);
        prop_assert!(parse_graph(&text).unwrap().same_as(&g));
        let td = greedy_td(&g);
        prop_assert_eq!(&parse_td(&write_td(&td)).unwrap(), &td);
        let e = canonical_expr(&g, k).unwrap();
        prop_assert_eq!(parse_clique_expr(&write_clique_expr(&e)).unwrap(), e);
    }

    #[test]
    fn csp_roundtrip(n in 1usize..4, q in 1usize..3, b in 1u32..7, raw in proptest::collection::vec(proptest::collection::vec(1u32..7, 1..5), 0..4)) {
        let constraints = raw
            .into_iter()
            .map(|vals| {
                let vars = (0..q).map(|i| (vals[0] as usize + i) % n).collect();
                let mut tuples: Vec<Vec<u32>> = vals
                    .iter()
                    .map(|&v| (0..q).map(|i| (v + i as u32 - 1) % b + 1).collect())
                    .collect();
                tuples.sort();
                tuples.dedup();
                Constraint { vars, tuples }
            })
            .collect();
        let csp = CspInstance { n, q, b, constraints };
        csp.validate().unwrap();
        prop_assert_eq!(parse_csp(&write_csp(&csp)).unwrap(), csp);
    }
}
