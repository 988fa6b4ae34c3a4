use fvsk_model::LabeledGraph;
use fvsk_oracle::*;
use proptest::prelude::*;

fn multigraph() -> impl Strategy<Value = (LabeledGraph, Vec<bool>)> {
    (1usize..10).prop_flat_map(|n| {
        (proptest::collection::vec((0..n, 0..n), 0..14), proptest::collection::vec(any::<bool>(), n)).prop_map(
            move |(edges, keep)| {
                let mut g = LabeledGraph::new(n);
                for (u, v) in edges {
                    if u != v {
                        g.add_edge(u, v);
                    }
                }
                (g, keep)
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn union_find_and_dfs_agree((g, keep) in multigraph()) {
        prop_assert_eq!(is_forest_uf(&g, &keep), is_forest_dfs(&g, &keep));
    }

    #[test]
    fn counts_match_verifier((g, _) in multigraph()) {
        let counts = brute_fvs_counts(&g, None).unwrap();
        let mut direct = vec![0u64; g.n + 1];
        for s in 0u32..(1 << g.n) {
            let set: Vec<usize> = (0..g.n).filter(|&v| s >> v & 1 == 1).collect();
            let keep: Vec<bool> = (0..g.n).map(|v| s >> v & 1 == 0).collect();
            prop_assert_eq!(verify_solution(&g, &set, Mode::Fvs), is_forest_dfs(&g, &keep));
            if is_forest_dfs(&g, &keep) {
                direct[set.len()] += 1;
            }
        }
        for (t, &c) in direct.iter().enumerate() {
            prop_assert_eq!(counts.count(t), c);
        }
    }
}
