use fvsk_gadgets::{
    audit_plan, build_cfvs_instance, build_fvs_instance, columns, witness_from_assignment, Mode, Triples,
};
use fvsk_model::{Constraint, CspInstance};
use fvsk_oracle::{all_satisfying, brute::Mode as VMode, verify_solution};

fn csp(n: usize, b: u32, cons: &[(&[usize], &[&[u32]])]) -> CspInstance {
    let q = cons[0].0.len();
    CspInstance {
        n,
        q,
        b,
        constraints: cons
            .iter()
            .map(|(vars, ts)| Constraint { vars: vars.to_vec(), tuples: ts.iter().map(|t| t.to_vec()).collect() })
            .collect(),
    }
}

#[test]
fn single_variable_counts() {
    let p = build_fvs_instance(&csp(1, 6, &[(&[0], &[&[2], &[5]])])).unwrap();
    assert_eq!(p.columns(), 6);
    // per gadget: 6 + 15 + 12 + 24 vertices, budget 5 + 4
    let per_gadget = 6 + 15 + 12 + 24;
    // r, two guards with triangles; per column: 2 z's and one deletion vertex,
    // plus 5 deletion edges from each z to the clique
    assert_eq!(p.graph.n, 1 + 6 + 6 * (per_gadget + 3 + 10));
    assert_eq!(p.budget, 6 * (9 + 1) + 2);
    assert!(audit_plan(&p).is_clean(), "{:?}", audit_plan(&p));
}

#[test]
fn fvs_witnesses_verify() {
    let instances = [
        csp(1, 6, &[(&[0], &[&[1], &[3], &[6]])]),
        csp(2, 6, &[(&[0, 1], &[&[1, 6], &[4, 4], &[6, 1]]), (&[1, 0], &[&[2, 3], &[4, 4]])]),
        csp(2, 6, &[(&[1], &[&[5]])]),
    ];
    for c in &instances {
        let p = build_fvs_instance(c).unwrap();
        assert!(audit_plan(&p).is_clean(), "{:?}", audit_plan(&p).violations);
        let sats = all_satisfying(c).unwrap();
        assert!(!sats.is_empty());
        for a in sats {
            let s = witness_from_assignment(&p, &a).unwrap();
            assert_eq!(s.len(), p.budget);
            assert!(verify_solution(&p.graph, &s, VMode::Fvs), "assignment {a:?}");
        }
    }
}

#[test]
fn cfvs_witnesses_verify() {
    let all: Vec<Vec<u32>> = (1..=18).map(|y| vec![y]).collect();
    let c = CspInstance { n: 1, q: 1, b: 18, constraints: vec![Constraint { vars: vec![0], tuples: all }] };
    for triples in [Triples::Corrected, Triples::Published] {
        let p = build_cfvs_instance(&c, triples).unwrap();
        assert_eq!(p.columns(), 18);
        let rep = audit_plan(&p);
        assert!(rep.is_clean(), "{:?}", rep.violations);
        assert_eq!(rep.notes.is_empty(), triples == Triples::Corrected);
        for a in all_satisfying(&c).unwrap() {
            let s = witness_from_assignment(&p, &a).unwrap();
            assert_eq!(s.len(), p.budget);
            assert!(verify_solution(&p.graph, &s, VMode::ConnectedFvs), "{triples:?} value {}", a[0]);
        }
    }
}

#[test]
fn width_minus_n_is_constant() {
    for (mode, b) in [(Mode::Fvs, 6u32), (Mode::Cfvs, 18)] {
        let mut k0s = Vec::new();
        for n in 1..=3usize {
            for m in 1..=2usize {
                let cons: Vec<(Vec<usize>, Vec<Vec<u32>>)> =
                    (0..m).map(|h| (vec![h % n, (h + 1) % n], vec![vec![1, 2], vec![b, 1]])).collect();
                let c = CspInstance {
                    n,
                    q: 2,
                    b,
                    constraints: cons.into_iter().map(|(vars, tuples)| Constraint { vars, tuples }).collect(),
                };
                let p = match mode {
                    Mode::Fvs => build_fvs_instance(&c).unwrap(),
                    Mode::Cfvs => build_cfvs_instance(&c, Triples::default()).unwrap(),
                };
                assert_eq!(p.columns(), columns(mode, n, m));
                k0s.push(p.k0);
            }
        }
        assert!(k0s.iter().all(|&k| k == k0s[0]), "{mode:?} {k0s:?}");
    }
}

#[test]
fn unsatisfying_assignment_rejected_and_mutation_caught() {
    let c = csp(1, 6, &[(&[0], &[&[2]])]);
    let mut p = build_fvs_instance(&c).unwrap();
    assert!(witness_from_assignment(&p, &[3]).is_err());
    p.graph.edges.pop();
    assert!(audit_plan(&p).violations.iter().any(|v| v.contains("evaluate")));
}

#[test]
fn wrong_alphabet() {
    assert!(build_fvs_instance(&csp(1, 18, &[(&[0], &[&[2]])])).is_err());
    assert!(build_cfvs_instance(&csp(1, 6, &[(&[0], &[&[2]])]), Triples::default()).is_err());
}
