use std::path::PathBuf;
use std::process::{Command, Output};

use fvsk_model::{
    random_expr_with, write_clique_expr, write_csp, write_graph, Constraint, CspInstance, LabeledGraph, Shape,
};

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("fvsk-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn fvsk(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_fvsk"));
    c.args(args).env_remove("FVSK_MEM_MB");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// Triangle as `.gr` and its canonical `.cwe`, written by the CLI itself.
fn triangle(dir: &PathBuf) -> (String, String) {
    let mut g = LabeledGraph::new(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    let gr = dir.join("tri.gr");
    std::fs::write(&gr, write_graph(&g)).unwrap();
    let o = fvsk(&["expr", "canonical", "--graph", gr.to_str().unwrap()], &[]);
    assert!(o.status.success());
    let cwe = dir.join("tri.cwe");
    std::fs::write(&cwe, &o.stdout).unwrap();
    (gr.to_str().unwrap().into(), cwe.to_str().unwrap().into())
}

#[test]
fn triangle_parities() {
    let d = scratch("tri");
    let (gr, cwe) = triangle(&d);
    let o = fvsk(&["count", "--graph", &gr, "--cwe", &cwe, "--size", "1"], &[]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "parity 1");
    // sizes 0..3 have 0, 3, 3, 1 solutions
    let o = fvsk(&["count", "--graph", &gr, "--cwe", &cwe], &[]);
    assert_eq!(stdout(&o), "size 0 parity 0\nsize 1 parity 1\nsize 2 parity 1\nsize 3 parity 1\n");
}

#[test]
fn decide_exit_codes() {
    let d = scratch("decide");
    let (gr, cwe) = triangle(&d);
    let no = fvsk(&["decide", "--graph", &gr, "--cwe", &cwe, "--size", "0"], &[]);
    assert_eq!(no.status.code(), Some(1));
    assert!(stdout(&no).starts_with("answer no"));
    let yes = fvsk(&["decide", "--graph", &gr, "--cwe", &cwe, "--size", "1"], &[]);
    assert_eq!(yes.status.code(), Some(0));
    assert!(stdout(&yes).starts_with("answer yes"));
}

#[test]
fn same_seed_same_output() {
    let d = scratch("seed");
    let (e, g) = random_expr_with(3, 9, 41, Shape::Linear);
    let (gr, cwe) = (d.join("g.gr"), d.join("g.cwe"));
    std::fs::write(&gr, write_graph(&g)).unwrap();
    std::fs::write(&cwe, write_clique_expr(&e)).unwrap();
    let run = |seed: &str| {
        let o = fvsk(
            &["decide", "--graph", gr.to_str().unwrap(), "--cwe", cwe.to_str().unwrap(), "--size", "3", "--seed", seed],
            &[],
        );
        (o.status.code(), stdout(&o))
    };
    assert_eq!(run("7"), run("7"));
}

#[test]
fn conv_selftest() {
    let o = fvsk(&["conv", "selftest", "--k", "2", "--trials", "5"], &[]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("OK"));
}

#[test]
fn input_errors_exit_2() {
    let d = scratch("bad");
    let bad = d.join("bad.gr");
    std::fs::write(&bad, "p tw 3 1\n1 9\n").unwrap();
    let o = fvsk(&["oracle", "count", "--graph", bad.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    let missing = d.join("missing.gr");
    let o = fvsk(&["oracle", "count", "--graph", missing.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn memory_cap_exit_3() {
    let d = scratch("mem");
    let (gr, cwe) = triangle(&d);
    let o = fvsk(&["count", "--graph", &gr, "--cwe", &cwe], &[("FVSK_MEM_MB", "0")]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn gen_with_witness() {
    let d = scratch("gen");
    let csp = CspInstance { n: 1, q: 1, b: 6, constraints: vec![Constraint { vars: vec![0], tuples: vec![vec![2]] }] };
    let (cf, wf, out) = (d.join("x.csp"), d.join("x.asg"), d.join("out"));
    std::fs::write(&cf, write_csp(&csp)).unwrap();
    std::fs::write(&wf, "2\n").unwrap();
    let o = fvsk(
        &[
            "gen",
            "--csp",
            cf.to_str().unwrap(),
            "--mode",
            "fvs",
            "--out",
            out.to_str().unwrap(),
            "--witness",
            wf.to_str().unwrap(),
        ],
        &[],
    );
    let s = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{s}");
    assert!(s.contains("audit clean") && s.contains("witness_valid yes"), "{s}");
    for f in ["instance.gr", "instance.cwe", "plan.txt", "witness.sol"] {
        assert!(out.join(f).exists(), "{f}");
    }
    let v = fvsk(
        &[
            "oracle",
            "verify",
            "--graph",
            out.join("instance.gr").to_str().unwrap(),
            "--solution",
            out.join("witness.sol").to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    // an assignment violating the constraint is refused
    std::fs::write(&wf, "3\n").unwrap();
    let o = fvsk(
        &[
            "gen",
            "--csp",
            cf.to_str().unwrap(),
            "--mode",
            "fvs",
            "--out",
            out.to_str().unwrap(),
            "--witness",
            wf.to_str().unwrap(),
        ],
        &[],
    );
    assert_ne!(o.status.code(), Some(0));
}
