//! `fvsk`: parity counting, randomized decision, instance generation and
//! brute-force checks from the command line.
//!
//! Exit codes: 0 yes or success, 1 no, 2 usage or input error, 3 resource cap.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fvsk_gadgets::{audit_plan, build_cfvs_instance, build_fvs_instance, witness_from_assignment, Triples};
use fvsk_model::{
    canonical_expr, make_very_nice, parse_clique_expr, parse_csp, parse_graph, parse_td, validate_expr,
    write_clique_expr, write_graph, CliqueExpression, LabeledGraph,
};
use fvsk_oracle::{brute_connected_fvs, brute_fvs_counts, verify_solution, Mode, OracleError};
use fvsk_solver::{count_parities, count_parities_tw, count_parity, count_parity_tw, decide, Options, SolverError};
use fvsk_transforms::conv::{cfvs_union_state, conv_naive, cw_union_state, tw_join_state};
use fvsk_transforms::{conv18, conv3, conv6, GfTable, Layout};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(
    name = "fvsk",
    version,
    about = "Feedback vertex set parities over clique expressions and tree decompositions"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parity of the number of feedback vertex sets per size, over a clique expression.
    Count {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        cwe: PathBuf,
        #[arg(long)]
        size: Option<usize>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Randomized test for a feedback vertex set of the given size. No false positives.
    Decide {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        cwe: PathBuf,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = fvsk_solver::cw::DEFAULT_REPEATS as u64, value_parser = clap::value_parser!(u64).range(1..))]
        repeats: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Parity per size over a tree decomposition.
    CountTw {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        td: PathBuf,
        #[arg(long)]
        size: Option<usize>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Brute force by subset enumeration.
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
    /// Generate a lower-bound instance from a CSP.
    Gen {
        #[arg(long)]
        csp: PathBuf,
        #[arg(long, value_enum)]
        mode: GenMode,
        #[arg(long)]
        out: PathBuf,
        /// Assignment file (values 1..B); writes and checks a witness.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Use the transition triples exactly as published (rows 14 and 15 equal).
        #[arg(long)]
        published_triples: bool,
    },
    /// Clique expression utilities.
    Expr {
        #[command(subcommand)]
        cmd: ExprCmd,
    },
    /// Convolutions against the naive double loop.
    Conv {
        #[command(subcommand)]
        cmd: ConvCmd,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Exact counts per size (optionally only size t).
    Count {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        size: Option<usize>,
    },
    /// Connected feedback vertex set of size at most t.
    Cfvs {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        size: usize,
    },
    /// Checks a solution file (1-based vertex ids).
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        solution: PathBuf,
        #[arg(long)]
        connected: bool,
    },
}

#[derive(Subcommand)]
enum ExprCmd {
    /// Structural report; with --graph also compares the evaluation.
    Check {
        #[arg(long)]
        cwe: PathBuf,
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// The canonical linear (n+1)-expression of a graph, on stdout.
    Canonical {
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Subcommand)]
enum ConvCmd {
    Selftest {
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenMode {
    Fvs,
    Cfvs,
}

enum Fail {
    Usage(String),
    Resource(String),
}

impl From<SolverError> for Fail {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::MemoryCap { .. } | SolverError::LimitExceeded { .. } => Fail::Resource(e.to_string()),
            SolverError::Invalid(_) => Fail::Usage(e.to_string()),
        }
    }
}

impl From<OracleError> for Fail {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::TooLarge { .. } => Fail::Resource(e.to_string()),
            _ => Fail::Usage(e.to_string()),
        }
    }
}

macro_rules! usage {
    ($($t:tt)*) => { Fail::Usage(format!($($t)*)) };
}

type Out = Result<(String, u8), Fail>;

fn read(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| usage!("{}: {e}", path.display()))
}

fn load_graph(path: &Path) -> Result<LabeledGraph, Fail> {
    parse_graph(&read(path)?).map_err(|e| usage!("{}: {e}", path.display()))
}

fn load_expr(path: &Path, g: &LabeledGraph) -> Result<CliqueExpression, Fail> {
    let e = parse_clique_expr(&read(path)?).map_err(|e| usage!("{}: {e}", path.display()))?;
    let h = e.eval();
    if h.n != g.n || h.canonical().edges != g.canonical().edges {
        return Err(usage!("{} does not evaluate to the graph", path.display()));
    }
    Ok(e)
}

fn ids(path: &Path, n: usize) -> Result<Vec<usize>, Fail> {
    let text = read(path)?;
    let mut out = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('c')) {
        for tok in line.split_whitespace() {
            let v: usize = tok.parse().map_err(|_| usage!("{}: bad vertex id '{tok}'", path.display()))?;
            if v == 0 || v > n {
                return Err(usage!("{}: vertex {v} out of range 1..{n}", path.display()));
            }
            out.push(v - 1);
        }
    }
    Ok(out)
}

fn parity_lines(parities: &[u8], size: Option<usize>) -> String {
    match size {
        Some(t) => format!("parity {}\n", parities.get(t).copied().unwrap_or(0)),
        None => parities.iter().enumerate().map(|(t, p)| format!("size {t} parity {p}\n")).collect(),
    }
}

fn random_table(rng: &mut ChaCha8Rng, layout: Layout) -> GfTable {
    GfTable::from_words(layout, (0..layout.words).map(|_| rng.gen()).collect())
}

fn run(cli: Cli) -> Out {
    match cli.cmd {
        Cmd::Count { graph, cwe, size, threads } => {
            let g = load_graph(&graph)?;
            let e = load_expr(&cwe, &g)?;
            let opts = Options { threads, mem_mb: None };
            let par = match size {
                Some(t) => {
                    let mut v = vec![0; t + 1];
                    v[t] = count_parity(&e, t, opts)?;
                    v
                }
                None => count_parities(&e, opts)?,
            };
            Ok((parity_lines(&par, size), 0))
        }
        Cmd::Decide { graph, cwe, size, seed, repeats, threads } => {
            let g = load_graph(&graph)?;
            let e = load_expr(&cwe, &g)?;
            let r = decide(&e, size, repeats as usize, seed, Options { threads, mem_mb: None })?;
            let mut s = format!("answer {}\ntrials {}\n", if r.accepted { "yes" } else { "no" }, r.trials);
            if let Some((trial, w)) = r.witness {
                writeln!(s, "accepting_trial {trial}\nforest_weight {w}").unwrap();
            }
            Ok((s, if r.accepted { 0 } else { 1 }))
        }
        Cmd::CountTw { graph, td, size, threads } => {
            let g = load_graph(&graph)?;
            let d = parse_td(&read(&td)?).map_err(|e| usage!("{}: {e}", td.display()))?;
            d.validate(&g).map_err(|e| usage!("{}: {e}", td.display()))?;
            let vnd = make_very_nice(&d, &g).map_err(|e| usage!("{e}"))?;
            let opts = Options { threads, mem_mb: None };
            let par = match size {
                Some(t) => {
                    let mut v = vec![0; t + 1];
                    v[t] = count_parity_tw(&vnd, t, opts)?;
                    v
                }
                None => count_parities_tw(&vnd, opts)?,
            };
            Ok((parity_lines(&par, size), 0))
        }
        Cmd::Oracle { cmd } => match cmd {
            OracleCmd::Count { graph, size } => {
                let g = load_graph(&graph)?;
                let c = brute_fvs_counts(&g, None)?;
                let sizes: Vec<usize> = match size {
                    Some(t) => vec![t],
                    None => (0..=g.n).collect(),
                };
                Ok((
                    sizes.iter().map(|&t| format!("size {t} count {} parity {}\n", c.count(t), c.parity(t))).collect(),
                    0,
                ))
            }
            OracleCmd::Cfvs { graph, size } => {
                let g = load_graph(&graph)?;
                match brute_connected_fvs(&g, size)? {
                    Some(s) => {
                        let list: Vec<String> = s.iter().map(|v| (v + 1).to_string()).collect();
                        Ok((format!("answer yes\nsolution {}\n", list.join(" ")), 0))
                    }
                    None => Ok(("answer no\n".into(), 1)),
                }
            }
            OracleCmd::Verify { graph, solution, connected } => {
                let g = load_graph(&graph)?;
                let s = ids(&solution, g.n)?;
                let ok = verify_solution(&g, &s, if connected { Mode::ConnectedFvs } else { Mode::Fvs });
                Ok((format!("size {}\nvalid {}\n", s.len(), if ok { "yes" } else { "no" }), if ok { 0 } else { 1 }))
            }
        },
        Cmd::Gen { csp, mode, out, witness, published_triples } => {
            let c = parse_csp(&read(&csp)?).map_err(|e| usage!("{}: {e}", csp.display()))?;
            let plan = match mode {
                GenMode::Fvs => build_fvs_instance(&c),
                GenMode::Cfvs => {
                    build_cfvs_instance(&c, if published_triples { Triples::Published } else { Triples::Corrected })
                }
            }
            .map_err(|e| usage!("{e}"))?;
            let rep = audit_plan(&plan);
            std::fs::create_dir_all(&out).map_err(|e| usage!("{}: {e}", out.display()))?;
            let write = |name: &str, body: String| {
                std::fs::write(out.join(name), body).map_err(|e| usage!("{}: {e}", out.join(name).display()))
            };
            write("instance.gr", write_graph(&plan.graph))?;
            write("instance.cwe", write_clique_expr(&plan.expr))?;
            write("plan.txt", plan.sidecar())?;
            let mut s = format!(
                "vertices {}\nedges {}\nbudget {}\nwidth {}\nk0 {}\ncolumns {}\naudit {}\n",
                plan.graph.n,
                plan.graph.m(),
                plan.budget,
                plan.expr.width,
                plan.k0,
                plan.columns(),
                if rep.is_clean() { "clean" } else { "violations" }
            );
            for v in &rep.violations {
                writeln!(s, "violation {v}").unwrap();
            }
            for v in &rep.notes {
                writeln!(s, "note {v}").unwrap();
            }
            let mut code = if rep.is_clean() { 0 } else { 1 };
            if let Some(w) = witness {
                let text = read(&w)?;
                let a: Vec<u32> = text
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| usage!("{}: bad value '{t}'", w.display())))
                    .collect::<Result<_, _>>()?;
                let sol = witness_from_assignment(&plan, &a).map_err(|e| usage!("{e}"))?;
                let m = match mode {
                    GenMode::Fvs => Mode::Fvs,
                    GenMode::Cfvs => Mode::ConnectedFvs,
                };
                let ok = verify_solution(&plan.graph, &sol, m);
                let body: Vec<String> = sol.iter().map(|v| (v + 1).to_string()).collect();
                write("witness.sol", body.join("\n") + "\n")?;
                writeln!(s, "witness_size {}\nwitness_valid {}", sol.len(), if ok { "yes" } else { "no" }).unwrap();
                if !ok || sol.len() != plan.budget {
                    code = 1;
                }
            }
            Ok((s, code))
        }
        Cmd::Expr { cmd } => match cmd {
            ExprCmd::Check { cwe, graph } => {
                let e = parse_clique_expr(&read(&cwe)?).map_err(|e| usage!("{}: {e}", cwe.display()))?;
                let r = validate_expr(&e);
                let mut s = format!(
                    "width {}\nwidth_used {}\nnodes {}\nvertices {}\nlinear {}\nirredundant {}\n",
                    r.width, r.width_used, r.nodes, r.vertices, r.linear, r.irredundant
                );
                let mut ok = r.violations.is_empty();
                for v in &r.violations {
                    writeln!(s, "violation {v}").unwrap();
                }
                if let Some(gp) = graph {
                    let g = load_graph(&gp)?;
                    let same = ok && load_expr(&cwe, &g).is_ok();
                    writeln!(s, "matches_graph {same}").unwrap();
                    ok &= same;
                }
                writeln!(s, "valid {ok}").unwrap();
                Ok((s, if ok { 0 } else { 1 }))
            }
            ExprCmd::Canonical { graph } => {
                let g = load_graph(&graph)?;
                let e = canonical_expr(&g, 1).map_err(|e| usage!("{e}"))?;
                Ok((write_clique_expr(&e), 0))
            }
        },
        Cmd::Conv { cmd: ConvCmd::Selftest { k, trials, seed } } => {
            if k == 0 || k > 8 {
                return Err(usage!("--k must be in 1..=8"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut s = String::new();
            let mut total = 0;
            type Fast = fn(&GfTable, &GfTable) -> GfTable;
            let suites: [(&str, usize, Fast, fn(u8, u8) -> Option<u8>); 3] = [
                ("conv6", 6, conv6, |a, b| Some(cw_union_state(a, b))),
                ("conv3", 3, conv3, tw_join_state),
                ("conv18", 18, conv18, |a, b| Some(cfvs_union_state(a, b))),
            ];
            for (name, base, fast, op) in suites {
                // conv18 tables grow as 18^k; keep the naive loop tractable
                let kk = if base == 18 { k.min(2) } else { k };
                let layout = Layout::new(base, kk);
                let mut bad = 0;
                for _ in 0..trials {
                    let (a, b) = (random_table(&mut rng, layout), random_table(&mut rng, layout));
                    if fast(&a, &b) != conv_naive(&a, &b, op) {
                        bad += 1;
                    }
                }
                total += bad;
                writeln!(s, "{name} k {kk} trials {trials} mismatches {bad}").unwrap();
            }
            s.push_str(if total == 0 { "OK\n" } else { "FAIL\n" });
            Ok((s, if total == 0 { 0 } else { 1 }))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Fail::Resource(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
