//! Structural checks on a generated plan.

use std::collections::BTreeSet;

use crate::{columns, GadgetPlan, Mode, Role};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AuditReport {
    pub violations: Vec<String>,
    /// Things worth knowing that do not break the plan.
    pub notes: Vec<String>,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

fn edge_set(edges: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect()
}

pub fn audit_plan(plan: &GadgetPlan) -> AuditReport {
    let mut rep = AuditReport::default();
    let mut bad = |m: String| rep.violations.push(m);
    let g = &plan.graph;
    let (n, m) = (plan.csp.n, plan.csp.m());

    let sum: usize = plan.components.iter().map(|c| c.lambda).sum();
    if sum != plan.budget {
        bad(format!("budget {} but components sum to {sum}", plan.budget));
    }
    let mut seen = vec![false; g.n];
    for (ci, c) in plan.components.iter().enumerate() {
        for &v in &c.vertices {
            if v >= g.n {
                bad(format!("component {ci} names vertex {v} outside the graph"));
            } else if std::mem::replace(&mut seen[v], true) {
                bad(format!("vertex {v} lies in two components"));
            }
        }
    }

    let c = columns(plan.mode, n, m);
    if plan.gadgets.len() != n {
        bad(format!("{} path sequences for {n} variables", plan.gadgets.len()));
    }
    for (s, seq) in plan.gadgets.iter().enumerate() {
        if seq.len() != c {
            bad(format!("sequence {} has {} path gadgets, want {c}", s + 1, seq.len()));
        }
        for (j, pg) in seq.iter().enumerate() {
            if pg.seq != s || pg.col != j {
                bad(format!("gadget at ({}, {}) records ({}, {})", s + 1, j + 1, pg.seq + 1, pg.col + 1));
            }
            for &v in pg.clique.iter().chain(pg.parts.iter().flatten()) {
                if plan.info.get(v).map(|i| (i.seq, i.col)) != Some((Some(s), Some(j))) {
                    bad(format!("vertex {v} of gadget ({}, {}) has wrong coordinates", s + 1, j + 1));
                }
            }
        }
    }
    // constraint gadget orders per column
    let mut order = vec![0usize; c];
    for i in &plan.info {
        if let (Role::Constraint(_), Some(j)) = (i.role, i.col) {
            if j < c {
                order[j] += 1;
            }
        }
    }
    for (j, &k) in order.iter().enumerate() {
        let want = plan.csp.constraints[j % m].tuples.len();
        if k != want {
            bad(format!(
                "column {} has a constraint gadget of order {k}, constraint {} has {want} tuples",
                j + 1,
                j % m + 1
            ));
        }
    }

    if plan.info.len() != g.n {
        bad(format!("{} coordinates for {} vertices", plan.info.len(), g.n));
    }
    let deg: Vec<usize> = g.adjacency().iter().map(Vec::len).collect();
    for (v, i) in plan.info.iter().enumerate() {
        if i.role == Role::Deletion && deg.get(v) != Some(&2) {
            bad(format!("deletion vertex {v} has degree {}", deg.get(v).copied().unwrap_or(0)));
        }
    }

    match plan.expr.check() {
        Err(e) => bad(format!("expression: {e}")),
        Ok(()) => {
            let h = plan.expr.eval();
            if h.n != g.n || edge_set(&h.edges) != edge_set(&g.edges) {
                bad("expression does not evaluate to the graph".into());
            }
        }
    }
    if !plan.expr.is_linear() {
        bad("expression is not linear".into());
    }
    if plan.expr.width as i64 - n as i64 != plan.k0 {
        bad(format!("k0 {} but width {} with n = {n}", plan.k0, plan.expr.width));
    }

    if plan.mode == Mode::Cfvs {
        for (a, b) in plan.triples.duplicates() {
            rep.notes.push(format!("transition triples t{a} and t{b} coincide"));
        }
    }
    for &h in &plan.empty_constraints {
        rep.notes.push(format!("constraint {h} allows no tuple; the instance is unsatisfiable"));
    }
    rep
}
