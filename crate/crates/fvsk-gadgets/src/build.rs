//! Graph construction for both modes. Vertex ids follow creation order:
//! global vertices, then column by column the constraint gadget followed by
//! the path gadgets in sequence order. A deletion vertex is created right
//! after the later of its two endpoints.

use std::collections::BTreeSet;

use fvsk_model::{linear_expr_in_order, CspInstance, LabeledGraph};

use crate::transitions::{Simple, Triples, T};
use crate::{CompKind, Component, GadgetError, GadgetPlan, Mode, Part, PathGadget, Result, Role, VertexInfo};

struct Builder {
    g: LabeledGraph,
    info: Vec<VertexInfo>,
    comps: Vec<Component>,
}

impl Builder {
    fn vertex(&mut self, seq: Option<usize>, col: Option<usize>, role: Role) -> usize {
        self.info.push(VertexInfo { seq, col, role });
        self.g.add_vertex(1)
    }

    fn edge(&mut self, u: usize, v: usize) {
        self.g.add_edge(u, v);
    }

    /// Edge `uv` plus a vertex adjacent to `u` and `v` only.
    fn deletion(&mut self, u: usize, v: usize) -> usize {
        let (seq, col) = (self.info[u.max(v)].seq, self.info[u.max(v)].col);
        self.edge(u, v);
        let w = self.vertex(seq, col, Role::Deletion);
        self.edge(u, w);
        self.edge(v, w);
        w
    }

    /// Vertices pairwise joined by deletion edges; returns the deletion vertices.
    fn deletion_clique(&mut self, vs: &[usize]) -> Vec<usize> {
        let mut out = Vec::new();
        for (a, &u) in vs.iter().enumerate() {
            for &v in &vs[..a] {
                out.push(self.deletion(v, u));
            }
        }
        out
    }

    /// `x` plus a private triangle through it, as a component with λ = 1.
    fn triangle_at(&mut self, x: usize, kind: CompKind) {
        let a = self.vertex(None, None, Role::Private);
        let b = self.vertex(None, None, Role::Private);
        self.edge(x, a);
        self.edge(x, b);
        self.edge(a, b);
        self.comps.push(Component { kind, lambda: 1, vertices: vec![x, a, b] });
    }
}

fn check_csp(csp: &CspInstance, b: u32) -> Result<Vec<usize>> {
    csp.validate()?;
    if csp.b != b {
        return Err(GadgetError::Alphabet { want: b, got: csp.b });
    }
    if csp.n == 0 || csp.m() == 0 || csp.q == 0 {
        return Err(GadgetError::Invalid("need n, m, q >= 1".into()));
    }
    Ok(csp.constraints.iter().enumerate().filter(|(_, c)| c.tuples.is_empty()).map(|(i, _)| i + 1).collect())
}

struct Column {
    z: Vec<usize>,
}

/// Constraint gadget of column `col` (0-based), serving constraint `col mod m`.
fn constraint_gadget(bld: &mut Builder, csp: &CspInstance, col: usize, r_c: Option<usize>) -> Column {
    let h = col % csp.m();
    let k = csp.constraints[h].tuples.len();
    let z: Vec<usize> = (0..k).map(|l| bld.vertex(None, Some(col), Role::Constraint(l))).collect();
    let dels = bld.deletion_clique(&z);
    if let Some(rc) = r_c {
        for &x in &z {
            bld.edge(rc, x);
        }
    }
    bld.comps.push(Component {
        kind: CompKind::Constraint,
        lambda: k.saturating_sub(1),
        vertices: z.iter().chain(&dels).copied().collect(),
    });
    Column { z }
}

/// Deletion edges between the constraint gadget and the clique of the path
/// gadget of sequence `seq`.
fn wire_constraint(bld: &mut Builder, csp: &CspInstance, col: usize, column: &Column, seq: usize, clique: &[usize]) {
    let c = &csp.constraints[col % csp.m()];
    let mut pairs = BTreeSet::new();
    for (l, tuple) in c.tuples.iter().enumerate() {
        for (p, &var) in c.vars.iter().enumerate() {
            if var == seq {
                for y in 1..=csp.b {
                    if y != tuple[p] {
                        pairs.insert((l, y as usize - 1));
                    }
                }
            }
        }
    }
    for (l, y) in pairs {
        bld.deletion(column.z[l], clique[y]);
    }
}

fn finish(
    bld: Builder,
    csp: &CspInstance,
    mode: Mode,
    triples: Triples,
    gadgets: Vec<Vec<PathGadget>>,
    flagged: Vec<usize>,
) -> Result<GadgetPlan> {
    let expr = linear_expr_in_order(&bld.g)?;
    let budget = bld.comps.iter().map(|c| c.lambda).sum();
    let k0 = expr.width as i64 - csp.n as i64;
    Ok(GadgetPlan {
        mode,
        csp: csp.clone(),
        graph: bld.g,
        expr,
        budget,
        components: bld.comps,
        info: bld.info,
        gadgets,
        k0,
        triples,
        empty_constraints: flagged,
    })
}

pub fn columns(mode: Mode, n: usize, m: usize) -> usize {
    match mode {
        Mode::Fvs => (5 * n + 1) * m,
        Mode::Cfvs => (17 * n + 1) * m,
    }
}

/// q-CSP over `[6]` to FVS.
pub fn build_fvs_instance(csp: &CspInstance) -> Result<GadgetPlan> {
    let flagged = check_csp(csp, 6)?;
    let (n, c) = (csp.n, columns(Mode::Fvs, csp.n, csp.m()));
    let mut bld = Builder { g: LabeledGraph::new(0), info: Vec::new(), comps: Vec::new() };
    let r = bld.vertex(None, None, Role::Root);
    let g1 = bld.vertex(None, None, Role::Guard(1));
    bld.triangle_at(g1, CompKind::Guard);
    let g2 = bld.vertex(None, None, Role::Guard(2));
    bld.triangle_at(g2, CompKind::Guard);

    let mut gadgets: Vec<Vec<PathGadget>> = vec![Vec::with_capacity(c); n];
    for col in 0..c {
        let column = constraint_gadget(&mut bld, csp, col, None);
        for seq in 0..n {
            let (s, j) = (Some(seq), Some(col));
            let clique: Vec<usize> = (0..6).map(|o| bld.vertex(s, j, Role::Clique(o))).collect();
            for &x in &clique {
                bld.edge(r, x);
            }
            let dels = bld.deletion_clique(&clique);
            bld.comps.push(Component {
                kind: CompKind::Clique,
                lambda: 5,
                vertices: clique.iter().chain(&dels).copied().collect(),
            });
            let mut parts = Vec::with_capacity(4);
            for i in 0..4 {
                let v = bld.vertex(s, j, Role::Part(i, Part::V));
                let u = bld.vertex(s, j, Role::Part(i, Part::U));
                let w = bld.vertex(s, j, Role::Part(i, Part::W));
                bld.edge(v, u);
                bld.edge(u, w);
                bld.edge(w, v);
                bld.edge(u, r);
                bld.comps.push(Component { kind: CompKind::Cycle, lambda: 1, vertices: vec![v, u, w] });
                parts.push(vec![v, u, w]);
            }
            for (o, &x) in clique.iter().enumerate() {
                for i in 0..4 {
                    let target = match T[o][i] {
                        Simple::Empty => parts[i][0],
                        Simple::Disc => parts[i][1],
                        Simple::Conn => parts[i][2],
                    };
                    bld.deletion(x, target);
                }
            }
            wire_constraint(&mut bld, csp, col, &column, seq, &clique);
            let entries = [parts[0][0], parts[1][0]];
            match col {
                0 => entries.iter().for_each(|&e| bld.edge(g1, e)),
                _ => {
                    let prev = &gadgets[seq][col - 1].parts;
                    for x in [prev[2][0], prev[3][0]] {
                        for &e in &entries {
                            bld.edge(x, e);
                        }
                    }
                }
            }
            if col + 1 == c {
                bld.edge(g2, parts[2][0]);
                bld.edge(g2, parts[3][0]);
            }
            gadgets[seq].push(PathGadget { seq, col, clique, parts });
        }
    }
    finish(bld, csp, Mode::Fvs, Triples::default(), gadgets, flagged)
}

/// q-CSP over `[18]` to connected FVS.
pub fn build_cfvs_instance(csp: &CspInstance, triples: Triples) -> Result<GadgetPlan> {
    let flagged = check_csp(csp, 18)?;
    let (n, c) = (csp.n, columns(Mode::Cfvs, csp.n, csp.m()));
    let mut bld = Builder { g: LabeledGraph::new(0), info: Vec::new(), comps: Vec::new() };
    let r = bld.vertex(None, None, Role::Root);
    let rc = bld.vertex(None, None, Role::ConnRoot);
    bld.triangle_at(rc, CompKind::ConnRoot);

    let mut gadgets: Vec<Vec<PathGadget>> = vec![Vec::with_capacity(c); n];
    for col in 0..c {
        let column = constraint_gadget(&mut bld, csp, col, Some(rc));
        for seq in 0..n {
            let (s, j) = (Some(seq), Some(col));
            let clique: Vec<usize> = (0..18).map(|o| bld.vertex(s, j, Role::Clique(o))).collect();
            for &x in &clique {
                bld.edge(r, x);
                bld.edge(rc, x);
            }
            let dels = bld.deletion_clique(&clique);
            bld.comps.push(Component {
                kind: CompKind::Clique,
                lambda: 17,
                vertices: clique.iter().chain(&dels).copied().collect(),
            });
            let mut parts = Vec::with_capacity(6);
            for i in 0..6 {
                let v = bld.vertex(s, j, Role::Part(i, Part::V));
                let vp = bld.vertex(s, j, Role::Part(i, Part::VPrime));
                let u = bld.vertex(s, j, Role::Part(i, Part::U));
                let up = bld.vertex(s, j, Role::Part(i, Part::UPrime));
                for a in [u, up] {
                    for b in [v, vp] {
                        bld.edge(a, b);
                    }
                }
                bld.edge(u, r);
                bld.edge(u, rc);
                bld.edge(vp, rc);
                let d1 = bld.deletion(v, vp);
                let d2 = bld.deletion(u, up);
                bld.comps.push(Component {
                    kind: CompKind::Structure,
                    lambda: 2,
                    vertices: vec![v, vp, u, up, d1, d2],
                });
                parts.push(vec![v, vp, u, up]);
            }
            for (o, &x) in clique.iter().enumerate() {
                let tc = triples.tc(o + 1);
                for i in 0..6 {
                    let p = &parts[i];
                    bld.deletion(x, if tc[i].takes_v() { p[0] } else { p[1] });
                    bld.deletion(x, if tc[i].takes_u() { p[2] } else { p[3] });
                }
            }
            wire_constraint(&mut bld, csp, col, &column, seq, &clique);
            let entries = [parts[0][0], parts[1][0], parts[2][0]];
            match col {
                0 => entries.iter().for_each(|&e| bld.edge(rc, e)),
                _ => {
                    let prev = &gadgets[seq][col - 1].parts;
                    for x in [prev[3][0], prev[4][0], prev[5][0]] {
                        for &e in &entries {
                            bld.edge(x, e);
                        }
                    }
                }
            }
            if col + 1 == c {
                for i in 3..6 {
                    bld.edge(rc, parts[i][0]);
                }
            }
            gadgets[seq].push(PathGadget { seq, col, clique, parts });
        }
    }
    finish(bld, csp, Mode::Cfvs, triples, gadgets, flagged)
}
