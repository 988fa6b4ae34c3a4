//! Lower-bound instance generators: q-CSP over `[6]` to feedback vertex set
//! and q-CSP over `[18]` to connected feedback vertex set, each with a
//! linear clique expression, a budget and a witness builder.

mod audit;
mod build;
pub mod transitions;

use std::fmt::Write as _;

use fvsk_model::{CliqueExpression, CspInstance, LabeledGraph, ModelError};
use thiserror::Error;

pub use audit::{audit_plan, AuditReport};
pub use build::{build_cfvs_instance, build_fvs_instance, columns};
pub use transitions::Triples;

#[derive(Debug, Error)]
pub enum GadgetError {
    #[error("alphabet must be {want}, got {got}")]
    Alphabet { want: u32, got: u32 },
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error("assignment does not satisfy the instance")]
    Unsatisfying,
    #[error(transparent)]
    Model(#[from] ModelError),
}

pub type Result<T> = std::result::Result<T, GadgetError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Fvs,
    Cfvs,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Fvs => "fvs",
            Mode::Cfvs => "cfvs",
        }
    }
}

/// Vertices of one cycle (`v, u, w`) or structure (`v, v', u, u'`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    V,
    U,
    W,
    VPrime,
    UPrime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Root,
    ConnRoot,
    Guard(u8),
    /// Private triangle vertex of a guard or of `r_C`.
    Private,
    /// Clique vertex `x_{o+1}`.
    Clique(usize),
    /// Vertex of cycle or structure `i+1`.
    Part(usize, Part),
    /// Constraint vertex `z_{l+1}`.
    Constraint(usize),
    Deletion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexInfo {
    pub seq: Option<usize>,
    pub col: Option<usize>,
    pub role: Role,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompKind {
    Cycle,
    Structure,
    Clique,
    Constraint,
    Guard,
    ConnRoot,
}

impl CompKind {
    pub fn name(self) -> &'static str {
        match self {
            CompKind::Cycle => "cycle",
            CompKind::Structure => "structure",
            CompKind::Clique => "clique",
            CompKind::Constraint => "constraint",
            CompKind::Guard => "guard",
            CompKind::ConnRoot => "connroot",
        }
    }
}

/// A block of the budget family with its lower bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub kind: CompKind,
    pub lambda: usize,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathGadget {
    pub seq: usize,
    pub col: usize,
    pub clique: Vec<usize>,
    /// Per cycle `[v, u, w]`, per structure `[v, v', u, u']`.
    pub parts: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct GadgetPlan {
    pub mode: Mode,
    pub csp: CspInstance,
    pub graph: LabeledGraph,
    pub expr: CliqueExpression,
    pub budget: usize,
    pub components: Vec<Component>,
    pub info: Vec<VertexInfo>,
    /// `gadgets[seq][col]`.
    pub gadgets: Vec<Vec<PathGadget>>,
    /// Expression width minus `n`.
    pub k0: i64,
    pub triples: Triples,
    /// 1-based constraints with no allowed tuple.
    pub empty_constraints: Vec<usize>,
}

impl GadgetPlan {
    pub fn columns(&self) -> usize {
        self.gadgets.first().map_or(0, Vec::len)
    }

    /// Sidecar lines; vertex ids are 1-based like the graph file.
    pub fn sidecar(&self) -> String {
        let mut s = String::new();
        writeln!(s, "budget {}", self.budget).unwrap();
        writeln!(s, "width {}", self.expr.width).unwrap();
        writeln!(s, "mode {}", self.mode.name()).unwrap();
        writeln!(s, "k0 {}", self.k0).unwrap();
        for c in &self.components {
            write!(s, "comp {} {}", c.kind.name(), c.lambda).unwrap();
            for v in &c.vertices {
                write!(s, " {}", v + 1).unwrap();
            }
            s.push('\n');
        }
        s
    }
}

/// The solution read off a satisfying assignment (values `1..=B`).
pub fn witness_from_assignment(plan: &GadgetPlan, assignment: &[u32]) -> Result<Vec<usize>> {
    if !plan.csp.satisfied_by(assignment) {
        return Err(GadgetError::Unsatisfying);
    }
    let mut sol = Vec::with_capacity(plan.budget);
    for (v, info) in plan.info.iter().enumerate() {
        match (plan.mode, info.role) {
            (Mode::Fvs, Role::Guard(_)) | (Mode::Cfvs, Role::ConnRoot) => sol.push(v),
            _ => {}
        }
    }
    for col in 0..plan.columns() {
        let c = &plan.csp.constraints[col % plan.csp.m()];
        let local: Vec<u32> = c.vars.iter().map(|&x| assignment[x]).collect();
        let keep = c.tuples.iter().position(|t| *t == local).expect("satisfied constraint has a matching tuple");
        for (v, info) in plan.info.iter().enumerate() {
            if info.col == Some(col) && matches!(info.role, Role::Constraint(l) if l != keep) {
                sol.push(v);
            }
        }
    }
    for seq in &plan.gadgets {
        for g in seq {
            let y = assignment[g.seq] as usize;
            sol.extend(g.clique.iter().enumerate().filter(|&(o, _)| o + 1 != y).map(|(_, &x)| x));
            match plan.mode {
                Mode::Fvs => {
                    for (i, p) in g.parts.iter().enumerate() {
                        sol.push(match transitions::T[y - 1][i] {
                            transitions::Simple::Empty => p[0],
                            transitions::Simple::Disc => p[1],
                            transitions::Simple::Conn => p[2],
                        });
                    }
                }
                Mode::Cfvs => {
                    let tc = plan.triples.tc(y);
                    for (i, p) in g.parts.iter().enumerate() {
                        sol.push(if tc[i].takes_v() { p[0] } else { p[1] });
                        sol.push(if tc[i].takes_u() { p[2] } else { p[3] });
                    }
                }
            }
        }
    }
    sol.sort_unstable();
    Ok(sol)
}
