//! Graphs, clique expressions, tree decompositions and CSP instances, with
//! their text formats.

pub mod csp;
pub mod error;
pub mod expr;
pub mod graph;
pub mod linear;
pub mod random;
pub mod td;
mod text;
pub mod vnd;

pub use csp::{parse_csp, write_csp, Constraint, CspInstance};
pub use error::{ModelError, Result};
pub use expr::{
    canonical_expr, parse_clique_expr, validate_expr, write_clique_expr, CliqueExpression, ExprNode, ExprReport,
};
pub use graph::{parse_graph, write_graph, LabeledGraph};
pub use linear::linear_expr_in_order;
pub use random::{random_expr, random_expr_with, Shape};
pub use td::{greedy_td, parse_td, write_td, TreeDecomposition};
pub use text::MAX_COUNT;
pub use vnd::{assign_labels, make_very_nice, VeryNiceDecomposition, VnKind, VnNode};
