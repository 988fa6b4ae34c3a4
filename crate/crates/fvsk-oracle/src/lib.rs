//! Deliberately simple exhaustive answers used to check the solvers and the
//! gadget generators.

pub mod acyclic;
pub mod brute;
pub mod csp;
pub mod extension;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{what}: size {size} exceeds the enumeration cap {cap}")]
    TooLarge { what: &'static str, size: u64, cap: u64 },
    #[error("invalid clique extension: {0}")]
    InvalidExtension(String),
    #[error("not a partial solution: {0}")]
    NotPartialSolution(String),
}

pub type Result<T> = std::result::Result<T, OracleError>;

pub use acyclic::{is_forest_dfs, is_forest_uf};
pub use brute::{
    brute_connected_fvs, brute_fvs_counts, brute_fvs_counts_threads, verify_solution, FvsCounts, Mode, MAX_BRUTE_N,
};
pub use csp::{all_satisfying, brute_csp_sat, MAX_CSP_SPACE};
pub use extension::{extension_compatible, random_extension, CliqueExtension, ExtNode, Plugged};
