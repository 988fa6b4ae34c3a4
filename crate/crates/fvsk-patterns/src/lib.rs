//! Acyclicity patterns.
//!
//! [`cw`] holds the clique-width patterns (multisets of capped label-count
//! vectors) and their six-state encoding; [`reduce`] the reduction to very
//! nice families; [`tw`] the treewidth patterns (partitions of a label set)
//! with their three-state encoding. [`tables`] precomputes the two-coordinate
//! transitions the solvers scatter through.

pub mod cw;
pub mod reduce;
pub mod tables;
pub mod tw;
mod uf;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("invalid pattern: {0}")]
    Invalid(String),
    #[error("pattern is not nice: {0}")]
    NotNice(String),
    #[error("pattern is not very nice: {0}")]
    NotVeryNice(String),
    #[error("graph is not a forest")]
    Cyclic,
    #[error("expected exactly one vertex labeled 0, found {0}")]
    ZeroVertex(usize),
    #[error("label {label} exceeds width {k}")]
    LabelRange { label: u32, k: usize },
}

pub type Result<T> = std::result::Result<T, PatternError>;

pub use cw::{
    acyc, canonical_forest, decode_state, encode_state, join_pattern, pack_state, pattern_of_forest, relabel_pattern,
    two_sum, union_pattern, unpack_state, AcyclicityPattern, CapVector,
};
pub use reduce::{clean_pattern, red_index, rednice, reduce, reduce_patterns, toggle};
pub use tables::{cw_join_table, cw_relabel_state, cw_union_state, join_states, tw_edge_table, CwJoinTable};
pub use tw::{
    tw_add_label, tw_decode, tw_encode, tw_glue_compatible, tw_join, tw_pack, tw_patadd, tw_redind, tw_reduce,
    tw_reduce_patterns, tw_remove_label, tw_unpack, TwPattern,
};
