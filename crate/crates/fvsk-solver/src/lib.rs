//! Dynamic programs over GF(2) for counting feedback vertex sets modulo 2.
//!
//! [`cw`] runs over clique expressions with six states per label and
//! decides by isolation; [`tw`] runs over very nice tree decompositions with
//! three states per label; [`unreduced`] is the reference DP over all
//! patterns for tiny instances.

pub mod cw;
mod par;
pub mod tw;
pub mod unreduced;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("estimated {need_mb} MB exceeds the memory cap of {cap_mb} MB (set FVSK_MEM_MB to raise it)")]
    MemoryCap { need_mb: u64, cap_mb: u64 },
    #[error("pattern limit {limit} exceeded at node {node}")]
    LimitExceeded { limit: usize, node: usize },
}

impl From<fvsk_model::ModelError> for SolverError {
    fn from(e: fvsk_model::ModelError) -> Self {
        SolverError::Invalid(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, SolverError>;

pub const DEFAULT_MEM_MB: u64 = 3072;

/// Memory cap in MB: `FVSK_MEM_MB` if set and numeric, else the default.
pub fn mem_cap_mb() -> u64 {
    std::env::var("FVSK_MEM_MB").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_MEM_MB)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub threads: usize,
    /// Overrides [`mem_cap_mb`].
    pub mem_mb: Option<u64>,
}

impl Default for Options {
    fn default() -> Self {
        Options { threads: 1, mem_mb: None }
    }
}

impl Options {
    fn check_memory(&self, need_bytes: u128) -> Result<()> {
        let cap_mb = self.mem_mb.unwrap_or_else(mem_cap_mb);
        if need_bytes > (cap_mb as u128) << 20 {
            let need_mb = need_bytes.div_ceil(1 << 20) as u64;
            return Err(SolverError::MemoryCap { need_mb, cap_mb });
        }
        Ok(())
    }
}

/// Bookkeeping from one DP run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DpStats {
    pub nodes: usize,
    /// Longest root-to-leaf path, in nodes.
    pub depth: usize,
    /// Most node results held at once.
    pub peak_live: usize,
}

pub use cw::{count_parities, count_parity, decide, run_dp, weight_parities, CwSlices, DecideReport};
pub use tw::{count_parities_tw, count_parity_tw, run_tw_dp, TwSlices};
pub use unreduced::run_unreduced;
