//! Exact solver for the localization game on small connected graphs.

mod belief;
mod localization;
mod metric;
mod robber;

use thiserror::Error;

use crate::graph::GraphError;

pub use belief::{belief_step, partition_by_signature, Arena, ProbeSet, Signature, SignatureClass};
pub use localization::{
    cop_wins, cop_wins_in, localization_number, solve, CopWins, SolveResult, StrategyEntry, WinTable,
};
pub use metric::{is_resolving, metric_dimension};
pub use robber::{AdversarialRobber, RobberChoice};

pub const DEFAULT_MAX_STATES: usize = 1 << 22;
pub const DEFAULT_MAX_PARTITIONS: u64 = 1_000_000_000;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("budget exhausted: more than {limit} {resource}")]
    Budget { resource: &'static str, limit: u64 },
    #[error("belief is empty")]
    EmptyBelief,
    #[error("belief {0:?} is not a subset of the vertex set")]
    InvalidBelief(Vec<usize>),
    #[error("invalid probe: {0}")]
    InvalidProbe(String),
    #[error("robber already located")]
    RobberLocated,
    #[error("k must be at least 1, got {0}")]
    InvalidK(usize),
}

/// Resource limits for belief-space searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_states: usize,
    pub max_partitions: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_states: DEFAULT_MAX_STATES, max_partitions: DEFAULT_MAX_PARTITIONS }
    }
}

impl Budget {
    pub fn with_max_states(max_states: usize) -> Self {
        Budget { max_states, ..Budget::default() }
    }
}
