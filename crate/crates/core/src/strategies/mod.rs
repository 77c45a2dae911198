//! Cop strategies and an exhaustive verifier that plays them against every
//! robber line of play.

mod scripted;
mod verify;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet};
use crate::solver::{Arena, ProbeSet, Signature, SolveError, SolveResult};

pub use scripted::{
    bipartite_parity_strategy, complete_bipartite_strategy, path_strategy, pathwidth_strategy, star_strategy,
};
pub use verify::{verify_strategy, TraceStep, Verdict, VerificationReport};

#[derive(Debug, Error)]
pub enum StrategyError {
    #[error("graph is not {0}")]
    WrongFamily(&'static str),
    #[error("path decomposition is not normalized")]
    NotNormalized,
    #[error("strategy has no move for belief {0}")]
    Undefined(VertexSet),
    #[error("observation inconsistent with the history")]
    InconsistentHistory,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// One completed turn as seen by the cops.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observation {
    pub probe: ProbeSet,
    pub signature: Signature,
}

/// Deterministic cop strategy driven by the observation history.
pub trait Strategy: Sync {
    fn name(&self) -> &str;
    /// Most vertices probed in one turn.
    fn k(&self) -> usize;
    /// Claimed worst-case number of turns, if the strategy makes a claim.
    fn turn_bound(&self) -> Option<usize>;
    fn next_probe(&self, history: &[Observation]) -> Result<ProbeSet, StrategyError>;
    /// Internal state summary: two histories with the same current belief and
    /// the same phase must lead to identical future play. `None` disables
    /// cycle detection.
    fn phase(&self, history: &[Observation]) -> Option<u64>;
}

/// Non-adaptive strategy: a fixed sequence of probes, either repeated
/// cyclically or ending on its last probe forever.
#[derive(Debug, Clone)]
pub struct ScheduledStrategy {
    name: String,
    probes: Vec<ProbeSet>,
    cyclic: bool,
    bound: Option<usize>,
}

impl ScheduledStrategy {
    pub fn new(name: impl Into<String>, probes: Vec<ProbeSet>, cyclic: bool, bound: Option<usize>) -> Self {
        assert!(!probes.is_empty(), "a schedule needs at least one probe");
        ScheduledStrategy { name: name.into(), probes, cyclic, bound }
    }

    /// Probes the same set every turn.
    pub fn fixed(probe: ProbeSet) -> Self {
        ScheduledStrategy::new(format!("fixed{:?}", probe.vertices()), vec![probe], true, None)
    }

    pub fn probes(&self) -> &[ProbeSet] {
        &self.probes
    }

    /// Keeps only the `k` lowest vertices of every probe; the turn claim is dropped.
    pub fn truncated(&self, k: usize) -> Self {
        assert!(k >= 1);
        let probes =
            self.probes.iter().map(|p| ProbeSet::new(p.vertices()[..p.len().min(k)].to_vec()).unwrap()).collect();
        ScheduledStrategy { name: format!("{}-k{k}", self.name), probes, cyclic: self.cyclic, bound: None }
    }

    fn index(&self, turn: usize) -> usize {
        if self.cyclic {
            turn % self.probes.len()
        } else {
            turn.min(self.probes.len() - 1)
        }
    }
}

impl Strategy for ScheduledStrategy {
    fn name(&self) -> &str {
        &self.name
    }

    fn k(&self) -> usize {
        self.probes.iter().map(ProbeSet::len).max().unwrap()
    }

    fn turn_bound(&self) -> Option<usize> {
        self.bound
    }

    fn next_probe(&self, history: &[Observation]) -> Result<ProbeSet, StrategyError> {
        Ok(self.probes[self.index(history.len())].clone())
    }

    fn phase(&self, history: &[Observation]) -> Option<u64> {
        Some(self.index(history.len()) as u64)
    }
}

/// Positional strategy read off a solver result; the belief is rebuilt from
/// the history each turn.
pub struct SolvedStrategy {
    arena: Arena,
    k: usize,
    turns: usize,
    table: HashMap<VertexSet, ProbeSet>,
}

impl SolvedStrategy {
    pub fn new(g: &Graph, result: &SolveResult) -> Result<Self, StrategyError> {
        let k = result.zeta.ok_or(StrategyError::Undefined(VertexSet::EMPTY))?;
        let arena = Arena::new(g)?;
        let table = result.strategy.iter().map(|e| (e.belief, e.probe.clone())).collect();
        Ok(SolvedStrategy { arena, k, turns: result.turns, table })
    }

    pub fn belief(&self, history: &[Observation]) -> Result<VertexSet, StrategyError> {
        replay_belief(&self.arena, history)
    }
}

/// Belief after the observed turns, starting from the whole vertex set.
pub fn replay_belief(arena: &Arena, history: &[Observation]) -> Result<VertexSet, StrategyError> {
    let mut belief = arena.full();
    for obs in history {
        let class: VertexSet =
            belief.iter().filter(|&v| arena.signature(v, obs.probe.vertices()) == obs.signature).collect();
        if class.len() < 2 {
            return Err(StrategyError::InconsistentHistory);
        }
        belief = arena.step(class);
    }
    Ok(belief)
}

impl Strategy for SolvedStrategy {
    fn name(&self) -> &str {
        "solved"
    }

    fn k(&self) -> usize {
        self.k
    }

    fn turn_bound(&self) -> Option<usize> {
        Some(self.turns)
    }

    fn next_probe(&self, history: &[Observation]) -> Result<ProbeSet, StrategyError> {
        let belief = self.belief(history)?;
        self.table.get(&belief).cloned().ok_or(StrategyError::Undefined(belief))
    }

    fn phase(&self, _history: &[Observation]) -> Option<u64> {
        Some(0)
    }
}
