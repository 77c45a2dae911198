//! Blind cops and bush cutting: one single-player engine for both games,
//! plus the subdivided trees and bicolored matchings used to study them.

mod experiment;
mod tree;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{combinations, generators::add_universal, Graph, GraphError, VertexSet};
use crate::solver::{localization_number, Budget, ProbeSet, SolveError};

pub use experiment::{bush_scaling_experiment, ExperimentRow, RowStatus};
pub use tree::{
    build_t, lemma_bimatching_check, max_bicolored_matching, t_counts, tree_vertex_count, ColoredTree, LemmaCount,
    LemmaOutcome,
};

/// Largest graph the domination brute force accepts.
pub const MAX_DOMINATION_VERTICES: usize = 24;

#[derive(Debug, Error)]
pub enum BushError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("budget exhausted: more than {0} bush states")]
    Budget(usize),
    #[error("input contains a cycle")]
    Cyclic,
    #[error("coloring violates the lemma hypothesis: {0}")]
    Hypothesis(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Result of one cutting turn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BushStep {
    /// Bush left right after the cut.
    pub cleared: VertexSet,
    /// Bush after it spreads to neighbours; empty iff `cleared` is.
    pub regrown: VertexSet,
}

/// Closed neighbourhoods of a graph with at most 64 vertices.
#[derive(Debug, Clone)]
pub struct BushGame {
    closed: Vec<VertexSet>,
}

impl BushGame {
    pub fn new(g: &Graph) -> Result<Self, BushError> {
        Ok(BushGame { closed: g.closed_masks()? })
    }

    pub fn n(&self) -> usize {
        self.closed.len()
    }

    pub fn step(&self, bush: VertexSet, cut: &[usize]) -> BushStep {
        let covered = Graph::closed_neighborhood(&self.closed, cut.iter().copied().collect());
        let cleared = bush - covered;
        BushStep { cleared, regrown: Graph::closed_neighborhood(&self.closed, cleared) }
    }

    /// Applies a schedule from the full bush; returns the bush after each turn.
    pub fn replay(&self, schedule: &CutSchedule) -> Vec<VertexSet> {
        let mut bush = VertexSet::full(self.n());
        schedule
            .moves
            .iter()
            .map(|m| {
                bush = self.step(bush, m.vertices()).regrown;
                bush
            })
            .collect()
    }
}

pub fn bush_step(g: &Graph, bush: VertexSet, cut: &[usize]) -> Result<BushStep, BushError> {
    if let Some(&v) = cut.iter().find(|&&v| v >= g.n()) {
        return Err(GraphError::VertexOutOfRange { vertex: v, n: g.n() }.into());
    }
    Ok(BushGame::new(g)?.step(bush, cut))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutSchedule {
    pub moves: Vec<ProbeSet>,
}

impl CutSchedule {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }
}

/// Fewest cutters that clear the bush, with a shortest schedule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BushResult {
    /// `None` if no `k <= max_k` suffices.
    pub k: Option<usize>,
    pub schedule: Option<CutSchedule>,
    pub states: usize,
}

/// Breadth-first search over bush states reachable from the full bush with
/// `k` cutters. Cutting more vertices never leaves more bush, so only moves
/// of exactly `min(k, n)` vertices are tried, and of the successors of one
/// state only those minimal under inclusion are kept.
pub fn clearing_schedule(g: &Graph, k: usize, budget: &Budget) -> Result<(Option<CutSchedule>, usize), BushError> {
    if k == 0 {
        return Err(SolveError::InvalidK(0).into());
    }
    g.require_connected()?;
    let game = BushGame::new(g)?;
    let n = game.n();
    let moves: Vec<Vec<usize>> = combinations(n, k.min(n)).collect();
    let start = VertexSet::full(n);
    let mut states = vec![start];
    let mut parent: Vec<(u32, u32)> = vec![(u32::MAX, u32::MAX)];
    let mut index: HashMap<VertexSet, u32> = HashMap::from([(start, 0)]);
    let mut head = 0;
    while head < states.len() {
        let s = states[head];
        let mut succ: Vec<(VertexSet, u32)> = Vec::new();
        for (mi, m) in moves.iter().enumerate() {
            let step = game.step(s, m);
            if step.cleared.is_empty() {
                let mut seq = vec![mi as u32];
                let mut cur = head as u32;
                while parent[cur as usize].0 != u32::MAX {
                    let (p, pm) = parent[cur as usize];
                    seq.push(pm);
                    cur = p;
                }
                seq.reverse();
                let moves = seq.into_iter().map(|i| ProbeSet::new(moves[i as usize].clone()).unwrap()).collect();
                return Ok((Some(CutSchedule { moves }), states.len()));
            }
            if !succ.iter().any(|(t, _)| t.is_subset(step.regrown)) {
                succ.retain(|(t, _)| !step.regrown.is_subset(*t));
                succ.push((step.regrown, mi as u32));
            }
        }
        for (t, mi) in succ {
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(t) {
                if states.len() >= budget.max_states {
                    return Err(BushError::Budget(budget.max_states));
                }
                e.insert(states.len() as u32);
                states.push(t);
                parent.push((head as u32, mi));
            }
        }
        head += 1;
    }
    Ok((None, states.len()))
}

/// Smallest `k <= max_k` whose cutters can clear the bush.
pub fn bush_number(g: &Graph, max_k: usize, budget: &Budget) -> Result<BushResult, BushError> {
    let mut total = 0;
    for k in 1..=max_k.min(g.n()) {
        let (schedule, states) = clearing_schedule(g, k, budget)?;
        total += states;
        if schedule.is_some() {
            return Ok(BushResult { k: Some(k), schedule, states: total });
        }
    }
    Ok(BushResult { k: None, schedule: None, states: total })
}

/// Fewest blind cops that catch the robber. A blind cop's belief evolves as
/// `S -> N[S \ N[B]]` and the robber is caught once `S \ N[B]` is empty,
/// which is exactly the bush dynamics, so this runs the same search.
pub fn blind_localization_number(g: &Graph, max_k: usize, budget: &Budget) -> Result<Option<usize>, BushError> {
    Ok(bush_number(g, max_k, budget)?.k)
}

/// Domination number with the lexicographically least minimum dominating set.
pub fn domination_number(g: &Graph) -> Result<(usize, Vec<usize>), BushError> {
    let n = g.n();
    if n > MAX_DOMINATION_VERTICES {
        return Err(GraphError::SizeLimit { n, limit: MAX_DOMINATION_VERTICES }.into());
    }
    let closed = g.closed_masks()?;
    let full = VertexSet::full(n);
    for size in 1..=n {
        if let Some(d) =
            combinations(n, size).find(|d| Graph::closed_neighborhood(&closed, d.iter().copied().collect()) == full)
        {
            return Ok((size, d));
        }
    }
    Err(GraphError::Empty.into())
}

/// `B(G)`, `zeta_b(G)` and `zeta(G + universal vertex)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub bush: usize,
    pub blind: usize,
    pub zeta_universal: usize,
    pub holds: bool,
}

pub fn check_chain(g: &Graph, budget: &Budget) -> Result<ChainReport, BushError> {
    let n = g.n();
    let bush = bush_number(g, n, budget)?.k.expect("a dominating set always clears");
    let blind = blind_localization_number(g, n, budget)?.expect("a dominating set always catches");
    let gu = add_universal(g);
    let zeta_universal = localization_number(&gu, gu.n(), budget)?.zeta.expect("n probes always win");
    Ok(ChainReport { bush, blind, zeta_universal, holds: bush <= blind && blind <= zeta_universal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;
    use proptest::prelude::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn step_examples() {
        let s = bush_step(&path(3).unwrap(), VertexSet::full(3), &[1]).unwrap();
        assert!(s.cleared.is_empty() && s.regrown.is_empty());
        let s = bush_step(&path(7).unwrap(), set(&[4, 5, 6]), &[5]).unwrap();
        assert!(s.cleared.is_empty());
        let s = bush_step(&cycle(4).unwrap(), VertexSet::full(4), &[0]).unwrap();
        assert_eq!(s.cleared, set(&[2]));
        assert_eq!(s.regrown, set(&[1, 2, 3]));
        assert!(bush_step(&path(3).unwrap(), VertexSet::full(3), &[3]).is_err());
    }

    #[test]
    fn bush_number_examples() {
        let b = Budget::default();
        let r = bush_number(&path(3).unwrap(), 3, &b).unwrap();
        assert_eq!(r.k, Some(1));
        assert_eq!(r.schedule.unwrap().moves[0].vertices(), &[1]);
        let r = bush_number(&path(7).unwrap(), 3, &b).unwrap();
        assert_eq!(r.k, Some(1));
        assert!(r.schedule.unwrap().len() >= 2);
        assert_eq!(bush_number(&complete(6).unwrap(), 3, &b).unwrap().k, Some(1));
        assert_eq!(blind_localization_number(&star(8).unwrap(), 3, &b).unwrap(), Some(1));
    }

    #[test]
    fn cycle_six_blind_number() {
        // oracle: plain BFS over all 2^6 bush states with every single cut
        let g = cycle(6).unwrap();
        let game = BushGame::new(&g).unwrap();
        let mut seen = [false; 64];
        let mut frontier = vec![VertexSet::full(6)];
        seen[63] = true;
        let mut clears = false;
        while let Some(s) = frontier.pop() {
            for v in 0..6 {
                let st = game.step(s, &[v]);
                if st.cleared.is_empty() {
                    clears = true;
                } else if !seen[st.regrown.0 as usize] {
                    seen[st.regrown.0 as usize] = true;
                    frontier.push(st.regrown);
                }
            }
        }
        let k = blind_localization_number(&g, 6, &Budget::default()).unwrap().unwrap();
        assert_eq!(k == 1, clears);
        assert_eq!(k, if clears { 1 } else { 2 });
    }

    #[test]
    fn schedules_replay_to_empty() {
        for seed in 0..10 {
            let g = random_connected(9, 0.2, seed).unwrap();
            let r = bush_number(&g, 9, &Budget::default()).unwrap();
            let game = BushGame::new(&g).unwrap();
            let schedule = r.schedule.unwrap();
            let trace = game.replay(&schedule);
            assert_eq!(*trace.last().unwrap(), VertexSet::EMPTY);
            assert!(trace[..trace.len() - 1].iter().all(|s| !s.is_empty()));
            assert!(schedule.moves.iter().all(|m| m.len() <= r.k.unwrap()));
        }
    }

    #[test]
    fn bush_budget() {
        let tight = Budget::with_max_states(1);
        assert!(matches!(bush_number(&path(9).unwrap(), 1, &tight), Err(BushError::Budget(1))));
    }

    #[test]
    fn domination_examples() {
        assert_eq!(domination_number(&path(7).unwrap()).unwrap(), (3, vec![0, 2, 5]));
        assert_eq!(domination_number(&star(6).unwrap()).unwrap().0, 1);
        assert_eq!(domination_number(&cycle(6).unwrap()).unwrap().0, 2);
    }

    #[test]
    fn chain_examples() {
        for g in [path(4).unwrap(), star(5).unwrap(), cycle(5).unwrap()] {
            let r = check_chain(&g, &Budget::default()).unwrap();
            assert!(r.holds, "{r:?}");
            assert_eq!(r.bush, r.blind);
        }
    }

    proptest! {
        #[test]
        fn step_properties(seed in 0u64..500, bush in 0u64..(1 << 8), cut in 0usize..8) {
            let g = random_connected(8, 0.25, seed).unwrap();
            let game = BushGame::new(&g).unwrap();
            let s = VertexSet(bush);
            let a = game.step(s, &[cut]);
            prop_assert_eq!(a, game.step(s, &[cut]));
            prop_assert!(a.cleared.is_subset(s));
            prop_assert!(a.cleared.is_subset(a.regrown));
            prop_assert_eq!(a.regrown.is_empty(), a.cleared.is_empty());
            let closed = g.closed_masks().unwrap();
            prop_assert_eq!(a.regrown, Graph::closed_neighborhood(&closed, a.cleared));
        }
    }
}
