use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{Observation, Strategy, StrategyError};
use crate::graph::{Graph, VertexSet};
use crate::solver::{Arena, ProbeSet, SolveError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    /// The robber can return to an earlier (belief, phase) pair forever.
    CounterexampleCycle,
    /// The robber is still hidden after the turn limit.
    CounterexampleTimeout,
}

impl Verdict {
    pub fn is_verified(self) -> bool {
        self == Verdict::Verified
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub probe: ProbeSet,
    pub class: VertexSet,
}

/// Outcome of playing a strategy against every robber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub verdict: Verdict,
    /// Worst-case turns when verified; length of the robber's line otherwise.
    pub turns: usize,
    /// Finished plays explored.
    pub branches: u64,
    /// The robber's line of play for a counterexample.
    pub trace: Vec<TraceStep>,
}

#[derive(Serialize, Deserialize)]
struct ReportJson {
    verdict: String,
    reason: Option<String>,
    turns: usize,
    branches: u64,
    trace: Vec<TraceStep>,
}

impl Serialize for VerificationReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (verdict, reason) = match self.verdict {
            Verdict::Verified => ("verified", None),
            Verdict::CounterexampleCycle => ("counterexample", Some("belief-cycle")),
            Verdict::CounterexampleTimeout => ("counterexample", Some("timeout")),
        };
        ReportJson {
            verdict: verdict.into(),
            reason: reason.map(Into::into),
            turns: self.turns,
            branches: self.branches,
            trace: self.trace.clone(),
        }
        .serialize(s)
    }
}

struct Search<'a> {
    arena: Arena,
    strategy: &'a dyn Strategy,
    max_turns: usize,
    on_path: HashSet<(VertexSet, u64)>,
    /// (belief, phase) -> (height, branches) of a verified subtree
    memo: HashMap<(VertexSet, u64), (usize, u64)>,
    history: Vec<Observation>,
    trace: Vec<TraceStep>,
}

enum Outcome {
    Won { height: usize, branches: u64 },
    Lost(Verdict),
}

impl Search<'_> {
    fn run(&mut self, belief: VertexSet, turn: usize) -> Result<Outcome, StrategyError> {
        if turn > self.max_turns {
            return Ok(Outcome::Lost(Verdict::CounterexampleTimeout));
        }
        let phase = self.strategy.phase(&self.history);
        if let Some(p) = phase {
            if let Some(&(height, branches)) = self.memo.get(&(belief, p)) {
                if turn - 1 + height <= self.max_turns {
                    return Ok(Outcome::Won { height, branches });
                }
            }
            if !self.on_path.insert((belief, p)) {
                return Ok(Outcome::Lost(Verdict::CounterexampleCycle));
            }
        }
        let probe = self.strategy.next_probe(&self.history)?;
        if probe.len() > self.strategy.k() {
            return Err(
                SolveError::InvalidProbe(format!("{} probes exceed k = {}", probe.len(), self.strategy.k())).into()
            );
        }
        probe.check(self.arena.n(), usize::MAX)?;

        let mut height = 1;
        let mut branches = 0;
        let mut lost = None;
        for class in self.arena.split(belief, probe.vertices()) {
            if class.len() < 2 {
                continue;
            }
            let signature = self.arena.signature(class.first().unwrap(), probe.vertices());
            self.history.push(Observation { probe: probe.clone(), signature });
            self.trace.push(TraceStep { probe: probe.clone(), class });
            let sub = self.run(self.arena.step(class), turn + 1)?;
            self.history.pop();
            match sub {
                Outcome::Won { height: h, branches: b } => {
                    self.trace.pop();
                    height = height.max(h + 1);
                    branches += b;
                }
                Outcome::Lost(v) => {
                    lost = Some(v);
                    break;
                }
            }
        }
        if let Some(p) = phase {
            self.on_path.remove(&(belief, p));
        }
        if let Some(v) = lost {
            return Ok(Outcome::Lost(v));
        }
        let branches = branches.max(1);
        if let Some(p) = phase {
            self.memo.insert((belief, p), (height, branches));
        }
        Ok(Outcome::Won { height, branches })
    }
}

/// Plays `strategy` against every sequence of robber class choices.
///
/// Depth-first over surviving classes in order of smallest vertex; the first
/// losing line found is returned as the counterexample.
pub fn verify_strategy(
    g: &Graph,
    strategy: &dyn Strategy,
    max_turns: usize,
) -> Result<VerificationReport, StrategyError> {
    let arena = Arena::new(g)?;
    let full = arena.full();
    let mut search = Search {
        arena,
        strategy,
        max_turns,
        on_path: HashSet::new(),
        memo: HashMap::new(),
        history: Vec::new(),
        trace: Vec::new(),
    };
    Ok(match search.run(full, 1)? {
        Outcome::Won { height, branches } => {
            VerificationReport { verdict: Verdict::Verified, turns: height, branches, trace: Vec::new() }
        }
        Outcome::Lost(verdict) => {
            let trace = std::mem::take(&mut search.trace);
            VerificationReport { verdict, turns: trace.len(), branches: 0, trace }
        }
    })
}
