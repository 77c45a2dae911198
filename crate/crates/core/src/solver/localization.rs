use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::belief::{Arena, ProbeSet};
use super::{Budget, SolveError};
use crate::graph::{combinations, Graph, VertexSet};

/// Outcome of probing a belief with one probe set: the distinct beliefs the
/// robber can reach after surviving, sorted.
type Successors = Vec<VertexSet>;

struct Expansion {
    /// Index of the first probe that locates the robber outright.
    immediate: Option<u32>,
    /// `(probe index, successors)`, first probe per distinct successor list.
    options: Vec<(u32, Successors)>,
}

/// Solved belief graph for one `k`: every belief reachable from the initial
/// belief (except behind immediately winning beliefs) with its rank, the
/// number of turns the cops need from it under optimal play (`None` = the
/// robber escapes forever), and the lexicographically first optimal probe.
pub struct WinTable {
    k: usize,
    probes: Vec<Vec<usize>>,
    states: Vec<VertexSet>,
    index: HashMap<VertexSet, u32>,
    rank: Vec<Option<u32>>,
    best: Vec<Option<u32>>,
    initial: VertexSet,
    partitions: u64,
}

impl WinTable {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn initial(&self) -> VertexSet {
        self.initial
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn partitions(&self) -> u64 {
        self.partitions
    }

    /// `Some(rank)` for a known belief (`rank == None` means losing), `None`
    /// if the belief is not in the table.
    pub fn rank_of(&self, belief: VertexSet) -> Option<Option<u32>> {
        self.index.get(&belief).map(|&i| self.rank[i as usize])
    }

    pub fn wins(&self) -> bool {
        self.rank_of(self.initial).flatten().is_some()
    }

    pub fn best_probe(&self, belief: VertexSet) -> Option<ProbeSet> {
        let i = *self.index.get(&belief)?;
        self.best[i as usize].map(|p| ProbeSet::new(self.probes[p as usize].clone()).unwrap())
    }

    /// Every known belief with its rank.
    pub fn iter(&self) -> impl Iterator<Item = (VertexSet, Option<u32>)> + '_ {
        self.states.iter().zip(&self.rank).map(|(&s, &r)| (s, r))
    }

    /// The optimal positional strategy restricted to beliefs it can reach from
    /// the initial belief, sorted by belief.
    pub fn extract_strategy(&self, arena: &Arena) -> Vec<StrategyEntry> {
        let mut out = Vec::new();
        if !self.wins() {
            return out;
        }
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self.initial];
        seen.insert(self.initial);
        while let Some(s) = stack.pop() {
            let probe = self.best_probe(s).expect("winning belief has a probe");
            for class in arena.split(s, probe.vertices()) {
                if class.len() >= 2 {
                    let next = arena.step(class);
                    if seen.insert(next) {
                        stack.push(next);
                    }
                }
            }
            out.push(StrategyEntry { belief: s, probe });
        }
        out.sort_by_key(|a| a.belief.to_vec());
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyEntry {
    pub belief: VertexSet,
    pub probe: ProbeSet,
}

/// Solves the localization game with `k` probes per turn from `initial`.
///
/// Forward reachability from `initial` interleaved with a backward attractor
/// computation: a belief wins at rank 1 if some probe splits it into
/// singletons, and at rank `r + 1` if some probe leaves only successors of
/// rank at most `r`. Beliefs never labelled are losing. Probe sets and
/// classes are enumerated in lexicographic vertex order, and parallel
/// expansion results are merged in that order, so the table does not depend
/// on the thread count.
pub fn solve(arena: &Arena, k: usize, initial: VertexSet, budget: &Budget) -> Result<WinTable, SolveError> {
    if k == 0 {
        return Err(SolveError::InvalidK(k));
    }
    if initial.is_empty() {
        return Err(SolveError::EmptyBelief);
    }
    if !initial.is_subset(arena.full()) {
        return Err(SolveError::InvalidBelief(initial.to_vec()));
    }
    let n = arena.n();
    let probes: Vec<Vec<usize>> = combinations(n, k.min(n)).collect();

    let mut states: Vec<VertexSet> = vec![initial];
    let mut index: HashMap<VertexSet, u32> = HashMap::from([(initial, 0)]);
    let mut expansions: Vec<Option<Expansion>> = Vec::new();
    let mut partitions: u64 = 0;
    let mut frontier_start = 0;

    while frontier_start < states.len() {
        let frontier_end = states.len();
        let cost = (frontier_end - frontier_start) as u64 * probes.len() as u64;
        partitions = partitions.saturating_add(cost);
        if partitions > budget.max_partitions {
            return Err(SolveError::Budget { resource: "partition evaluations", limit: budget.max_partitions });
        }
        let batch: Vec<Expansion> =
            states[frontier_start..frontier_end].par_iter().map(|&s| expand(arena, &probes, s)).collect();
        for exp in batch {
            for (_, succ) in &exp.options {
                for &t in succ {
                    if let std::collections::hash_map::Entry::Vacant(e) = index.entry(t) {
                        if states.len() >= budget.max_states {
                            return Err(SolveError::Budget {
                                resource: "belief states",
                                limit: budget.max_states as u64,
                            });
                        }
                        e.insert(states.len() as u32);
                        states.push(t);
                    }
                }
            }
            expansions.push(Some(exp));
        }
        frontier_start = frontier_end;
    }

    let count = states.len();
    let mut rank: Vec<Option<u32>> = vec![None; count];
    let mut best: Vec<Option<u32>> = vec![None; count];

    // counters[i][j]: successors of option j of state i not yet known winning
    let mut counters: Vec<Vec<u32>> = Vec::with_capacity(count);
    let mut reverse: Vec<Vec<(u32, u32)>> = vec![Vec::new(); count];
    let mut layer: Vec<u32> = Vec::new();
    for (i, exp) in expansions.iter().enumerate() {
        let exp = exp.as_ref().unwrap();
        if let Some(p) = exp.immediate {
            rank[i] = Some(1);
            best[i] = Some(p);
            layer.push(i as u32);
            counters.push(Vec::new());
            continue;
        }
        let mut c = Vec::with_capacity(exp.options.len());
        for (j, (_, succ)) in exp.options.iter().enumerate() {
            c.push(succ.len() as u32);
            for t in succ {
                reverse[index[t] as usize].push((i as u32, j as u32));
            }
        }
        counters.push(c);
    }

    let mut r = 1u32;
    while !layer.is_empty() {
        // candidate option per state reaching zero this round (smallest index wins)
        let mut candidates: HashMap<u32, u32> = HashMap::new();
        for &w in &layer {
            for &(s, j) in &reverse[w as usize] {
                if rank[s as usize].is_some() {
                    continue;
                }
                let c = &mut counters[s as usize][j as usize];
                *c -= 1;
                if *c == 0 {
                    let e = candidates.entry(s).or_insert(j);
                    if j < *e {
                        *e = j;
                    }
                }
            }
        }
        r += 1;
        let mut next: Vec<u32> = candidates.keys().copied().collect();
        next.sort_unstable();
        for &s in &next {
            let j = candidates[&s];
            rank[s as usize] = Some(r);
            let exp = expansions[s as usize].as_ref().unwrap();
            best[s as usize] = Some(exp.options[j as usize].0);
        }
        layer = next;
    }

    Ok(WinTable { k, probes, states, index, rank, best, initial, partitions })
}

fn expand(arena: &Arena, probes: &[Vec<usize>], s: VertexSet) -> Expansion {
    let mut options: Vec<(u32, Successors)> = Vec::new();
    let mut seen: HashMap<Successors, ()> = HashMap::new();
    for (pi, probe) in probes.iter().enumerate() {
        let mut succ: Successors =
            arena.split(s, probe).into_iter().filter(|c| c.len() >= 2).map(|c| arena.step(c)).collect();
        if succ.is_empty() {
            return Expansion { immediate: Some(pi as u32), options: Vec::new() };
        }
        succ.sort_unstable();
        succ.dedup();
        if seen.insert(succ.clone(), ()).is_none() {
            options.push((pi as u32, succ));
        }
    }
    Expansion { immediate: None, options }
}

/// Result of a full localization-number computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    /// Smallest winning `k`, or `None` if it exceeds the search cap.
    pub zeta: Option<usize>,
    /// Worst-case number of turns under optimal play at `zeta` (0 if none).
    pub turns: usize,
    /// Winning positional strategy at `zeta`.
    pub strategy: Vec<StrategyEntry>,
    /// Belief states explored over all `k` tried.
    pub states_explored: usize,
}

#[derive(Serialize, Deserialize)]
struct SolveResultJson {
    zeta: Option<usize>,
    turns: usize,
    strategy: Vec<StrategyEntry>,
    states: usize,
}

impl Serialize for SolveResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SolveResultJson {
            zeta: self.zeta,
            turns: self.turns,
            strategy: self.strategy.clone(),
            states: self.states_explored,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SolveResult {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = SolveResultJson::deserialize(d)?;
        Ok(SolveResult { zeta: j.zeta, turns: j.turns, strategy: j.strategy, states_explored: j.states })
    }
}

/// Whether `k` cops win, with the extracted strategy when they do.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CopWins {
    pub k: usize,
    pub wins: bool,
    pub turns: Option<usize>,
    pub strategy: Vec<StrategyEntry>,
    pub states_explored: usize,
}

pub fn cop_wins(g: &Graph, k: usize, budget: &Budget) -> Result<CopWins, SolveError> {
    let arena = Arena::new(g)?;
    cop_wins_in(&arena, k, budget)
}

pub fn cop_wins_in(arena: &Arena, k: usize, budget: &Budget) -> Result<CopWins, SolveError> {
    let table = solve(arena, k, arena.full(), budget)?;
    let turns = table.rank_of(table.initial()).flatten().map(|r| r as usize);
    Ok(CopWins {
        k,
        wins: turns.is_some(),
        turns,
        strategy: table.extract_strategy(arena),
        states_explored: table.len(),
    })
}

/// Smallest `k <= max_k` for which the cops win.
pub fn localization_number(g: &Graph, max_k: usize, budget: &Budget) -> Result<SolveResult, SolveError> {
    let arena = Arena::new(g)?;
    let mut explored = 0;
    for k in 1..=max_k.min(arena.n()) {
        let res = cop_wins_in(&arena, k, budget)?;
        explored += res.states_explored;
        if res.wins {
            return Ok(SolveResult {
                zeta: Some(k),
                turns: res.turns.unwrap(),
                strategy: res.strategy,
                states_explored: explored,
            });
        }
    }
    Ok(SolveResult { zeta: None, turns: 0, strategy: Vec::new(), states_explored: explored })
}
