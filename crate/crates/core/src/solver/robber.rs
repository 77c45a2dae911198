use std::collections::HashMap;

use super::belief::{Arena, ProbeSet};
use super::localization::{solve, WinTable};
use super::{Budget, SolveError};
use crate::graph::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RobberChoice {
    /// Every class is a singleton: the probe locates the robber.
    Located,
    /// The class the robber claims to be in.
    Class(VertexSet),
}

/// Robber that, offered a partition, picks the surviving class whose next
/// belief lasts longest against optimal cops. Losing beliefs count as
/// surviving forever; ties go to the class with the smallest vertex.
pub struct AdversarialRobber {
    arena: Arena,
    k: usize,
    budget: Budget,
    ranks: HashMap<VertexSet, Option<u32>>,
}

impl AdversarialRobber {
    pub fn new(arena: Arena, k: usize, budget: Budget) -> Result<Self, SolveError> {
        let table = solve(&arena, k, arena.full(), &budget)?;
        let mut robber = AdversarialRobber { arena, k, budget, ranks: HashMap::new() };
        robber.absorb(&table);
        Ok(robber)
    }

    fn absorb(&mut self, table: &WinTable) {
        for (s, r) in table.iter() {
            self.ranks.entry(s).or_insert(r);
        }
    }

    pub fn arena(&self) -> &Arena {
        &self.arena
    }

    /// Remaining turns the cops need from `belief`; `None` if they cannot win.
    pub fn rank(&mut self, belief: VertexSet) -> Result<Option<u32>, SolveError> {
        if let Some(&r) = self.ranks.get(&belief) {
            return Ok(r);
        }
        let table = solve(&self.arena, self.k, belief, &self.budget)?;
        self.absorb(&table);
        Ok(table.rank_of(belief).flatten())
    }

    pub fn choose(&mut self, belief: VertexSet, probe: &ProbeSet) -> Result<RobberChoice, SolveError> {
        probe.check(self.arena.n(), usize::MAX)?;
        if belief.is_empty() {
            return Err(SolveError::EmptyBelief);
        }
        let mut best: Option<(u32, VertexSet)> = None;
        for class in self.arena.split(belief, probe.vertices()) {
            if class.len() < 2 {
                continue;
            }
            let value = self.rank(self.arena.step(class))?.unwrap_or(u32::MAX);
            if best.is_none_or(|(v, _)| value > v) {
                best = Some((value, class));
            }
        }
        Ok(best.map_or(RobberChoice::Located, |(_, c)| RobberChoice::Class(c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    fn robber(g: &crate::Graph, k: usize) -> AdversarialRobber {
        AdversarialRobber::new(Arena::new(g).unwrap(), k, Budget::default()).unwrap()
    }

    fn probe(v: &[usize]) -> ProbeSet {
        ProbeSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn k4_picks_the_only_pair() {
        let mut r = robber(&complete(4).unwrap(), 2);
        let cd: VertexSet = [2, 3].into_iter().collect();
        assert_eq!(r.choose(VertexSet::full(4), &probe(&[0, 1])).unwrap(), RobberChoice::Class(cd));
    }

    #[test]
    fn path_end_locates() {
        let mut r = robber(&path(4).unwrap(), 1);
        assert_eq!(r.choose(VertexSet::full(4), &probe(&[0])).unwrap(), RobberChoice::Located);
    }

    #[test]
    fn star_leaf_probe_leaves_three_leaves() {
        let mut r = robber(&star(5).unwrap(), 1);
        let leaves: VertexSet = [2, 3, 4].into_iter().collect();
        assert_eq!(r.choose(VertexSet::full(5), &probe(&[1])).unwrap(), RobberChoice::Class(leaves));
    }

    #[test]
    fn unseen_beliefs_are_solved_on_demand() {
        let mut r = robber(&path(5).unwrap(), 1);
        let s: VertexSet = [1, 2, 3].into_iter().collect();
        assert!(r.rank(s).unwrap().is_some());
    }
}
