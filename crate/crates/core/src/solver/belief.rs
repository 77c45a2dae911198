use serde::{Deserialize, Serialize};

use super::SolveError;
use crate::graph::{all_pairs_distances, DistanceMatrix, Graph, VertexSet};

/// Probed vertices for one turn: distinct, sorted, nonempty.
///
/// Probing the same vertex twice returns the same distance twice, so a
/// multiset probe carries exactly the information of its underlying set;
/// restricting to sets of size `min(k, n)` loses nothing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct ProbeSet(Vec<usize>);

impl ProbeSet {
    pub fn new(mut vertices: Vec<usize>) -> Result<Self, SolveError> {
        if vertices.is_empty() {
            return Err(SolveError::InvalidProbe("probe set is empty".into()));
        }
        vertices.sort_unstable();
        let len = vertices.len();
        vertices.dedup();
        if vertices.len() != len {
            return Err(SolveError::InvalidProbe("probe set repeats a vertex".into()));
        }
        Ok(ProbeSet(vertices))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_set(&self) -> VertexSet {
        self.0.iter().copied().collect()
    }

    /// Checks vertex range and the per-turn budget `k`.
    pub fn check(&self, n: usize, k: usize) -> Result<(), SolveError> {
        if let Some(&v) = self.0.iter().find(|&&v| v >= n) {
            return Err(SolveError::InvalidProbe(format!("vertex {v} out of range 0..{n}")));
        }
        if self.0.len() > k {
            return Err(SolveError::InvalidProbe(format!("{} probes exceed the budget k = {k}", self.0.len())));
        }
        Ok(())
    }
}

impl TryFrom<Vec<usize>> for ProbeSet {
    type Error = SolveError;
    fn try_from(v: Vec<usize>) -> Result<Self, SolveError> {
        ProbeSet::new(v)
    }
}

impl From<ProbeSet> for Vec<usize> {
    fn from(p: ProbeSet) -> Vec<usize> {
        p.0
    }
}

/// Distances from the robber to each probe, in probe order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Signature(pub Vec<u32>);

/// Vertices of a belief that answer a probe identically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureClass {
    pub signature: Signature,
    pub members: VertexSet,
}

/// Precomputed distance layers and closed neighbourhoods of a connected graph
/// with at most 64 vertices; the shared arena of the belief-state solvers.
#[derive(Clone)]
pub struct Arena {
    n: usize,
    closed: Vec<VertexSet>,
    layers: Vec<Vec<VertexSet>>,
    dist: DistanceMatrix,
}

impl Arena {
    pub fn new(g: &Graph) -> Result<Self, SolveError> {
        g.require_connected()?;
        let closed = g.closed_masks()?;
        let dist = all_pairs_distances(g);
        let layers = dist.layers()?;
        Ok(Arena { n: g.n(), closed, layers, dist })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    pub fn closed(&self) -> &[VertexSet] {
        &self.closed
    }

    /// Splits `belief` into classes of equal distance signature, ordered by
    /// smallest member.
    pub fn split(&self, belief: VertexSet, probe: &[usize]) -> Vec<VertexSet> {
        let mut classes = vec![belief];
        let mut next = Vec::with_capacity(belief.len());
        for &p in probe {
            next.clear();
            for &c in &classes {
                if c.len() == 1 {
                    next.push(c);
                    continue;
                }
                for &layer in &self.layers[p] {
                    let part = c & layer;
                    if !part.is_empty() {
                        next.push(part);
                    }
                }
            }
            std::mem::swap(&mut classes, &mut next);
        }
        classes.sort_unstable_by_key(|c| c.first());
        classes
    }

    /// `N[class]`: where a surviving robber can be at the next probe.
    #[inline]
    pub fn step(&self, class: VertexSet) -> VertexSet {
        Graph::closed_neighborhood(&self.closed, class)
    }

    pub fn signature(&self, v: usize, probe: &[usize]) -> Signature {
        Signature(probe.iter().map(|&p| self.dist.get(p, v).expect("connected")).collect())
    }
}

/// Partition of a belief by the distance answers to `probe`.
pub fn partition_by_signature(
    arena: &Arena,
    belief: VertexSet,
    probe: &ProbeSet,
) -> Result<Vec<SignatureClass>, SolveError> {
    if belief.is_empty() {
        return Err(SolveError::EmptyBelief);
    }
    probe.check(arena.n(), usize::MAX)?;
    if !belief.is_subset(arena.full()) {
        return Err(SolveError::InvalidBelief(belief.to_vec()));
    }
    Ok(arena
        .split(belief, probe.vertices())
        .into_iter()
        .map(|members| SignatureClass {
            signature: arena.signature(members.first().unwrap(), probe.vertices()),
            members,
        })
        .collect())
}

/// Belief after the robber survives in `class` and moves: `N[class]`.
pub fn belief_step(arena: &Arena, belief: VertexSet, class: VertexSet) -> Result<VertexSet, SolveError> {
    if class.len() < 2 {
        return Err(SolveError::RobberLocated);
    }
    if !class.is_subset(belief) {
        return Err(SolveError::InvalidBelief(class.to_vec()));
    }
    Ok(arena.step(class))
}
