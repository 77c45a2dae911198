use super::belief::Arena;
use super::SolveError;
use crate::graph::{combinations, Graph};

/// Whether the distance vectors to `w` separate every pair of vertices.
pub fn is_resolving(arena: &Arena, w: &[usize]) -> bool {
    if arena.n() == 1 {
        return true;
    }
    !w.is_empty() && arena.split(arena.full(), w).len() == arena.n()
}

/// Metric dimension with the lexicographically least minimum resolving set.
pub fn metric_dimension(g: &Graph) -> Result<(usize, Vec<usize>), SolveError> {
    let arena = Arena::new(g)?;
    let n = arena.n();
    if n == 1 {
        return Ok((0, Vec::new()));
    }
    for size in 1..n {
        if let Some(w) = combinations(n, size).find(|w| is_resolving(&arena, w)) {
            return Ok((size, w));
        }
    }
    unreachable!("n - 1 vertices always resolve a graph")
}
