//! Graph families with fixed vertex numbering.
//!
//! Numbering conventions (relied on by tests and scripted strategies):
//!
//! * `path(n)`: `0 - 1 - ... - n-1`.
//! * `cycle(n)`: the path plus the edge `{0, n-1}`.
//! * `star(n)`: centre `0`, leaves `1..n`.
//! * `complete_bipartite(a, b)`: part A is `0..a`, part B is `a..a+b`.
//! * `interval(intervals)`: vertex `i` is the `i`-th closed interval.
//! * `ary_tree(arity, height)`: breadth-first order, root `0`, children of `v`
//!   are `arity*v + 1 ..= arity*v + arity`.
//! * `add_universal(g)` / `add_isolated(g)`: the new vertex is `g.n()`.
//! * `subdivide(g, s)`: original vertices keep their labels; the `s` new
//!   vertices of the `e`-th edge (lexicographic edge order) are
//!   `n + e*s .. n + (e+1)*s`, listed from the smaller endpoint outward.
//! * `random_tree(n, seed)`: vertex `i >= 1` attaches to a uniform vertex `< i`.
//! * `random_connected(n, p, seed)`: `random_tree(n, seed)` plus every other
//!   pair, in lexicographic order, independently with probability `p`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphBuilder, GraphError};

/// Hard cap on generated vertex counts.
pub const MAX_GENERATED_VERTICES: usize = 100_000_000;

/// A generator request.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Star(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    RandomTree { n: usize, seed: u64 },
    RandomConnected { n: usize, p: f64, seed: u64 },
    Interval(Vec<(i64, i64)>),
    AryTree { arity: usize, height: usize },
    AddUniversal(Graph),
    AddIsolated(Graph),
    Subdivide(Graph, usize),
}

pub fn generate(family: &Family) -> Result<Graph, GraphError> {
    match family {
        Family::Path(n) => path(*n),
        Family::Cycle(n) => cycle(*n),
        Family::Star(n) => star(*n),
        Family::Complete(n) => complete(*n),
        Family::CompleteBipartite(a, b) => complete_bipartite(*a, *b),
        Family::RandomTree { n, seed } => random_tree(*n, *seed),
        Family::RandomConnected { n, p, seed } => random_connected(*n, *p, *seed),
        Family::Interval(iv) => interval(iv),
        Family::AryTree { arity, height } => ary_tree(*arity, *height),
        Family::AddUniversal(g) => Ok(add_universal(g)),
        Family::AddIsolated(g) => Ok(add_isolated(g)),
        Family::Subdivide(g, s) => subdivide(g, *s),
    }
}

fn positive(n: usize, what: &str) -> Result<(), GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidParameter(format!("{what} must be positive")));
    }
    if n > MAX_GENERATED_VERTICES {
        return Err(GraphError::InvalidParameter(format!("{what} = {n} exceeds the size guard")));
    }
    Ok(())
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    positive(n, "n")?;
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidParameter("cycle needs n >= 3".into()));
    }
    positive(n, "n")?;
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)).chain([(0, n - 1)]))
}

pub fn star(n: usize) -> Result<Graph, GraphError> {
    positive(n, "n")?;
    Graph::from_edges(n, (1..n).map(|i| (0, i)))
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    positive(n, "n")?;
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GraphError> {
    positive(a, "a")?;
    positive(b, "b")?;
    Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
}

pub fn random_tree(n: usize, seed: u64) -> Result<Graph, GraphError> {
    positive(n, "n")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Graph::from_edges(n, (1..n).map(|i| (rng.gen_range(0..i), i)).collect::<Vec<_>>())
}

pub fn random_connected(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    positive(n, "n")?;
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::InvalidParameter(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = GraphBuilder::new(n);
    for i in 1..n {
        let parent = rng.gen_range(0..i);
        b.add_edge(parent, i)?;
    }
    for u in 0..n {
        for v in u + 1..n {
            if !b.has_edge(u, v) && rng.gen_bool(p) {
                b.add_edge(u, v)?;
            }
        }
    }
    Ok(b.build())
}

/// Intersection graph of closed integer intervals `[lo, hi]`.
pub fn interval(intervals: &[(i64, i64)]) -> Result<Graph, GraphError> {
    positive(intervals.len(), "interval count")?;
    if let Some(&(lo, hi)) = intervals.iter().find(|(lo, hi)| lo > hi) {
        return Err(GraphError::InvalidParameter(format!("empty interval [{lo}, {hi}]")));
    }
    let n = intervals.len();
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            let (a, c) = (intervals[u], intervals[v]);
            if a.0.max(c.0) <= a.1.min(c.1) {
                b.add_edge(u, v)?;
            }
        }
    }
    Ok(b.build())
}

/// Vertex count of a complete `arity`-ary tree of the given height, or `None`
/// above the generator size guard.
pub fn ary_tree_size(arity: usize, height: usize) -> Option<usize> {
    let mut total: usize = 1;
    let mut level: usize = 1;
    for _ in 0..height {
        level = level.checked_mul(arity)?;
        total = total.checked_add(level)?;
        if total > MAX_GENERATED_VERTICES {
            return None;
        }
    }
    Some(total)
}

pub fn ary_tree(arity: usize, height: usize) -> Result<Graph, GraphError> {
    positive(arity, "arity")?;
    let n = ary_tree_size(arity, height)
        .ok_or_else(|| GraphError::InvalidParameter(format!("{arity}-ary tree of height {height} is too large")))?;
    Graph::from_edges(n, (1..n).map(|c| ((c - 1) / arity, c)))
}

pub fn add_universal(g: &Graph) -> Graph {
    let mut b = GraphBuilder::from_graph(g);
    let x = b.add_vertex();
    for v in 0..x {
        b.add_edge(v, x).expect("new vertex");
    }
    b.build()
}

pub fn add_isolated(g: &Graph) -> Graph {
    let mut b = GraphBuilder::from_graph(g);
    b.add_vertex();
    b.build()
}

pub fn subdivide(g: &Graph, s: usize) -> Result<Graph, GraphError> {
    let total = g
        .m()
        .checked_mul(s)
        .and_then(|x| x.checked_add(g.n()))
        .filter(|&t| t <= MAX_GENERATED_VERTICES)
        .ok_or_else(|| GraphError::InvalidParameter("subdivision too large".into()))?;
    let mut b = GraphBuilder::new(total);
    let mut next = g.n();
    for (u, v) in g.edges() {
        let mut prev = u;
        for _ in 0..s {
            b.add_edge(prev, next)?;
            prev = next;
            next += 1;
        }
        b.add_edge(prev, v)?;
    }
    Ok(b.build())
}
