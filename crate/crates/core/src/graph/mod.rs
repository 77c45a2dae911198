//! Simple undirected graphs, distances, generators and path decompositions.

mod catalog;
mod decomposition;
mod distance;
pub mod generators;
mod set;

pub use catalog::{all_graphs, canonical_form, connected_graphs, trees, CanonicalForm};
pub use decomposition::{normalize_decomposition, pathwidth_exact, PathDecomposition, DEFAULT_PATHWIDTH_LIMIT};
pub use distance::{all_pairs_distances, bfs_distances, DistanceMatrix};
pub use set::{combinations, Combinations, VertexSet, MAX_SET_VERTICES};

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph has {0} vertices; at most 64 are supported by this operation")]
    TooLarge(usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("invalid path decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("graph has {n} vertices, above the limit of {limit}")]
    SizeLimit { n: usize, limit: usize },
}

/// A simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are kept sorted; graphs are immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds a graph, rejecting loops, duplicate edges and out-of-range endpoints.
    /// Edge orientation is irrelevant.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.n()
    }

    pub fn require_connected(&self) -> Result<(), GraphError> {
        if self.n() == 0 {
            return Err(GraphError::Empty);
        }
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(())
    }

    /// Closed neighbourhoods `N[v]` as bitmasks. Fails above 64 vertices.
    pub fn closed_masks(&self) -> Result<Vec<VertexSet>, GraphError> {
        if self.n() > MAX_SET_VERTICES {
            return Err(GraphError::TooLarge(self.n()));
        }
        Ok((0..self.n())
            .map(|v| {
                let mut s = VertexSet::singleton(v);
                for &u in &self.adj[v] {
                    s.insert(u);
                }
                s
            })
            .collect())
    }

    /// Closed neighbourhood of a vertex set, `N[S]`.
    pub fn closed_neighborhood(masks: &[VertexSet], s: VertexSet) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        for v in s {
            out |= masks[v];
        }
        out
    }

    /// Two-colouring of a connected bipartite graph: `Some(side)` with
    /// `side[0] == false`, or `None` if an odd cycle exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.n();
        let mut side: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &v in &self.adj[u] {
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            queue.push_back(v);
                        }
                        Some(sv) if sv == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }

    /// Subgraph induced by `vertices`, relabelled `0..` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let mut b = GraphBuilder::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &u in &self.adj[v] {
                let j = pos[u];
                if j != usize::MAX && i < j {
                    b.add_edge(i, j).expect("induced subgraph is simple");
                }
            }
        }
        b.build()
    }

    /// Parses the text format: first non-comment line `n m`, then `m` lines `u v`
    /// with `0 <= u < v < n`. Lines starting with `#` and blank lines are ignored.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(GraphError::Parse { line: 1, msg: "missing header `n m`".into() })?;
        let (n, m) = parse_pair(hline, header)?;
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut b = GraphBuilder::new(n);
        let mut count = 0;
        for (line, l) in lines {
            let (u, v) = parse_pair(line, l)?;
            if u >= v {
                if u == v {
                    return Err(GraphError::SelfLoop(u));
                }
                return Err(GraphError::Parse { line, msg: format!("edge endpoints must satisfy u < v, got {u} {v}") });
            }
            b.add_edge(u, v)?;
            count += 1;
        }
        if count != m {
            return Err(GraphError::Parse { line: hline, msg: format!("header declares {m} edges, found {count}") });
        }
        Ok(b.build())
    }

    /// Writes the text format, edges in lexicographic order.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{} {}", self.n(), self.m()).unwrap();
        for (u, v) in self.edges() {
            writeln!(s, "{u} {v}").unwrap();
        }
        s
    }
}

fn parse_pair(line: usize, l: &str) -> Result<(usize, usize), GraphError> {
    let mut it = l.split_whitespace();
    let mut next = || -> Result<usize, GraphError> {
        let tok = it.next().ok_or_else(|| GraphError::Parse { line, msg: "expected two integers".into() })?;
        tok.parse::<usize>().map_err(|_| GraphError::Parse { line, msg: format!("not a nonnegative integer: {tok:?}") })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(GraphError::Parse { line, msg: "trailing tokens".into() });
    }
    Ok((a, b))
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// Incremental builder used by generators and the parser.
pub struct GraphBuilder {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder { adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn from_graph(g: &Graph) -> Self {
        GraphBuilder { adj: g.adj.clone(), m: g.m }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Appends a vertex and returns its index.
    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.adj.len();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => return Err(GraphError::DuplicateEdge(u.min(v), u.max(v))),
            Err(pos) => self.adj[u].insert(pos, v),
        }
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        self.m += 1;
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn build(self) -> Graph {
        Graph { adj: self.adj, m: self.m }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        let text = "# a path\n4 3\n0 1\n1 2\n\n2 3\n";
        let g = Graph::parse(text).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.m(), 3);
        assert_eq!(g.to_text(), "4 3\n0 1\n1 2\n2 3\n");
        assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(Graph::parse("3 2\n0 1\n0 1\n"), Err(GraphError::DuplicateEdge(0, 1))));
        assert!(matches!(Graph::parse("3 1\n0 3\n"), Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })));
        assert!(matches!(Graph::parse("3 1\n1 1\n"), Err(GraphError::SelfLoop(1))));
        assert!(matches!(Graph::parse("3 1\n2 1\n"), Err(GraphError::Parse { .. })));
        assert!(matches!(Graph::parse("3 2\n0 1\n"), Err(GraphError::Parse { .. })));
        assert!(matches!(Graph::parse("0 0\n"), Err(GraphError::Empty)));
        assert!(matches!(Graph::parse("3 x\n"), Err(GraphError::Parse { line: 1, .. })));
    }

    #[test]
    fn builder_rejects_duplicates_in_either_orientation() {
        let mut b = GraphBuilder::new(3);
        b.add_edge(0, 2).unwrap();
        assert_eq!(b.add_edge(2, 0), Err(GraphError::DuplicateEdge(0, 2)));
    }

    #[test]
    fn bipartition_detects_odd_cycles() {
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(c4.bipartition(), Some(vec![false, true, false, true]));
        let c3 = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(c3.bipartition(), None);
    }

    #[test]
    fn closed_masks_include_self() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let m = g.closed_masks().unwrap();
        assert_eq!(m[0].to_vec(), vec![0, 1]);
        assert_eq!(m[2].to_vec(), vec![2]);
        assert!(!g.is_connected());
        assert_eq!(g.require_connected(), Err(GraphError::Disconnected));
    }
}
