//! Locating sets, dominating-locating sets, and the gadget constructions
//! relating them to the localization number.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{all_pairs_distances, combinations, generators, Graph, GraphBuilder, GraphError, VertexSet};
use crate::solver::{localization_number, Budget, SolveError, StrategyEntry};

/// Largest graph the subset brute force accepts.
pub const MAX_LOCATING_VERTICES: usize = 20;

#[derive(Debug, Error)]
pub enum LocatingError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("graph has diameter {0:?}, at most 2 is required")]
    Diameter(Option<u32>),
    #[error("graph needs at least {0} vertices")]
    TooSmall(usize),
}

fn traces(g: &Graph, l: VertexSet) -> Result<Vec<VertexSet>, GraphError> {
    Ok(g.closed_masks()?.into_iter().map(|c| c & l).collect())
}

/// Every two vertices outside `l` see different parts of `l` in their closed
/// neighbourhoods.
pub fn is_locating_set(g: &Graph, l: &[usize]) -> Result<bool, GraphError> {
    let set: VertexSet = l.iter().copied().collect();
    if let Some(&v) = l.iter().find(|&&v| v >= g.n()) {
        return Err(GraphError::VertexOutOfRange { vertex: v, n: g.n() });
    }
    let tr = traces(g, set)?;
    let mut outside: Vec<VertexSet> = (0..g.n()).filter(|&v| !set.contains(v)).map(|v| tr[v]).collect();
    let len = outside.len();
    outside.sort_unstable();
    outside.dedup();
    Ok(outside.len() == len)
}

pub fn is_dominating_locating_set(g: &Graph, l: &[usize]) -> Result<bool, GraphError> {
    if !is_locating_set(g, l)? {
        return Ok(false);
    }
    let closed = g.closed_masks()?;
    Ok(Graph::closed_neighborhood(&closed, l.iter().copied().collect()) == VertexSet::full(g.n()))
}

/// Vertices not dominated by `l`; at most one for a locating set.
pub fn undominated(g: &Graph, l: &[usize]) -> Result<usize, GraphError> {
    let closed = g.closed_masks()?;
    Ok((VertexSet::full(g.n()) - Graph::closed_neighborhood(&closed, l.iter().copied().collect())).len())
}

fn min_by(g: &Graph, dominating: bool) -> Result<(usize, Vec<usize>), LocatingError> {
    let n = g.n();
    if n > MAX_LOCATING_VERTICES {
        return Err(GraphError::SizeLimit { n, limit: MAX_LOCATING_VERTICES }.into());
    }
    for size in 0..=n {
        for l in combinations(n, size) {
            let ok = if dominating { is_dominating_locating_set(g, &l)? } else { is_locating_set(g, &l)? };
            if ok {
                return Ok((size, l));
            }
        }
    }
    unreachable!("the whole vertex set is dominating and locating")
}

/// Minimum locating set, lexicographically least among the minimum ones.
pub fn min_locating_set(g: &Graph) -> Result<(usize, Vec<usize>), LocatingError> {
    min_by(g, false)
}

pub fn min_dominating_locating_set(g: &Graph) -> Result<(usize, Vec<usize>), LocatingError> {
    min_by(g, true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    AddIsolated,
    AddUvw,
    Multiuniversal,
}

impl Construction {
    pub fn name(self) -> &'static str {
        match self {
            Construction::AddIsolated => "add-isolated",
            Construction::AddUvw => "add-uvw",
            Construction::Multiuniversal => "multiuniversal",
        }
    }
}

/// A gadget graph: the input on labels `0..n` plus `added`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    pub construction: Construction,
    pub graph: Graph,
    pub added: Vec<usize>,
}

/// Adds an isolated vertex `x = n`.
pub fn reduce_add_isolated(g: &Graph) -> ReductionOutput {
    let n = g.n();
    ReductionOutput { construction: Construction::AddIsolated, graph: generators::add_isolated(g), added: vec![n] }
}

/// Adds `u = n`, `v = n+1`, `w = n+2` with `u` adjacent to every other
/// vertex and the edge `{v, w}`.
pub fn reduce_add_uvw(g: &Graph) -> Result<ReductionOutput, LocatingError> {
    let n = g.n();
    if n < 2 {
        return Err(LocatingError::TooSmall(2));
    }
    let mut b = GraphBuilder::from_graph(g);
    let u = b.add_vertex();
    let v = b.add_vertex();
    let w = b.add_vertex();
    b.add_edge(v, w)?;
    for x in 0..w + 1 {
        if x != u {
            b.add_edge(x, u)?;
        }
    }
    Ok(ReductionOutput { construction: Construction::AddUvw, graph: b.build(), added: vec![u, v, w] })
}

/// Adds `n + 1` pairwise non-adjacent vertices `n..=2n`, each adjacent to
/// every original vertex. Requires diameter at most 2.
pub fn reduce_multiuniversal(g: &Graph) -> Result<ReductionOutput, LocatingError> {
    g.require_connected()?;
    let diameter = all_pairs_distances(g).diameter();
    if diameter.is_none_or(|d| d > 2) {
        return Err(LocatingError::Diameter(diameter));
    }
    let n = g.n();
    let mut b = GraphBuilder::from_graph(g);
    let mut added = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        let x = b.add_vertex();
        for v in 0..n {
            b.add_edge(v, x)?;
        }
        added.push(x);
    }
    Ok(ReductionOutput { construction: Construction::Multiuniversal, graph: b.build(), added })
}

/// Both sides of a claimed equality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub construction: String,
    pub lhs: usize,
    pub rhs: usize,
    pub witness_lhs: Vec<usize>,
    pub witness_rhs: Vec<usize>,
    pub equal: bool,
}

/// Minimum dominating-locating set of `g` against minimum locating set of
/// `g` plus an isolated vertex.
pub fn verify_add_isolated(g: &Graph) -> Result<ReductionReport, LocatingError> {
    let (lhs, wl) = min_dominating_locating_set(g)?;
    let out = reduce_add_isolated(g);
    let (rhs, wr) = min_locating_set(&out.graph)?;
    Ok(ReductionReport {
        construction: out.construction.name().into(),
        lhs,
        rhs,
        witness_lhs: wl,
        witness_rhs: wr,
        equal: lhs == rhs,
    })
}

/// Minimum locating set of `g` plus one against that of the `u, v, w` gadget.
pub fn verify_add_uvw(g: &Graph) -> Result<ReductionReport, LocatingError> {
    let (l, wl) = min_locating_set(g)?;
    let out = reduce_add_uvw(g)?;
    let (rhs, wr) = min_locating_set(&out.graph)?;
    Ok(ReductionReport {
        construction: out.construction.name().into(),
        lhs: l + 1,
        rhs,
        witness_lhs: wl,
        witness_rhs: wr,
        equal: l + 1 == rhs,
    })
}

/// Minimum locating set of `g` plus one against the localization number of
/// the multi-universal gadget. `witness_rhs` is the cops' first probe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem53Report {
    #[serde(flatten)]
    pub report: ReductionReport,
    pub strategy: Vec<StrategyEntry>,
}

pub fn verify_theorem_5_3(g: &Graph, budget: &Budget) -> Result<Theorem53Report, LocatingError> {
    let (k, wl) = min_locating_set(g)?;
    let out = reduce_multiuniversal(g)?;
    let res = localization_number(&out.graph, out.graph.n(), budget)?;
    let zeta = res.zeta.expect("n probes always win");
    let first = res
        .strategy
        .iter()
        .find(|e| e.belief == VertexSet::full(out.graph.n()))
        .map(|e| e.probe.vertices().to_vec())
        .unwrap_or_default();
    Ok(Theorem53Report {
        report: ReductionReport {
            construction: out.construction.name().into(),
            lhs: k + 1,
            rhs: zeta,
            witness_lhs: wl,
            witness_rhs: first,
            equal: k + 1 == zeta,
        },
        strategy: res.strategy,
    })
}
