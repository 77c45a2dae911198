//! Small-graph catalogue with isomorph rejection.
//!
//! A graph's canonical form is the minimum, over all vertex orderings that
//! respect an isomorphism-invariant colour refinement, of its upper-triangle
//! adjacency code. Catalogues are grown one vertex at a time and deduplicated
//! by canonical form.

use std::collections::HashSet;

use super::{Graph, GraphBuilder};

/// Largest vertex count whose adjacency code fits the 64-bit representation.
pub const MAX_CATALOG_VERTICES: usize = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub code: u64,
}

impl CanonicalForm {
    /// The graph whose labelling realises this form.
    pub fn to_graph(self) -> Graph {
        let n = self.n;
        let mut b = GraphBuilder::new(n);
        let mut bit = pair_count(n);
        for u in 0..n {
            for v in u + 1..n {
                bit -= 1;
                if self.code >> bit & 1 == 1 {
                    b.add_edge(u, v).unwrap();
                }
            }
        }
        b.build()
    }
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Code of `g` under the ordering where position `i` holds vertex `order[i]`.
/// The pair `(0,1)` is the most significant bit.
fn code_under(adj: &[u64], order: &[usize]) -> u64 {
    let n = order.len();
    let mut code = 0u64;
    for i in 0..n {
        let row = adj[order[i]];
        for &w in &order[i + 1..n] {
            code = code << 1 | (row >> w & 1);
        }
    }
    code
}

/// Stable colour refinement; colours are ranks of (old colour, sorted
/// neighbour colours) signatures, so they are isomorphism invariant.
fn refine(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut color: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut classes = {
        let mut c = color.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    };
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut ns: Vec<usize> = g.neighbors(v).iter().map(|&u| color[u]).collect();
                ns.sort_unstable();
                (color[v], ns)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let new: Vec<usize> = sigs.iter().map(|s| distinct.binary_search(s).unwrap()).collect();
        let count = distinct.len();
        color = new;
        if count == classes {
            return color;
        }
        classes = count;
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.n();
    assert!(n <= MAX_CATALOG_VERTICES, "canonical forms are limited to {MAX_CATALOG_VERTICES} vertices");
    let adj: Vec<u64> = (0..n).map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u)).collect();
    let color = refine(g);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut order_colors: Vec<usize> = color.clone();
    order_colors.sort_unstable();
    order_colors.dedup();
    for c in order_colors {
        cells.push((0..n).filter(|&v| color[v] == c).collect());
    }
    let mut best = u64::MAX;
    let mut order = Vec::with_capacity(n);
    search(&adj, &mut cells, 0, &mut order, &mut best);
    CanonicalForm { n, code: if n < 2 { 0 } else { best } }
}

fn search(adj: &[u64], cells: &mut [Vec<usize>], cell: usize, order: &mut Vec<usize>, best: &mut u64) {
    if cell == cells.len() {
        let code = code_under(adj, order);
        if code < *best {
            *best = code;
        }
        return;
    }
    if cells[cell].is_empty() {
        search(adj, cells, cell + 1, order, best);
        return;
    }
    let len = cells[cell].len();
    for i in 0..len {
        let v = cells[cell].swap_remove(i);
        order.push(v);
        search(adj, cells, cell, order, best);
        order.pop();
        cells[cell].push(v);
        let last = cells[cell].len() - 1;
        cells[cell].swap(i, last);
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    All,
    Connected,
    Tree,
}

fn grow(prev: &[CanonicalForm], n: usize, kind: Kind) -> Vec<CanonicalForm> {
    let mut seen = HashSet::new();
    for form in prev {
        let g = form.to_graph();
        let masks: Box<dyn Iterator<Item = u64>> = match kind {
            Kind::All => Box::new(0..(1u64 << (n - 1))),
            Kind::Connected => Box::new(1..(1u64 << (n - 1))),
            Kind::Tree => Box::new((0..n - 1).map(|u| 1u64 << u)),
        };
        for mask in masks {
            let mut b = GraphBuilder::from_graph(&g);
            let x = b.add_vertex();
            for u in 0..x {
                if mask >> u & 1 == 1 {
                    b.add_edge(u, x).unwrap();
                }
            }
            seen.insert(canonical_form(&b.build()));
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    out
}

fn catalogue(n: usize, kind: Kind) -> Vec<Graph> {
    assert!(n <= MAX_CATALOG_VERTICES);
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![canonical_form(&Graph::empty(1))];
    for size in 2..=n {
        level = grow(&level, size, kind);
    }
    level.into_iter().map(|f| f.to_graph()).collect()
}

/// All connected graphs on exactly `n` vertices, one per isomorphism class.
/// Every connected graph has a non-cut vertex, so growing connected graphs
/// by one vertex with a nonempty neighbourhood reaches every class.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    catalogue(n, Kind::Connected)
}

/// All trees on exactly `n` vertices, one per isomorphism class.
pub fn trees(n: usize) -> Vec<Graph> {
    catalogue(n, Kind::Tree)
}

/// All graphs on exactly `n` vertices, one per isomorphism class.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    catalogue(n, Kind::All)
}
