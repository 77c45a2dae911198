use std::collections::VecDeque;

use super::{Graph, GraphError, VertexSet, MAX_SET_VERTICES};

const UNREACHABLE: u32 = u32::MAX;

/// All-pairs hop distances. Unreachable pairs read as `None`.
#[derive(Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Option<u32> {
        let x = self.d[u * self.n + v];
        (x != UNREACHABLE).then_some(x)
    }

    /// Row of `u`; `None` marks other components.
    pub fn row(&self, u: usize) -> Vec<Option<u32>> {
        (0..self.n).map(|v| self.get(u, v)).collect()
    }

    /// Largest finite distance, or `None` if the graph is disconnected.
    pub fn diameter(&self) -> Option<u32> {
        let mut best = 0;
        for &x in &self.d {
            if x == UNREACHABLE {
                return None;
            }
            best = best.max(x);
        }
        Some(best)
    }

    /// For each source `p`, the vertex sets at distance exactly `0, 1, 2, ...`.
    /// Vertices in other components are not listed.
    pub fn layers(&self) -> Result<Vec<Vec<VertexSet>>, GraphError> {
        if self.n > MAX_SET_VERTICES {
            return Err(GraphError::TooLarge(self.n));
        }
        Ok((0..self.n)
            .map(|p| {
                let mut out: Vec<VertexSet> = Vec::new();
                for v in 0..self.n {
                    if let Some(t) = self.get(p, v) {
                        let t = t as usize;
                        if out.len() <= t {
                            out.resize(t + 1, VertexSet::EMPTY);
                        }
                        out[t].insert(v);
                    }
                }
                out
            })
            .collect())
    }
}

impl std::fmt::Debug for DistanceMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<Vec<Option<u32>>> = (0..self.n).map(|u| self.row(u)).collect();
        f.debug_struct("DistanceMatrix").field("d", &rows).finish()
    }
}

/// Single-source BFS distances.
pub fn bfs_distances(g: &Graph, source: usize) -> Vec<Option<u32>> {
    let mut dist = vec![None; g.n()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &v in g.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// BFS from every vertex.
pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let mut d = vec![UNREACHABLE; n * n];
    let mut queue = VecDeque::with_capacity(n);
    for s in 0..n {
        let row = &mut d[s * n..(s + 1) * n];
        row[s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let du = row[u];
            for &v in g.neighbors(u) {
                if row[v] == UNREACHABLE {
                    row[v] = du + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    DistanceMatrix { n, d }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{complete, path, random_connected, star};
    use proptest::prelude::*;

    #[test]
    fn path_distance() {
        let d = all_pairs_distances(&path(4).unwrap());
        assert_eq!(d.get(0, 3), Some(3));
        assert_eq!(d.diameter(), Some(3));
    }

    #[test]
    fn complete_distances_are_one() {
        let d = all_pairs_distances(&complete(5).unwrap());
        for u in 0..5 {
            for v in 0..5 {
                assert_eq!(d.get(u, v), Some(if u == v { 0 } else { 1 }));
            }
        }
    }

    #[test]
    fn star_leaves_two_apart() {
        let d = all_pairs_distances(&star(5).unwrap());
        assert_eq!(d.get(1, 2), Some(2));
        assert_eq!(d.get(0, 4), Some(1));
    }

    #[test]
    fn unreachable_is_none() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let d = all_pairs_distances(&g);
        assert_eq!(d.get(0, 2), None);
        assert_eq!(d.get(2, 2), Some(0));
        assert_eq!(d.diameter(), None);
    }

    #[test]
    fn layers_partition_component() {
        let d = all_pairs_distances(&path(5).unwrap());
        let l = d.layers().unwrap();
        assert_eq!(l[2].len(), 3);
        assert_eq!(l[2][1].to_vec(), vec![1, 3]);
        assert_eq!(l[0][4].to_vec(), vec![4]);
    }

    proptest! {
        #[test]
        fn agrees_with_single_source_bfs(n in 2usize..14, p in 0.0f64..0.6, seed: u64, src in 0usize..14) {
            let g = random_connected(n, p, seed).unwrap();
            let src = src % n;
            let d = all_pairs_distances(&g);
            prop_assert_eq!(d.row(src), bfs_distances(&g, src));
            for u in 0..n {
                for v in 0..n {
                    let duv = d.get(u, v).unwrap();
                    prop_assert_eq!(duv, d.get(v, u).unwrap());
                    prop_assert_eq!(duv == 1, g.has_edge(u, v));
                    for w in 0..n {
                        prop_assert!(duv <= d.get(u, w).unwrap() + d.get(w, v).unwrap());
                    }
                }
            }
        }
    }
}
