use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError, VertexSet};

/// Default vertex-count limit for [`pathwidth_exact`].
pub const DEFAULT_PATHWIDTH_LIMIT: usize = 10;

/// Hard ceiling for the subset dynamic program regardless of the caller's limit.
const PATHWIDTH_HARD_LIMIT: usize = 26;

/// A sequence of bags; each bag is a sorted list of distinct vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathDecomposition {
    bags: Vec<Vec<usize>>,
}

impl PathDecomposition {
    /// Sorts and deduplicates each bag; does not validate against a graph.
    pub fn new(bags: Vec<Vec<usize>>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        PathDecomposition { bags }
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    /// Largest bag size minus one (0 for an empty decomposition).
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(1).saturating_sub(1)
    }

    /// Checks vertex coverage, edge coverage and the interval property.
    pub fn validate(&self, g: &Graph) -> Result<(), GraphError> {
        let n = g.n();
        let bad = |msg: String| Err(GraphError::InvalidDecomposition(msg));
        if self.bags.is_empty() {
            return bad("no bags".into());
        }
        let mut first = vec![usize::MAX; n];
        let mut last = vec![0usize; n];
        let mut count = vec![0usize; n];
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= n {
                    return bad(format!("bag {i} contains vertex {v} outside 0..{n}"));
                }
                if first[v] == usize::MAX {
                    first[v] = i;
                }
                last[v] = i;
                count[v] += 1;
            }
        }
        for v in 0..n {
            if first[v] == usize::MAX {
                return bad(format!("vertex {v} is in no bag"));
            }
            if count[v] != last[v] - first[v] + 1 {
                return bad(format!("bags containing vertex {v} are not contiguous"));
            }
        }
        for (u, v) in g.edges() {
            let lo = first[u].max(first[v]);
            let hi = last[u].min(last[v]);
            if lo > hi {
                return bad(format!("edge {u} {v} is in no bag"));
            }
        }
        Ok(())
    }

    /// Whether the decomposition is in the normal form produced by
    /// [`normalize_decomposition`]: no bag is contained in an adjacent bag, and
    /// every vertex leaving after bag `i` has a neighbour in bag `i`.
    pub fn is_normalized(&self, g: &Graph) -> bool {
        let t = self.bags.len();
        for i in 0..t {
            if i + 1 < t && is_subset(&self.bags[i], &self.bags[i + 1]) {
                return false;
            }
            if i > 0 && is_subset(&self.bags[i], &self.bags[i - 1]) {
                return false;
            }
            if i + 1 < t {
                for &u in &self.bags[i] {
                    if self.bags[i + 1].binary_search(&u).is_err()
                        && !g.neighbors(u).iter().any(|w| self.bags[i].binary_search(w).is_ok())
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// One bag per line, vertices separated by spaces; `#` comment lines allowed.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut bags = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let l = line.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let bag = l
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| GraphError::Parse { line: i + 1, msg: format!("not a vertex index: {tok:?}") })
                })
                .collect::<Result<Vec<_>, _>>()?;
            bags.push(bag);
        }
        Ok(PathDecomposition::new(bags))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for bag in &self.bags {
            let parts: Vec<String> = bag.iter().map(|v| v.to_string()).collect();
            writeln!(s, "{}", parts.join(" ")).unwrap();
        }
        s
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|v| b.binary_search(v).is_ok())
}

/// Rewrites a valid decomposition into normal form without increasing width:
/// drops bags contained in a neighbouring bag, and removes a vertex `u` from
/// the last bag `X_i` of its interval when `u` has no neighbour in `X_i` and
/// also occurs in `X_{i-1}`. Repeats until nothing changes.
///
/// On connected graphs with at least two vertices the result satisfies
/// [`PathDecomposition::is_normalized`].
pub fn normalize_decomposition(g: &Graph, pd: &PathDecomposition) -> Result<PathDecomposition, GraphError> {
    pd.validate(g)?;
    let mut bags = pd.bags.clone();
    loop {
        let mut changed = false;

        let mut i = 0;
        while bags.len() > 1 && i < bags.len() {
            let redundant = (i + 1 < bags.len() && is_subset(&bags[i], &bags[i + 1]))
                || (i > 0 && is_subset(&bags[i], &bags[i - 1]));
            if redundant {
                bags.remove(i);
                changed = true;
            } else {
                i += 1;
            }
        }

        for i in 0..bags.len().saturating_sub(1) {
            let leaving: Vec<usize> =
                bags[i].iter().copied().filter(|u| bags[i + 1].binary_search(u).is_err()).collect();
            for u in leaving {
                let has_neighbor = g.neighbors(u).iter().any(|w| bags[i].binary_search(w).is_ok());
                if !has_neighbor && i > 0 && bags[i - 1].binary_search(&u).is_ok() {
                    let pos = bags[i].binary_search(&u).unwrap();
                    bags[i].remove(pos);
                    changed = true;
                }
            }
        }

        if !changed {
            break;
        }
    }
    let out = PathDecomposition { bags };
    debug_assert!(out.validate(g).is_ok());
    Ok(out)
}

/// Exact pathwidth via the vertex-separation dynamic program over vertex subsets:
/// `f(S) = max(|boundary(S)|, min_{v in S} f(S - v))`. Returns the width and a
/// decomposition of that width built from the optimal layout, normalized when
/// `g` is connected.
pub fn pathwidth_exact(g: &Graph, limit: usize) -> Result<(usize, PathDecomposition), GraphError> {
    let n = g.n();
    if n == 0 {
        return Err(GraphError::Empty);
    }
    let limit = limit.min(PATHWIDTH_HARD_LIMIT);
    if n > limit {
        return Err(GraphError::SizeLimit { n, limit });
    }
    let closed = g.closed_masks()?;
    let full = VertexSet::full(n).0 as usize;
    let size = full + 1;
    let boundary = |s: usize| -> u8 {
        let set = VertexSet(s as u64);
        set.iter().filter(|&v| !closed[v].is_subset(set)).count() as u8
    };
    let mut f = vec![0u8; size];
    let mut choice = vec![0u8; size];
    for s in 1..size {
        let mut best = u8::MAX;
        let mut arg = 0u8;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let val = f[s & !(1 << v)];
            if val < best {
                best = val;
                arg = v as u8;
            }
        }
        f[s] = best.max(boundary(s));
        choice[s] = arg;
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = choice[s] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();

    let mut bags = Vec::with_capacity(n);
    let mut prefix = 0usize;
    for &v in &order {
        let mut bag: Vec<usize> =
            VertexSet(prefix as u64).iter().filter(|&u| !closed[u].is_subset(VertexSet(prefix as u64))).collect();
        bag.push(v);
        bags.push(bag);
        prefix |= 1 << v;
    }
    let mut pd = PathDecomposition::new(bags);
    debug_assert_eq!(pd.width(), f[full] as usize);
    if g.is_connected() {
        pd = normalize_decomposition(g, &pd)?;
    }
    Ok((f[full] as usize, pd))
}
