use serde::{Deserialize, Serialize};

use super::BushError;
use crate::graph::generators::{ary_tree, subdivide, MAX_GENERATED_VERTICES};
use crate::graph::{Graph, GraphError};

/// A tree with a 0/1 vertex coloring and regular/subdivision labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredTree {
    pub tree: Graph,
    pub root: usize,
    pub colors: Vec<u8>,
    /// `true` for vertices of the tree before subdivision.
    pub regular: Vec<bool>,
}

impl ColoredTree {
    /// All vertices regular; errors if `colors` has the wrong length or
    /// holds values other than 0 and 1.
    pub fn new(tree: Graph, root: usize, colors: Vec<u8>) -> Result<Self, BushError> {
        let n = tree.n();
        if colors.len() != n || colors.iter().any(|&c| c > 1) {
            return Err(BushError::InvalidParameter(format!("need {n} colors in {{0,1}}")));
        }
        if root >= n {
            return Err(GraphError::VertexOutOfRange { vertex: root, n }.into());
        }
        Ok(ColoredTree { tree, root, colors, regular: vec![true; n] })
    }

    pub fn ones(&self) -> usize {
        self.colors.iter().filter(|&&c| c == 1).count()
    }

    /// Graph text followed by a `colors b_0 ... b_{n-1}` line.
    pub fn to_text(&self) -> String {
        let mut s = self.tree.to_text();
        let cs: Vec<String> = self.colors.iter().map(|c| c.to_string()).collect();
        s.push_str("colors ");
        s.push_str(&cs.join(" "));
        s.push('\n');
        s
    }

    /// Inverse of [`ColoredTree::to_text`]; a missing colors line means all 0.
    /// The root is vertex 0.
    pub fn parse(text: &str) -> Result<Self, BushError> {
        let mut graph_lines = Vec::new();
        let mut colors = None;
        for (i, line) in text.lines().enumerate() {
            if let Some(rest) = line.trim().strip_prefix("colors") {
                let cs = rest
                    .split_whitespace()
                    .map(|t| match t {
                        "0" => Ok(0u8),
                        "1" => Ok(1u8),
                        _ => Err(GraphError::Parse { line: i + 1, msg: format!("bad color {t:?}") }),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                colors = Some(cs);
            } else {
                graph_lines.push(line);
            }
        }
        let tree = Graph::parse(&graph_lines.join("\n"))?;
        let n = tree.n();
        ColoredTree::new(tree, 0, colors.unwrap_or_else(|| vec![0; n]))
    }
}

/// `(regular, total)` vertex counts of the complete `arity`-ary tree of the
/// given height with every edge subdivided `subdivisions` times.
pub fn t_counts(arity: usize, height: usize, subdivisions: usize) -> Option<(u128, u128)> {
    let a = arity as u128;
    let mut regular: u128 = 1;
    let mut level: u128 = 1;
    for _ in 0..height {
        level = level.checked_mul(a)?;
        regular = regular.checked_add(level)?;
    }
    let total = regular.checked_add((subdivisions as u128).checked_mul(regular - 1)?)?;
    Some((regular, total))
}

/// Builds the subdivided tree. Regular vertices come first in breadth-first
/// order (root 0), then subdivision vertices edge by edge. All colors are 0.
pub fn build_t(arity: usize, height: usize, subdivisions: usize) -> Result<ColoredTree, BushError> {
    if arity == 0 || height == 0 {
        return Err(BushError::InvalidParameter("arity and height must be at least 1".into()));
    }
    let (regular, total) = t_counts(arity, height, subdivisions)
        .filter(|&(_, t)| t <= MAX_GENERATED_VERTICES as u128)
        .ok_or_else(|| BushError::InvalidParameter(format!("tree exceeds {MAX_GENERATED_VERTICES} vertices")))?;
    let base = ary_tree(arity, height)?;
    let tree = subdivide(&base, subdivisions)?;
    debug_assert_eq!(tree.n() as u128, total);
    let regular = (0..tree.n()).map(|v| (v as u128) < regular).collect();
    Ok(ColoredTree { colors: vec![0; tree.n()], tree, root: 0, regular })
}

/// Parent pointers and a preorder of every component; errors on a cycle.
fn forest_order(g: &Graph, root: usize) -> Result<(Vec<usize>, Vec<usize>), BushError> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let starts = std::iter::once(root).chain((0..n).filter(|&v| v != root));
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in g.neighbors(v) {
                if w == parent[v] {
                    continue;
                }
                if seen[w] {
                    return Err(BushError::Cyclic);
                }
                seen[w] = true;
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    Ok((parent, order))
}

/// Maximum matching among edges whose endpoints have different colors.
/// Edges are returned as `(parent, child)` pairs sorted ascending.
pub fn max_bicolored_matching(t: &ColoredTree) -> Result<Vec<(usize, usize)>, BushError> {
    let g = &t.tree;
    let n = g.n();
    let (parent, order) = forest_order(g, t.root)?;
    // free[v]: best in the subtree of v with v unmatched; best[v]: overall best
    let mut free = vec![0usize; n];
    let mut best = vec![0usize; n];
    let mut take: Vec<Option<usize>> = vec![None; n];
    for &v in order.iter().rev() {
        let children = g.neighbors(v).iter().copied().filter(|&c| parent[c] == v);
        let mut sum = 0;
        let mut gain = 0;
        let mut arg = None;
        for c in children {
            sum += best[c];
            if t.colors[c] != t.colors[v] {
                let alt = free[c] + 1;
                if alt > best[c] && alt - best[c] > gain {
                    gain = alt - best[c];
                    arg = Some(c);
                }
            }
        }
        free[v] = sum;
        best[v] = sum + gain;
        take[v] = arg;
    }
    let mut matched = Vec::new();
    // (vertex, must stay unmatched)
    let roots: Vec<usize> = order.iter().copied().filter(|&v| parent[v] == usize::MAX).collect();
    let mut stack: Vec<(usize, bool)> = roots.into_iter().map(|r| (r, false)).collect();
    while let Some((v, forced_free)) = stack.pop() {
        let partner = if forced_free { None } else { take[v] };
        if let Some(c) = partner {
            matched.push((v, c));
        }
        for &c in g.neighbors(v) {
            if parent[c] == v {
                stack.push((c, Some(c) == partner));
            }
        }
    }
    matched.sort_unstable();
    Ok(matched)
}

/// Which vertex count to use for the tree in the lemma hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaCount {
    /// `(12k+1)^h + 1`
    Stated,
    /// `((12k+1)^{h+1} - 1) / (12k)`, the actual vertex count of the tree.
    Actual,
}

/// Vertex count of the complete `(12k+1)`-ary tree of height `h` under the
/// chosen interpretation.
pub fn tree_vertex_count(k: usize, h: usize, count: LemmaCount) -> u128 {
    let a = 12 * k as u128 + 1;
    match count {
        LemmaCount::Stated => a.pow(h as u32) + 1,
        LemmaCount::Actual => (a.pow(h as u32 + 1) - 1) / (a - 1),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaOutcome {
    pub count: LemmaCount,
    pub n_hk: u128,
    pub ones: usize,
    pub matching: usize,
    pub holds: bool,
    pub witness: Vec<(usize, usize)>,
}

/// Checks that a coloring of the complete `(12k+1)`-ary tree of height `h`
/// satisfying `(n+h-8k)/2 <= |f^-1(1)| < (n+6k-h)/2` has a bicolored
/// matching of size at least `h`. Colorings outside the hypothesis are
/// rejected rather than reported as failures.
pub fn lemma_bimatching_check(k: usize, h: usize, colors: &[u8], count: LemmaCount) -> Result<LemmaOutcome, BushError> {
    if k == 0 || h == 0 || h > 6 * k {
        return Err(BushError::InvalidParameter(format!("need 1 <= h <= 6k, got k={k}, h={h}")));
    }
    let tree = ary_tree(12 * k + 1, h)?;
    let t = ColoredTree::new(tree, 0, colors.to_vec())?;
    let n_hk = tree_vertex_count(k, h, count);
    let ones = t.ones();
    let (n, hh, kk, o) = (n_hk as i128, h as i128, k as i128, ones as i128);
    if !(n + hh - 8 * kk <= 2 * o && 2 * o < n + 6 * kk - hh) {
        return Err(BushError::Hypothesis(format!("{ones} ones outside the range for n = {n_hk}")));
    }
    let witness = max_bicolored_matching(&t)?;
    Ok(LemmaOutcome { count, n_hk, ones, matching: witness.len(), holds: witness.len() >= h, witness })
}
