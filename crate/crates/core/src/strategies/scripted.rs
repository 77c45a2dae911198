use super::{ScheduledStrategy, StrategyError};
use crate::graph::{Graph, PathDecomposition};
use crate::solver::ProbeSet;

fn probe(v: Vec<usize>) -> ProbeSet {
    ProbeSet::new(v).expect("scripted probes are nonempty and distinct")
}

/// One probe at the lowest-index end of a path.
pub fn path_strategy(g: &Graph) -> Result<ScheduledStrategy, StrategyError> {
    let n = g.n();
    if !g.is_connected() || g.m() + 1 != n || (0..n).any(|v| g.degree(v) > 2) {
        return Err(StrategyError::WrongFamily("a path"));
    }
    let end = (0..n).find(|&v| g.degree(v) <= 1).unwrap();
    Ok(ScheduledStrategy::new("path", vec![probe(vec![end])], true, Some(1)))
}

/// Probes the leaves one per turn in index order.
pub fn star_strategy(g: &Graph) -> Result<ScheduledStrategy, StrategyError> {
    let n = g.n();
    if n < 2 || g.m() + 1 != n {
        return Err(StrategyError::WrongFamily("a star"));
    }
    let center = (0..n).find(|&v| g.degree(v) == n - 1).ok_or(StrategyError::WrongFamily("a star"))?;
    let leaves: Vec<usize> = (0..n).filter(|&v| v != center).collect();
    let bound = leaves.len().saturating_sub(1).max(1);
    let probes = leaves.into_iter().map(|l| probe(vec![l])).collect();
    Ok(ScheduledStrategy::new("star", probes, true, Some(bound)))
}

/// Parts of a bipartite graph, smaller part first; on equal sizes the part
/// holding vertex 0 comes first.
fn parts(g: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let side = g.bipartition()?;
    let (mut a, mut b): (Vec<usize>, Vec<usize>) = (0..g.n()).partition(|&v| side[v] == side[0]);
    if a.len() > b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    Some((a, b))
}

/// Every turn: all of `a` except its highest vertex, plus the next vertex
/// of `b` in index order.
fn parity_schedule(name: &str, a: &[usize], b: &[usize]) -> ScheduledStrategy {
    if a.is_empty() || b.is_empty() {
        return ScheduledStrategy::new(name, vec![probe([a, b].concat())], true, Some(1));
    }
    let kept = &a[..a.len() - 1];
    let probes = b
        .iter()
        .map(|&x| {
            let mut p = kept.to_vec();
            p.push(x);
            probe(p)
        })
        .collect();
    ScheduledStrategy::new(name, probes, true, Some(b.len()))
}

pub fn complete_bipartite_strategy(g: &Graph) -> Result<ScheduledStrategy, StrategyError> {
    let err = StrategyError::WrongFamily("complete bipartite");
    if !g.is_connected() {
        return Err(err);
    }
    let (a, b) = parts(g).ok_or(err)?;
    if g.m() != a.len() * b.len() {
        return Err(StrategyError::WrongFamily("complete bipartite"));
    }
    Ok(parity_schedule("complete-bipartite", &a, &b))
}

pub fn bipartite_parity_strategy(g: &Graph) -> Result<ScheduledStrategy, StrategyError> {
    if !g.is_connected() {
        return Err(StrategyError::WrongFamily("connected"));
    }
    let (a, b) = parts(g).ok_or(StrategyError::WrongFamily("bipartite"))?;
    Ok(parity_schedule("bipartite-parity", &a, &b))
}

/// Probes `X_i \ {v_i}` at turn `i`, where `v_i` is the smallest neighbour in
/// `X_i` of the smallest vertex leaving after bag `i`; in the last bag `v_t`
/// is the smallest vertex new to that bag.
pub fn pathwidth_strategy(g: &Graph, pd: &PathDecomposition) -> Result<ScheduledStrategy, StrategyError> {
    pd.validate(g)?;
    if !g.is_connected() {
        return Err(StrategyError::WrongFamily("connected"));
    }
    if !pd.is_normalized(g) {
        return Err(StrategyError::NotNormalized);
    }
    let bags = pd.bags();
    let t = bags.len();
    if g.n() == 1 {
        return Ok(ScheduledStrategy::new("pathwidth", vec![probe(vec![0])], false, Some(1)));
    }
    let mut probes = Vec::with_capacity(t);
    for i in 0..t {
        let bag = &bags[i];
        let v = if i + 1 < t {
            let u = *bag.iter().find(|x| !bags[i + 1].contains(x)).expect("normalized");
            *bag.iter().find(|&&w| g.has_edge(u, w)).expect("normalized")
        } else {
            let prev: &[usize] = if i == 0 { &[] } else { &bags[i - 1] };
            *bag.iter().find(|x| !prev.contains(x)).expect("normalized")
        };
        probes.push(probe(bag.iter().copied().filter(|&x| x != v).collect()));
    }
    Ok(ScheduledStrategy::new("pathwidth", probes, false, Some(t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;
    use crate::graph::{normalize_decomposition, pathwidth_exact};
    use crate::strategies::Strategy;

    fn verts(s: &ScheduledStrategy) -> Vec<Vec<usize>> {
        s.probes().iter().map(|p| p.vertices().to_vec()).collect()
    }

    #[test]
    fn path_probes_an_end() {
        assert_eq!(verts(&path_strategy(&path(2).unwrap()).unwrap()), vec![vec![0]]);
        let relabeled = Graph::from_edges(3, [(0, 1), (0, 2)]).unwrap();
        assert_eq!(verts(&path_strategy(&relabeled).unwrap()), vec![vec![1]]);
        assert!(path_strategy(&cycle(4).unwrap()).is_err());
        assert!(path_strategy(&star(4).unwrap()).is_err());
    }

    #[test]
    fn star_probes_leaves_in_order() {
        let s = star_strategy(&star(4).unwrap()).unwrap();
        assert_eq!(verts(&s), vec![vec![1], vec![2], vec![3]]);
        assert_eq!(s.turn_bound(), Some(2));
        assert_eq!(star_strategy(&star(2).unwrap()).unwrap().turn_bound(), Some(1));
        assert!(star_strategy(&path(4).unwrap()).is_err());
    }

    #[test]
    fn complete_bipartite_shape() {
        let s = complete_bipartite_strategy(&complete_bipartite(2, 3).unwrap()).unwrap();
        assert_eq!(verts(&s), vec![vec![0, 2], vec![0, 3], vec![0, 4]]);
        assert_eq!(s.k(), 2);
        let swapped = complete_bipartite_strategy(&complete_bipartite(3, 2).unwrap()).unwrap();
        assert_eq!(verts(&swapped), vec![vec![0, 3], vec![1, 3], vec![2, 3]]);
        assert_eq!(complete_bipartite_strategy(&star(6).unwrap()).unwrap().k(), 1);
        assert!(complete_bipartite_strategy(&path(4).unwrap()).is_err());
    }

    #[test]
    fn bipartite_parity_shape() {
        assert_eq!(bipartite_parity_strategy(&cycle(6).unwrap()).unwrap().k(), 3);
        assert_eq!(bipartite_parity_strategy(&path(4).unwrap()).unwrap().k(), 2);
        assert!(bipartite_parity_strategy(&cycle(5).unwrap()).is_err());
    }

    #[test]
    fn pathwidth_probes() {
        let g = complete(4).unwrap();
        let (_, pd) = pathwidth_exact(&g, 10).unwrap();
        let s = pathwidth_strategy(&g, &pd).unwrap();
        assert_eq!(verts(&s), vec![vec![1, 2, 3]]);

        let g = path(4).unwrap();
        let pd =
            normalize_decomposition(&g, &PathDecomposition::new(vec![vec![0, 1], vec![1, 2], vec![2, 3]])).unwrap();
        let s = pathwidth_strategy(&g, &pd).unwrap();
        assert_eq!(verts(&s), vec![vec![0], vec![1], vec![2]]);

        let raw = PathDecomposition::new(vec![vec![0, 1], vec![0, 1], vec![1, 2], vec![2, 3]]);
        assert!(matches!(pathwidth_strategy(&g, &raw), Err(StrategyError::NotNormalized)));
    }
}
