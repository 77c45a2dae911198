use locgame::bush::{bush_number, check_chain, domination_number};
use locgame::graph::generators::*;
use locgame::graph::{
    all_graphs, connected_graphs, normalize_decomposition, pathwidth_exact, Graph, PathDecomposition, VertexSet,
};
use locgame::locating::{
    is_locating_set, min_dominating_locating_set, min_locating_set, reduce_add_isolated, reduce_add_uvw,
    reduce_multiuniversal, undominated,
};
use locgame::solver::{
    localization_number, metric_dimension, partition_by_signature, solve, AdversarialRobber, Arena, ProbeSet,
};
use locgame::strategies::{path_strategy, pathwidth_strategy, verify_strategy, SolvedStrategy, Strategy as _};
use locgame::Budget;
use proptest::prelude::*;

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        out(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

/// Vertex separation number by trying every layout.
fn vertex_separation(g: &Graph) -> usize {
    let mut best = usize::MAX;
    let mut order: Vec<usize> = (0..g.n()).collect();
    permutations(&mut order, 0, &mut |layout| {
        let mut pos = vec![0; layout.len()];
        for (i, &v) in layout.iter().enumerate() {
            pos[v] = i;
        }
        let worst = (0..layout.len())
            .map(|i| layout[..=i].iter().filter(|&&u| g.neighbors(u).iter().any(|&w| pos[w] > i)).count())
            .max()
            .unwrap_or(0);
        best = best.min(worst);
    });
    best
}

fn zeta(g: &Graph) -> usize {
    localization_number(g, g.n(), &Budget::default()).unwrap().zeta.unwrap()
}

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (2usize..=8, 0.15f64..0.8, any::<u64>()).prop_map(|(n, p, seed)| random_connected(n, p, seed).unwrap())
}

#[test]
fn pathwidth_matches_vertex_separation() {
    for n in 1..=6 {
        for g in all_graphs(n) {
            let (w, pd) = pathwidth_exact(&g, 10).unwrap();
            assert_eq!(w, vertex_separation(&g), "{}", g.to_text());
            pd.validate(&g).unwrap();
            assert_eq!(pd.width(), w);
            if g.is_connected() && n >= 2 {
                assert!(pd.is_normalized(&g));
            }
        }
    }
}

#[test]
fn belief_ranks_are_monotone_under_inclusion() {
    for n in 2..=6 {
        for (g, k) in connected_graphs(n).into_iter().flat_map(|g| [(g.clone(), 1), (g, 2)]) {
            let arena = Arena::new(&g).unwrap();
            let subsets = 1u64 << n;
            let rank: Vec<Option<u32>> = (1..subsets)
                .map(|b| {
                    let b = VertexSet(b);
                    solve(&arena, k, b, &Budget::default()).unwrap().rank_of(b).unwrap()
                })
                .collect();
            for small in 1..subsets {
                for big in 1..subsets {
                    if small & big != small {
                        continue;
                    }
                    if let Some(r) = rank[big as usize - 1] {
                        let s = rank[small as usize - 1].expect("a subset of a winning belief wins");
                        assert!(s <= r, "{} ⊆ {} on {}", small, big, g.to_text());
                    }
                }
            }
        }
    }
}

#[test]
fn losing_teams_meet_a_counterexample() {
    for n in 3..=6 {
        for g in connected_graphs(n) {
            let z = zeta(&g);
            if z < 2 {
                continue;
            }
            let mut robber = AdversarialRobber::new(Arena::new(&g).unwrap(), z - 1, Budget::default()).unwrap();
            assert_eq!(robber.rank(VertexSet::full(n)).unwrap(), None);
            let (_, pd) = pathwidth_exact(&g, 10).unwrap();
            let weak = pathwidth_strategy(&g, &pd).unwrap().truncated(z - 1);
            let report = verify_strategy(&g, &weak, 4 * n).unwrap();
            assert!(!report.verdict.is_verified(), "{}", g.to_text());
            assert!(!report.trace.is_empty());
        }
    }
}

#[test]
fn path_strategy_rejects_non_paths() {
    assert!(path_strategy(&cycle(5).unwrap()).is_err());
    assert!(path_strategy(&star(4).unwrap()).is_err());
}

#[test]
fn locating_sets_leave_at_most_one_vertex_undominated() {
    for n in 1..=6 {
        for g in all_graphs(n) {
            let (l, wl) = min_locating_set(&g).unwrap();
            let (dl, wd) = min_dominating_locating_set(&g).unwrap();
            assert!(is_locating_set(&g, &wl).unwrap());
            assert!(undominated(&g, &wl).unwrap() <= 1);
            assert_eq!(undominated(&g, &wd).unwrap(), 0);
            assert!(dl == l || dl == l + 1, "{} {l} {dl}", g.to_text());
        }
    }
}

fn keeps_input(g: &Graph, h: &Graph) {
    let labels: Vec<usize> = (0..g.n()).collect();
    assert_eq!(&h.induced(&labels), g);
}

#[test]
fn reductions_keep_original_labels() {
    for n in 2..=5 {
        for g in connected_graphs(n) {
            let iso = reduce_add_isolated(&g);
            keeps_input(&g, &iso.graph);
            assert_eq!(iso.added, vec![n]);
            assert_eq!(iso.graph.degree(n), 0);

            let uvw = reduce_add_uvw(&g).unwrap();
            keeps_input(&g, &uvw.graph);
            let [u, v, w] = uvw.added[..] else { panic!() };
            assert_eq!(uvw.graph.degree(u), n + 2);
            assert!(uvw.graph.has_edge(v, w));
            assert_eq!((uvw.graph.degree(v), uvw.graph.degree(w)), (2, 2));

            if let Ok(out) = reduce_multiuniversal(&g) {
                keeps_input(&g, &out.graph);
                assert_eq!(out.added.len(), n + 1);
                for &x in &out.added {
                    assert_eq!(out.graph.neighbors(x), &(0..n).collect::<Vec<_>>()[..]);
                }
            }
        }
    }
    assert!(reduce_multiuniversal(&path(4).unwrap()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalization_yields_valid_normalized_decompositions(g in graph_strategy(), split in 1usize..4) {
        let n = g.n();
        let mut bags = vec![(0..n).collect::<Vec<_>>()];
        for i in 0..split.min(n) {
            bags.push((i..n).collect());
        }
        let pd = PathDecomposition::new(bags);
        let out = normalize_decomposition(&g, &pd).unwrap();
        out.validate(&g).unwrap();
        prop_assert!(out.is_normalized(&g));
        prop_assert!(out.width() <= pd.width());
    }

    #[test]
    fn partitions_split_beliefs_by_answer(g in graph_strategy(), belief in any::<u64>(), picks in prop::collection::vec(any::<usize>(), 1..4)) {
        let n = g.n();
        let arena = Arena::new(&g).unwrap();
        let belief = VertexSet(belief) & VertexSet::full(n);
        prop_assume!(!belief.is_empty());
        let mut p: Vec<usize> = picks.iter().map(|x| x % n).collect();
        p.sort_unstable();
        p.dedup();
        let probe = ProbeSet::new(p.clone()).unwrap();
        let classes = partition_by_signature(&arena, belief, &probe).unwrap();
        let mut union = VertexSet::EMPTY;
        for (i, c) in classes.iter().enumerate() {
            prop_assert!((union & c.members).is_empty());
            union |= c.members;
            for v in c.members.iter() {
                let d: Vec<u32> = p.iter().map(|&q| arena.distances().get(q, v).unwrap()).collect();
                prop_assert_eq!(&d, &c.signature.0);
            }
            for other in &classes[i + 1..] {
                prop_assert_ne!(&c.signature, &other.signature);
            }
        }
        prop_assert_eq!(union, belief);
    }

    #[test]
    fn zeta_is_bounded_by_dimension_and_pathwidth(g in graph_strategy()) {
        let z = zeta(&g);
        let (dim, _) = metric_dimension(&g).unwrap();
        let (pw, _) = pathwidth_exact(&g, 10).unwrap();
        prop_assert!(z <= dim.max(1));
        prop_assert!(z <= pw.max(1));
    }

    #[test]
    fn solved_strategies_replay_within_their_turns(g in graph_strategy()) {
        let res = localization_number(&g, g.n(), &Budget::default()).unwrap();
        let s = SolvedStrategy::new(&g, &res).unwrap();
        prop_assert_eq!(s.k(), res.zeta.unwrap());
        let report = verify_strategy(&g, &s, 4 * g.n()).unwrap();
        prop_assert!(report.verdict.is_verified());
        prop_assert_eq!(report.turns, res.turns);
    }

    #[test]
    fn chain_and_domination_bounds(g in (2usize..=7, 0.2f64..0.8, any::<u64>()).prop_map(|(n, p, s)| random_connected(n, p, s).unwrap())) {
        let r = check_chain(&g, &Budget::default()).unwrap();
        prop_assert!(r.holds, "{:?}", r);
        let (gamma, _) = domination_number(&g).unwrap();
        let b = bush_number(&g, g.n(), &Budget::default()).unwrap().k.unwrap();
        prop_assert_eq!(b, r.bush);
        prop_assert!(b <= gamma);
    }
}
