//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails or exceeds its time limit.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use locgame::bush::{
    build_t, bush_number, bush_scaling_experiment, check_chain, domination_number, lemma_bimatching_check,
    max_bicolored_matching, BushError, ColoredTree, LemmaCount,
};
use locgame::graph::generators::*;
use locgame::graph::{all_graphs, all_pairs_distances, connected_graphs, pathwidth_exact, trees, Graph};
use locgame::locating::{verify_add_isolated, verify_add_uvw, verify_theorem_5_3};
use locgame::plane::{
    approx_one_cop, derive_delta, one_cop_escape, trilaterate, two_cop_play, CenterProber, LineHugger, Point,
    PredictingProber, Prober, RandomProber, RandomWalk, GAME_TOL, GEOMETRY_TOL,
};
use locgame::solver::{localization_number, metric_dimension, Budget};
use locgame::strategies::{
    bipartite_parity_strategy, complete_bipartite_strategy, path_strategy, pathwidth_strategy, star_strategy,
    verify_strategy, Strategy,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn zeta(g: &Graph) -> usize {
    localization_number(g, g.n(), &Budget::default()).unwrap().zeta.unwrap()
}

fn fig1() -> Graph {
    Graph::from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (1, 4), (1, 5), (2, 5)]).unwrap()
}

fn c1_exact_values() -> Check {
    for n in 2..=10 {
        ensure(zeta(&path(n).unwrap()) == 1, || format!("zeta(P_{n}) != 1"))?;
    }
    for n in 2..=9 {
        ensure(zeta(&star(n).unwrap()) == 1, || format!("zeta(S_{n}) != 1"))?;
    }
    for n in 2..=7 {
        let z = zeta(&complete(n).unwrap());
        ensure(z == n - 1, || format!("zeta(K_{n}) = {z}"))?;
    }
    for a in 1..=4 {
        for b in a..=4 {
            let z = zeta(&complete_bipartite(a, b).unwrap());
            ensure(z == a.min(b), || format!("zeta(K_{a},{b}) = {z}"))?;
        }
    }
    Ok("paths 2..10, stars 2..9, K_2..K_7, K_{a,b} a<=b<=4".into())
}

fn c2_figure_pair() -> Check {
    let h = zeta(&complete(4).unwrap());
    let g = zeta(&fig1());
    ensure(h == 3 && g == 2, || format!("zeta(H) = {h}, zeta(G) = {g}"))?;
    Ok("zeta(K_4) = 3, zeta(G) = 2".into())
}

fn c3_inequalities() -> Check {
    let mut corpus: Vec<Graph> = (1..=6).flat_map(connected_graphs).collect();
    let base = corpus.len();
    corpus.extend((0..200).map(|s| random_connected(7, 0.3, s).unwrap()));
    for g in &corpus {
        let z = zeta(g);
        let (dim, _) = metric_dimension(g).unwrap();
        let (pw, _) = pathwidth_exact(g, 10).unwrap();
        ensure(z <= dim.max(1), || format!("zeta {z} > dim {dim} on {:?}", g.to_text()))?;
        ensure(z <= pw.max(1), || format!("zeta {z} > pw {pw} on {:?}", g.to_text()))?;
        if let Some(side) = g.bipartition() {
            let a = side.iter().filter(|&&s| s).count();
            let m = a.min(g.n() - a).max(1);
            ensure(z <= m, || format!("zeta {z} > min part {m}"))?;
        }
    }
    Ok(format!("{base} catalogue graphs + 200 random n=7"))
}

fn c4_interval_tightness() -> Check {
    let cases: Vec<(usize, Vec<(i64, i64)>)> = vec![
        (1, vec![(0, 1), (1, 2)]),
        (1, vec![(0, 1), (1, 2), (2, 3), (3, 4)]),
        (2, vec![(0, 1), (0, 1), (0, 1)]),
        (2, vec![(0, 1), (0, 3), (1, 3), (2, 3)]),
        (3, vec![(0, 1); 4]),
        (3, vec![(0, 2), (0, 2), (0, 2), (1, 3), (3, 4)]),
    ];
    let mut found = Vec::new();
    for (w, iv) in cases {
        let g = interval(&iv).unwrap();
        let (pw, _) = pathwidth_exact(&g, 10).unwrap();
        let z = zeta(&g);
        ensure(pw == w && z == w, || format!("intervals {iv:?}: pw {pw}, zeta {z}, want {w}"))?;
        found.push(format!("w={w}:n={}", g.n()));
    }
    Ok(found.join(" "))
}

fn verified(g: &Graph, s: &dyn Strategy) -> Result<usize, String> {
    let r = verify_strategy(g, s, 4 * g.n() + 4).map_err(|e| e.to_string())?;
    ensure(r.verdict.is_verified(), || format!("{} not verified on {:?}: {:?}", s.name(), g.to_text(), r.verdict))?;
    if let Some(b) = s.turn_bound() {
        ensure(r.turns <= b, || format!("{} took {} > {b} turns", s.name(), r.turns))?;
    }
    Ok(r.turns)
}

fn c5_scripted_strategies() -> Check {
    let mut count = 0;
    for n in 2..=10 {
        let g = path(n).unwrap();
        verified(&g, &path_strategy(&g).unwrap())?;
        count += 1;
    }
    for n in 2..=9 {
        let g = star(n).unwrap();
        verified(&g, &star_strategy(&g).unwrap())?;
        count += 1;
    }
    for a in 1..=4 {
        for b in a..=4 {
            let g = complete_bipartite(a, b).unwrap();
            let s = complete_bipartite_strategy(&g).unwrap();
            ensure(s.k() == a, || format!("K_{a},{b} uses {} probes", s.k()))?;
            verified(&g, &s)?;
            count += 1;
        }
    }
    let mut max_bip_turns = 0;
    for n in 1..=7 {
        for g in connected_graphs(n) {
            if g.bipartition().is_some() {
                max_bip_turns = max_bip_turns.max(verified(&g, &bipartite_parity_strategy(&g).unwrap())?);
                count += 1;
            }
            let (w, pd) = pathwidth_exact(&g, 10).unwrap();
            let s = pathwidth_strategy(&g, &pd).map_err(|e| e.to_string())?;
            ensure(s.k() <= w.max(1), || "pathwidth strategy exceeds width".into())?;
            verified(&g, &s)?;
            count += 1;
        }
    }
    Ok(format!("{count} strategy/graph pairs verified; bipartite-parity worst case {max_bip_turns} turns"))
}

fn c6_chain() -> Check {
    let b = Budget::default();
    let mut count = 0;
    for n in 1..=6 {
        for g in connected_graphs(n) {
            let r = check_chain(&g, &b).map_err(|e| e.to_string())?;
            ensure(r.holds, || format!("chain fails: {r:?} on {:?}", g.to_text()))?;
            count += 1;
        }
    }
    let mut dom = 0;
    for n in 1..=8 {
        for g in connected_graphs(n) {
            let bush = bush_number(&g, n, &b).map_err(|e| e.to_string())?.k.unwrap();
            let (gamma, _) = domination_number(&g).unwrap();
            ensure(bush <= gamma, || format!("B {bush} > gamma {gamma}"))?;
            dom += 1;
        }
    }
    Ok(format!("chain on {count} graphs, B <= gamma on {dom} graphs"))
}

fn sample_coloring(rng: &mut ChaCha8Rng, n: usize, ones: usize) -> Vec<u8> {
    let mut idx: Vec<usize> = (0..n).collect();
    for i in 0..ones {
        let j = rng.gen_range(i..n);
        idx.swap(i, j);
    }
    let mut c = vec![0u8; n];
    for &i in &idx[..ones] {
        c[i] = 1;
    }
    c
}

fn c7_lemma() -> Check {
    let mut report = Vec::new();
    for count in [LemmaCount::Stated, LemmaCount::Actual] {
        let mut checked = 0;
        for mask in 0u32..(1 << 14) {
            let colors: Vec<u8> = (0..14).map(|i| (mask >> i & 1) as u8).collect();
            match lemma_bimatching_check(1, 1, &colors, count) {
                Ok(out) => {
                    ensure(out.holds, || format!("h=1 coloring {mask:#x} has matching {}", out.matching))?;
                    checked += 1;
                }
                Err(BushError::Hypothesis(_)) => {}
                Err(e) => return Err(e.to_string()),
            }
        }
        let n = locgame::bush::tree_vertex_count(1, 2, count) as i64;
        let lo = ((n + 2 - 8) as f64 / 2.0).ceil() as usize;
        let hi = ((n + 6 - 2) as f64 / 2.0).ceil() as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        for _ in 0..10_000 {
            let ones = rng.gen_range(lo..hi);
            let colors = sample_coloring(&mut rng, 183, ones);
            let out = lemma_bimatching_check(1, 2, &colors, count).map_err(|e| e.to_string())?;
            ensure(out.holds, || format!("h=2 random coloring with {ones} ones has matching {}", out.matching))?;
        }
        report.push(format!("{count:?}: {checked} h=1 colorings, ones {lo}..{} at h=2", hi - 1));
    }
    Ok(report.join("; "))
}

fn brute_matching(t: &ColoredTree) -> usize {
    let edges: Vec<(usize, usize)> = t.tree.edges().filter(|&(u, v)| t.colors[u] != t.colors[v]).collect();
    fn go(edges: &[(usize, usize)], used: u32) -> usize {
        match edges.split_first() {
            None => 0,
            Some((&(u, v), rest)) => {
                let skip = go(rest, used);
                if used >> u & 1 == 0 && used >> v & 1 == 0 {
                    skip.max(1 + go(rest, used | 1 << u | 1 << v))
                } else {
                    skip
                }
            }
        }
    }
    go(&edges, 0)
}

fn c8_matching_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut total = 0;
    for n in 1..=10 {
        for t in trees(n) {
            for _ in 0..1000 {
                let colors: Vec<u8> = (0..n).map(|_| rng.gen_range(0..2)).collect();
                let ct = ColoredTree::new(t.clone(), 0, colors).unwrap();
                let dp = max_bicolored_matching(&ct).unwrap().len();
                let bf = brute_matching(&ct);
                ensure(dp == bf, || format!("dp {dp} != brute {bf}"))?;
                total += 1;
            }
        }
    }
    Ok(format!("{total} colored trees"))
}

fn c9_counts() -> Check {
    let t = build_t(13, 1, 2).unwrap();
    ensure(t.tree.n() == 40, || format!("(13,1,2) has {} vertices", t.tree.n()))?;
    let t = build_t(13, 2, 2).unwrap();
    let regular = t.regular.iter().filter(|&&r| r).count();
    ensure(t.tree.n() == 547 && regular == 183, || format!("(13,2,2): {} total, {regular} regular", t.tree.n()))?;
    ensure(regular as u128 == (13u128.pow(3) - 1) / 12, || "regular count formula".into())?;
    let rows = bush_scaling_experiment(&[(2, 1, 2), (3, 1, 2), (2, 2, 2), (3, 2, 2)], 3, &Budget::default())
        .map_err(|e| e.to_string())?;
    let trend: Vec<String> =
        rows.iter().map(|r| format!("({},{},{})->{:?}", r.arity, r.height, r.subdivisions, r.bush_number)).collect();
    Ok(format!("40 / 547 / 183; scaling {}", trend.join(" ")))
}

fn c10_reductions() -> Check {
    let b = Budget::default();
    let mut counts = [0; 3];
    for n in 1..=5 {
        for g in all_graphs(n) {
            let r = verify_add_isolated(&g).map_err(|e| e.to_string())?;
            ensure(r.equal, || format!("add-isolated {r:?}"))?;
            counts[0] += 1;
        }
    }
    for n in 2..=5 {
        for g in connected_graphs(n) {
            let r = verify_add_uvw(&g).map_err(|e| e.to_string())?;
            ensure(r.equal, || format!("add-uvw {r:?}"))?;
            counts[1] += 1;
        }
    }
    for n in 1..=4 {
        for g in connected_graphs(n) {
            if all_pairs_distances(&g).diameter().unwrap() > 2 {
                continue;
            }
            let r = verify_theorem_5_3(&g, &b).map_err(|e| e.to_string())?;
            ensure(r.report.equal, || format!("theorem on {:?}: {:?}", g.to_text(), r.report))?;
            counts[2] += 1;
        }
    }
    let c4 = verify_theorem_5_3(&cycle(4).unwrap(), &b).unwrap().report;
    ensure(c4.lhs - 1 == 2 && c4.rhs == 3, || format!("C_4 gives {c4:?}"))?;
    Ok(format!("isolated {}, uvw {}, multiuniversal {}; C_4 -> (2, 3)", counts[0], counts[1], counts[2]))
}

fn c11_geometry() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let pt = |r: &mut ChaCha8Rng| Point::new(r.gen_range(-100.0..100.0), r.gen_range(-100.0..100.0));
    let mut worst: f64 = 0.0;
    let mut done = 0;
    let mut collinear = 0;
    while done < 10_000 {
        let probes = [pt(&mut rng), pt(&mut rng), pt(&mut rng)];
        let x = pt(&mut rng);
        let d = [x.dist(probes[0]), x.dist(probes[1]), x.dist(probes[2])];
        match trilaterate(probes, d, GEOMETRY_TOL) {
            Ok(y) => worst = worst.max(y.dist(x)),
            Err(locgame::plane::PlaneError::Collinear) => {
                collinear += 1;
                continue;
            }
            Err(e) => return Err(e.to_string()),
        }
        done += 1;
    }
    ensure(worst <= 1e-9, || format!("trilateration error {worst:e}"))?;

    for seed in 0..1000u64 {
        let start = Point::new(rng.gen_range(-30.0..30.0), rng.gen_range(-30.0..30.0));
        let out = if seed % 2 == 0 {
            two_cop_play(&mut RandomWalk::new(start, seed), GEOMETRY_TOL)
        } else {
            two_cop_play(&mut LineHugger::new(start, seed, 32), GEOMETRY_TOL)
        }
        .map_err(|e| e.to_string())?;
        ensure(out.rounds <= 2 && out.located.dist(out.actual) <= GAME_TOL, || format!("two-cop seed {seed}"))?;
    }

    let probers: Vec<(&str, Box<dyn Prober>)> = vec![
        ("center", Box::new(CenterProber)),
        ("random", Box::new(RandomProber::new(3))),
        ("predicting", Box::new(PredictingProber)),
    ];
    let mut min_sep = f64::INFINITY;
    for (name, mut p) in probers {
        let t = one_cop_escape(p.as_mut(), 1000).map_err(|e| e.to_string())?;
        ensure(t.rounds.len() == 1000 && t.min_separation >= 1e-6, || format!("escape vs {name}"))?;
        min_sep = min_sep.min(t.min_separation);
    }

    let root = derive_delta(0.1).unwrap().root;
    ensure((root - 0.09582).abs() < 5e-6, || format!("delta root {root}"))?;
    let mut worst_ratio: f64 = 0.0;
    for eps in [0.5, 0.1, 0.01] {
        for seed in 0..1000u64 {
            let start = Point::new(rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0));
            let out = approx_one_cop(&mut RandomWalk::new(start, seed), eps).map_err(|e| e.to_string())?;
            let err = out.result.estimate.dist(out.actual);
            ensure(err <= 1.0 + eps, || format!("approx eps {eps} seed {seed}: error {err}"))?;
            worst_ratio = worst_ratio.max(err / (1.0 + eps));
        }
    }
    Ok(format!(
        "trilateration max error {worst:.1e} ({collinear} collinear triples redrawn); escape min separation {min_sep:.3}; delta root {root:.5}; worst approx error/(1+eps) {worst_ratio:.4}"
    ))
}

fn c12_performance() -> Check {
    let mut slowest = Duration::ZERO;
    for seed in 0..5 {
        let g = random_connected(10, 0.25, seed).unwrap();
        let start = Instant::now();
        let run = |threads| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| serde_json::to_string(&localization_number(&g, 3, &Budget::default()).unwrap()).unwrap())
        };
        let one = run(1);
        let many = run(4);
        let elapsed = start.elapsed() / 2;
        ensure(one == many, || format!("seed {seed}: outputs differ across thread counts"))?;
        ensure(elapsed < Duration::from_secs(60), || format!("seed {seed}: {elapsed:?}"))?;
        slowest = slowest.max(elapsed);
    }
    Ok(format!("5 random n=10 instances, slowest {slowest:.2?}, 1 vs 4 threads identical"))
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("1 exact zeta values", 60, c1_exact_values),
        ("2 figure pair", 10, c2_figure_pair),
        ("3 inequality suite", 600, c3_inequalities),
        ("4 interval tightness", 120, c4_interval_tightness),
        ("5 scripted strategies", 300, c5_scripted_strategies),
        ("6 bush/blind chain", 900, c6_chain),
        ("7 bicolored matching lemma", 120, c7_lemma),
        ("8 matching DP oracle", 120, c8_matching_oracle),
        ("9 tree construction counts", 1, c9_counts),
        ("10 reductions", 1200, c10_reductions),
        ("11 geometry", 180, c11_geometry),
        ("12 performance and determinism", 120, c12_performance),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, limit, f) in criteria {
        if !filter.is_empty() && !filter.iter().any(|p| name.contains(p.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(limit);
        match (&result, over) {
            (Ok(detail), false) => println!("PASS  criterion {name} ({elapsed:.2?} < {limit}s): {detail}"),
            (Ok(detail), true) => {
                failed += 1;
                println!("FAIL  criterion {name} ({elapsed:.2?} exceeds {limit}s): {detail}");
            }
            (Err(msg), _) => {
                failed += 1;
                println!("FAIL  criterion {name} ({elapsed:.2?}): {msg}");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
