mod error;
mod play;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use locgame::bush::{
    blind_localization_number, bush_number, check_chain, lemma_bimatching_check, tree_vertex_count, BushError,
    LemmaCount, LemmaOutcome,
};
use locgame::graph::generators::{self, Family};
use locgame::graph::{pathwidth_exact, PathDecomposition, DEFAULT_PATHWIDTH_LIMIT};
use locgame::locating::{
    min_dominating_locating_set, min_locating_set, reduce_add_isolated, reduce_add_uvw, reduce_multiuniversal,
    verify_theorem_5_3,
};
use locgame::plane::{
    approx_one_cop, one_cop_escape, trilaterate, two_cop_play, CenterProber, Point, PredictingProber, Prober,
    RandomProber, RandomWalk, GEOMETRY_TOL,
};
use locgame::solver::{localization_number, metric_dimension, DEFAULT_MAX_STATES};
use locgame::strategies::{
    bipartite_parity_strategy, complete_bipartite_strategy, path_strategy, pathwidth_strategy, star_strategy,
    verify_strategy, ScheduledStrategy, Strategy, Verdict,
};
use locgame::{Budget, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use error::{CliError, Kind};
use play::Role;

#[derive(Parser)]
#[command(name = "locgame", version, about = "Localization games on graphs and in the plane")]
struct Cli {
    /// Output format for results and errors.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    /// Worker threads; defaults to the available cores. Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Plain,
}

#[derive(Subcommand)]
enum Command {
    /// Graph generators.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Exact solvers.
    #[command(subcommand)]
    Solve(SolveCmd),
    /// Inequality checks.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Scripted strategies.
    #[command(subcommand)]
    Strategy(StrategyCmd),
    /// Locating sets.
    #[command(subcommand)]
    Locating(LocatingCmd),
    /// Hardness gadgets.
    Reduce {
        #[arg(value_enum)]
        construction: Construction,
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Reduction equalities.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Bicolored matching lemma checks.
    #[command(subcommand)]
    Lemma(LemmaCmd),
    /// Plane games.
    Geom(GeomArgs),
    /// Play the localization game interactively.
    Play {
        file: PathBuf,
        #[arg(long, value_enum)]
        role: Role,
        #[arg(long)]
        k: usize,
        /// Also write the JSON transcript here.
        #[arg(long)]
        transcript: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Generate a graph. Parameters by family: path|cycle|star|complete N;
    /// cbip A B; random-tree N; random-connected N P; interval LO:HI...;
    /// ary-tree ARITY HEIGHT; add-universal|add-isolated FILE; subdivide FILE S.
    Gen {
        #[arg(value_enum)]
        family: FamilyName,
        params: Vec<String>,
        /// Seed for random families.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the graph here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Path,
    Cycle,
    Star,
    Complete,
    Cbip,
    RandomTree,
    RandomConnected,
    Interval,
    AryTree,
    AddUniversal,
    AddIsolated,
    Subdivide,
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    /// Belief-state budget; falls back to LOCGAME_MAX_STATES, then the built-in default.
    #[arg(long)]
    max_states: Option<usize>,
}

impl BudgetArgs {
    fn budget(&self) -> Result<Budget, CliError> {
        let states = match self.max_states {
            Some(s) => s,
            None => match std::env::var("LOCGAME_MAX_STATES") {
                Ok(v) => {
                    v.trim().parse().map_err(|_| CliError::usage(format!("LOCGAME_MAX_STATES={v} is not a count")))?
                }
                Err(_) => DEFAULT_MAX_STATES,
            },
        };
        if states == 0 {
            return Err(CliError::usage("max states must be positive"));
        }
        Ok(Budget::with_max_states(states))
    }
}

#[derive(Subcommand)]
enum SolveCmd {
    /// Localization number.
    Zeta {
        file: PathBuf,
        #[arg(long)]
        max_k: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Metric dimension.
    Dim { file: PathBuf },
    /// Bush number with a clearing schedule.
    Bush {
        file: PathBuf,
        #[arg(long)]
        max_k: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Blind localization number.
    Blind {
        file: PathBuf,
        #[arg(long)]
        max_k: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// B(G) <= blind number <= zeta(G plus a universal vertex).
    Chain {
        file: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyFamily {
    Path,
    Star,
    Cbip,
    Bipartite,
    Pathwidth,
}

#[derive(Subcommand)]
enum StrategyCmd {
    /// Check a scripted strategy against every robber.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum)]
        family: StrategyFamily,
        /// Path decomposition for the pathwidth family; computed exactly if absent.
        #[arg(long)]
        decomp: Option<PathBuf>,
        /// Keep only this many vertices of every probe.
        #[arg(long)]
        k: Option<usize>,
        /// Turn limit; defaults to 4n + 4.
        #[arg(long)]
        max_turns: Option<usize>,
    },
}

#[derive(Subcommand)]
enum LocatingCmd {
    /// Minimum locating set.
    Min {
        file: PathBuf,
        /// Require the set to be dominating as well.
        #[arg(long)]
        dominating: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Isolated,
    Uvw,
    Multiuniversal,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// zeta of the multi-universal gadget against the minimum locating set plus one.
    Thm53 {
        file: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountArg {
    Stated,
    Actual,
    Both,
}

#[derive(Subcommand)]
enum LemmaCmd {
    /// Colorings of the complete (12k+1)-ary tree of height h within the
    /// hypothesis range must have a bicolored matching of size h.
    Bimatching {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        h: usize,
        /// Random colorings to test; all colorings are tried when omitted and there are at most 2^20.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "both")]
        count: CountArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GeomGame {
    Trilaterate,
    TwoCop,
    Escape,
    Approx,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProberName {
    Center,
    Random,
    Predicting,
}

#[derive(Args)]
struct GeomArgs {
    #[arg(value_enum)]
    game: GeomGame,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    #[arg(long, default_value_t = 10)]
    rounds: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Prober for the escape game.
    #[arg(long, value_enum, default_value = "center")]
    prober: ProberName,
    /// Three probe points `x,y` for trilateration; a seeded instance is drawn if absent.
    #[arg(long, num_args = 3, allow_hyphen_values = true)]
    probes: Option<Vec<String>>,
    /// Three distances matching --probes.
    #[arg(long, num_args = 3)]
    distances: Option<Vec<f64>>,
}

/// A result ready to print in either format.
struct Report {
    json: serde_json::Value,
    plain: String,
    failed: bool,
}

impl Report {
    fn new(value: &impl Serialize, plain: impl Into<String>) -> Self {
        Report { json: serde_json::to_value(value).expect("results serialize"), plain: plain.into(), failed: false }
    }

    fn failing_if(mut self, failed: bool) -> Self {
        self.failed = failed;
        self
    }
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    Graph::parse(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn param<T: std::str::FromStr>(params: &[String], i: usize, name: &str) -> Result<T, CliError> {
    let raw = params.get(i).ok_or_else(|| CliError::usage(format!("missing parameter {name}")))?;
    raw.parse().map_err(|_| CliError::usage(format!("invalid {name}: {raw}")))
}

fn expect_params(params: &[String], count: usize) -> Result<(), CliError> {
    if params.len() != count {
        return Err(CliError::usage(format!("expected {count} parameters, got {}", params.len())));
    }
    Ok(())
}

fn family(name: FamilyName, params: &[String], seed: u64) -> Result<Family, CliError> {
    use FamilyName::*;
    let n = |p: &[String]| -> Result<usize, CliError> {
        expect_params(p, 1)?;
        param(p, 0, "N")
    };
    Ok(match name {
        Path => Family::Path(n(params)?),
        Cycle => Family::Cycle(n(params)?),
        Star => Family::Star(n(params)?),
        Complete => Family::Complete(n(params)?),
        Cbip => {
            expect_params(params, 2)?;
            Family::CompleteBipartite(param(params, 0, "A")?, param(params, 1, "B")?)
        }
        RandomTree => Family::RandomTree { n: n(params)?, seed },
        RandomConnected => {
            expect_params(params, 2)?;
            Family::RandomConnected { n: param(params, 0, "N")?, p: param(params, 1, "P")?, seed }
        }
        Interval => Family::Interval(
            params
                .iter()
                .map(|s| {
                    let (lo, hi) =
                        s.split_once(':').ok_or_else(|| CliError::usage(format!("interval {s} is not LO:HI")))?;
                    let parse =
                        |x: &str| x.parse::<i64>().map_err(|_| CliError::usage(format!("invalid interval {s}")));
                    Ok((parse(lo)?, parse(hi)?))
                })
                .collect::<Result<_, CliError>>()?,
        ),
        AryTree => {
            expect_params(params, 2)?;
            Family::AryTree { arity: param(params, 0, "ARITY")?, height: param(params, 1, "HEIGHT")? }
        }
        AddUniversal => {
            expect_params(params, 1)?;
            Family::AddUniversal(read_graph(params[0].as_ref())?)
        }
        AddIsolated => {
            expect_params(params, 1)?;
            Family::AddIsolated(read_graph(params[0].as_ref())?)
        }
        Subdivide => {
            expect_params(params, 2)?;
            Family::Subdivide(read_graph(params[0].as_ref())?, param(params, 1, "S")?)
        }
    })
}

fn graph_gen(name: FamilyName, params: &[String], seed: u64, output: Option<&Path>) -> Result<Report, CliError> {
    let g = generators::generate(&family(name, params, seed)?)?;
    let text = g.to_text();
    let summary = json!({ "n": g.n(), "m": g.m() });
    match output {
        Some(path) => {
            write_file(path, &text)?;
            Ok(Report::new(&summary, format!("wrote {} vertices, {} edges to {}", g.n(), g.m(), path.display())))
        }
        None => {
            let edges: Vec<[usize; 2]> = g.edges().map(|(u, v)| [u, v]).collect();
            Ok(Report::new(&json!({ "n": g.n(), "m": g.m(), "edges": edges }), text.trim_end()))
        }
    }
}

fn solve_zeta(g: &Graph, max_k: Option<usize>, budget: &Budget) -> Result<Report, CliError> {
    let res = localization_number(g, max_k.unwrap_or(g.n()), budget)?;
    let plain = match res.zeta {
        Some(z) => format!("zeta = {z}, {} turns, {} belief states", res.turns, res.states_explored),
        None => format!("zeta exceeds {}, {} belief states", max_k.unwrap_or(g.n()), res.states_explored),
    };
    Ok(Report::new(&res, plain))
}

fn verify_family(
    g: &Graph,
    family: StrategyFamily,
    decomp: Option<&Path>,
    k: Option<usize>,
    max_turns: Option<usize>,
) -> Result<Report, CliError> {
    let strategy: ScheduledStrategy = match family {
        StrategyFamily::Path => path_strategy(g)?,
        StrategyFamily::Star => star_strategy(g)?,
        StrategyFamily::Cbip => complete_bipartite_strategy(g)?,
        StrategyFamily::Bipartite => bipartite_parity_strategy(g)?,
        StrategyFamily::Pathwidth => {
            let pd = match decomp {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
                    PathDecomposition::parse(&text)?
                }
                None => pathwidth_exact(g, DEFAULT_PATHWIDTH_LIMIT)?.1,
            };
            pathwidth_strategy(g, &pd)?
        }
    };
    let strategy = match k {
        Some(0) => return Err(CliError::usage("k must be at least 1")),
        Some(k) => strategy.truncated(k),
        None => strategy,
    };
    let report = verify_strategy(g, &strategy, max_turns.unwrap_or(4 * g.n() + 4))?;
    let plain = match report.verdict {
        Verdict::Verified => {
            format!("{}: verified with {} probes, at most {} turns", strategy.name(), strategy.k(), report.turns)
        }
        v => {
            let steps: Vec<String> =
                report.trace.iter().map(|s| format!("{:?} -> {}", s.probe.vertices(), s.class)).collect();
            let why = if v == Verdict::CounterexampleCycle { "belief cycle" } else { "timeout" };
            format!("{}: counterexample ({why}): {}", strategy.name(), steps.join(", "))
        }
    };
    let failed = !report.verdict.is_verified();
    Ok(Report::new(&report, plain).failing_if(failed))
}

#[derive(Serialize)]
struct LemmaSummary {
    k: usize,
    h: usize,
    count: LemmaCount,
    n_hk: u128,
    mode: &'static str,
    checked: u64,
    outside_hypothesis: u64,
    holds: bool,
    counterexample: Option<LemmaOutcome>,
}

fn lemma_one(
    k: usize,
    h: usize,
    samples: Option<usize>,
    seed: u64,
    count: LemmaCount,
) -> Result<LemmaSummary, CliError> {
    if k == 0 || h == 0 {
        return Err(CliError::usage("k and h must be positive"));
    }
    let n = generators::ary_tree_size(12 * k + 1, h).ok_or_else(|| CliError::new(Kind::Budget, "tree too large"))?;
    let mut summary = LemmaSummary {
        k,
        h,
        count,
        n_hk: tree_vertex_count(k, h, count),
        mode: "exhaustive",
        checked: 0,
        outside_hypothesis: 0,
        holds: true,
        counterexample: None,
    };
    let check = |colors: &[u8], s: &mut LemmaSummary| -> Result<bool, CliError> {
        match lemma_bimatching_check(k, h, colors, count) {
            Ok(out) => {
                s.checked += 1;
                if !out.holds {
                    s.holds = false;
                    s.counterexample = Some(out);
                    return Ok(false);
                }
                Ok(true)
            }
            Err(BushError::Hypothesis(_)) => {
                s.outside_hypothesis += 1;
                Ok(true)
            }
            Err(e) => Err(e.into()),
        }
    };
    match samples {
        None if n <= 20 => {
            for mask in 0u64..1 << n {
                let colors: Vec<u8> = (0..n).map(|i| (mask >> i & 1) as u8).collect();
                if !check(&colors, &mut summary)? {
                    break;
                }
            }
        }
        None => return Err(CliError::usage(format!("{n} vertices are too many to enumerate; pass --samples"))),
        Some(samples) => {
            summary.mode = "sampled";
            let (nn, hh, kk) = (summary.n_hk as i128, h as i128, k as i128);
            let lo = ((nn + hh - 8 * kk + 1).div_euclid(2)).max(0) as usize;
            let hi = ((nn + 6 * kk - hh - 1).div_euclid(2)).min(n as i128) as usize;
            if lo > hi {
                return Err(CliError::input("the hypothesis range is empty"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut order: Vec<usize> = (0..n).collect();
            for _ in 0..samples {
                let ones = rng.gen_range(lo..=hi);
                for i in 0..ones {
                    let j = rng.gen_range(i..n);
                    order.swap(i, j);
                }
                let mut colors = vec![0u8; n];
                for &v in &order[..ones] {
                    colors[v] = 1;
                }
                if !check(&colors, &mut summary)? {
                    break;
                }
            }
        }
    }
    Ok(summary)
}

fn lemma(k: usize, h: usize, samples: Option<usize>, seed: u64, count: CountArg) -> Result<Report, CliError> {
    let counts = match count {
        CountArg::Stated => vec![LemmaCount::Stated],
        CountArg::Actual => vec![LemmaCount::Actual],
        CountArg::Both => vec![LemmaCount::Stated, LemmaCount::Actual],
    };
    let results = counts.into_iter().map(|c| lemma_one(k, h, samples, seed, c)).collect::<Result<Vec<_>, _>>()?;
    let plain: Vec<String> = results
        .iter()
        .map(|s| {
            let verdict = match &s.counterexample {
                None => "holds".to_string(),
                Some(c) => format!("fails: {} ones, matching {}", c.ones, c.matching),
            };
            format!("{:?} count n = {}: {} colorings checked ({}), {verdict}", s.count, s.n_hk, s.checked, s.mode)
        })
        .collect();
    let failed = results.iter().any(|s| !s.holds);
    Ok(Report::new(&results, plain.join("\n")).failing_if(failed))
}

fn parse_point(s: &str) -> Result<Point, CliError> {
    let (x, y) = s.split_once(',').ok_or_else(|| CliError::usage(format!("point {s} is not x,y")))?;
    let parse = |v: &str| v.trim().parse::<f64>().map_err(|_| CliError::usage(format!("invalid point {s}")));
    Ok(Point::checked(parse(x)?, parse(y)?)?)
}

fn seeded_point(rng: &mut ChaCha8Rng, r: f64) -> Point {
    Point::new(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

fn geom(args: &GeomArgs) -> Result<Report, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    match args.game {
        GeomGame::Trilaterate => {
            let (probes, distances, actual) = match (&args.probes, &args.distances) {
                (Some(p), Some(d)) => {
                    let p = [parse_point(&p[0])?, parse_point(&p[1])?, parse_point(&p[2])?];
                    (p, [d[0], d[1], d[2]], None)
                }
                (None, None) => {
                    let p =
                        [seeded_point(&mut rng, 100.0), seeded_point(&mut rng, 100.0), seeded_point(&mut rng, 100.0)];
                    let x = seeded_point(&mut rng, 100.0);
                    (p, [x.dist(p[0]), x.dist(p[1]), x.dist(p[2])], Some(x))
                }
                _ => return Err(CliError::usage("--probes and --distances go together")),
            };
            let estimate = trilaterate(probes, distances, GEOMETRY_TOL)?;
            let error = actual.map(|x| x.dist(estimate));
            let plain = format!("robber at {estimate}");
            Ok(Report::new(
                &json!({ "probes": probes, "distances": distances, "estimate": estimate, "actual": actual, "error": error }),
                plain,
            ))
        }
        GeomGame::TwoCop => {
            let start = seeded_point(&mut rng, 30.0);
            let out = two_cop_play(&mut RandomWalk::new(start, args.seed), GEOMETRY_TOL)?;
            let plain = format!("located {} in {} rounds (robber at {})", out.located, out.rounds, out.actual);
            Ok(Report::new(&out, plain))
        }
        GeomGame::Escape => {
            let mut prober: Box<dyn Prober> = match args.prober {
                ProberName::Center => Box::new(CenterProber),
                ProberName::Random => Box::new(RandomProber::new(args.seed)),
                ProberName::Predicting => Box::new(PredictingProber),
            };
            let out = one_cop_escape(prober.as_mut(), args.rounds)?;
            let plain = format!(
                "robber survived {} rounds, min witness separation {:.6}",
                out.rounds.len(),
                out.min_separation
            );
            Ok(Report::new(&out, plain))
        }
        GeomGame::Approx => {
            let start = seeded_point(&mut rng, 50.0);
            let out = approx_one_cop(&mut RandomWalk::new(start, args.seed), args.eps)?;
            let err = out.result.estimate.dist(out.actual);
            let plain = format!(
                "estimate {} for robber at {}: error {err:.6} <= bound {:.6}",
                out.result.estimate, out.actual, out.result.error_bound
            );
            Ok(Report::new(&out, plain))
        }
    }
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Graph(GraphCmd::Gen { family, params, seed, output }) => {
            graph_gen(*family, params, *seed, output.as_deref())
        }
        Command::Solve(SolveCmd::Zeta { file, max_k, budget }) => {
            solve_zeta(&read_graph(file)?, *max_k, &budget.budget()?)
        }
        Command::Solve(SolveCmd::Dim { file }) => {
            let (dim, basis) = metric_dimension(&read_graph(file)?)?;
            Ok(Report::new(&json!({ "dim": dim, "basis": basis }), format!("dim = {dim}, basis {basis:?}")))
        }
        Command::Solve(SolveCmd::Bush { file, max_k, budget }) => {
            let res = bush_number(&read_graph(file)?, *max_k, &budget.budget()?)?;
            let plain = match (&res.k, &res.schedule) {
                (Some(k), Some(s)) => {
                    let moves: Vec<String> = s.moves.iter().map(|m| format!("{:?}", m.vertices())).collect();
                    format!("B = {k}, schedule {}", moves.join(" "))
                }
                _ => format!("B exceeds {max_k}"),
            };
            Ok(Report::new(&res, plain))
        }
        Command::Solve(SolveCmd::Blind { file, max_k, budget }) => {
            let res = blind_localization_number(&read_graph(file)?, *max_k, &budget.budget()?)?;
            let plain = match res {
                Some(k) => format!("blind number = {k}"),
                None => format!("blind number exceeds {max_k}"),
            };
            Ok(Report::new(&json!({ "zeta_b": res }), plain))
        }
        Command::Check(CheckCmd::Chain { file, budget }) => {
            let r = check_chain(&read_graph(file)?, &budget.budget()?)?;
            let plain = format!(
                "{} <= {} <= {}: {}",
                r.bush,
                r.blind,
                r.zeta_universal,
                if r.holds { "holds" } else { "fails" }
            );
            let failed = !r.holds;
            Ok(Report::new(&r, plain).failing_if(failed))
        }
        Command::Strategy(StrategyCmd::Verify { file, family, decomp, k, max_turns }) => {
            verify_family(&read_graph(file)?, *family, decomp.as_deref(), *k, *max_turns)
        }
        Command::Locating(LocatingCmd::Min { file, dominating }) => {
            let g = read_graph(file)?;
            let (size, set) = if *dominating { min_dominating_locating_set(&g)? } else { min_locating_set(&g)? };
            Ok(Report::new(&json!({ "size": size, "set": set }), format!("{size}: {set:?}")))
        }
        Command::Reduce { construction, file, output } => {
            let g = read_graph(file)?;
            let out = match construction {
                Construction::Isolated => reduce_add_isolated(&g),
                Construction::Uvw => reduce_add_uvw(&g)?,
                Construction::Multiuniversal => reduce_multiuniversal(&g)?,
            };
            write_file(output, &out.graph.to_text())?;
            let name = out.construction.name();
            let plain = format!("{name}: {} vertices, added {:?}", out.graph.n(), out.added);
            Ok(Report::new(
                &json!({ "construction": name, "n": out.graph.n(), "m": out.graph.m(), "added": out.added }),
                plain,
            ))
        }
        Command::Verify(VerifyCmd::Thm53 { file, budget }) => {
            let r = verify_theorem_5_3(&read_graph(file)?, &budget.budget()?)?;
            let plain = format!(
                "locating + 1 = {}, zeta = {}: {}",
                r.report.lhs,
                r.report.rhs,
                if r.report.equal { "equal" } else { "differ" }
            );
            let failed = !r.report.equal;
            Ok(Report::new(&r, plain).failing_if(failed))
        }
        Command::Lemma(LemmaCmd::Bimatching { k, h, samples, seed, count }) => lemma(*k, *h, *samples, *seed, *count),
        Command::Geom(args) => geom(args),
        Command::Play { file, role, k, transcript, budget } => {
            let g = read_graph(file)?;
            let stdin = std::io::stdin();
            let mut input = stdin.lock();
            let mut prompts = std::io::stderr();
            let t = play::play(&g, *role, *k, &budget.budget()?, &mut input, &mut prompts)?;
            if let Some(path) = transcript {
                let text = serde_json::to_string_pretty(&t).expect("transcripts serialize");
                write_file(path, &text)?;
            }
            let plain = match t.located {
                Some(v) => format!("robber located at {v} after {} turns", t.turns.len()),
                None => "robber wins".to_string(),
            };
            Ok(Report::new(&t, plain))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.threads {
        Some(0) => Err(CliError::usage("--threads must be positive")),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::usage(e.to_string()))
            .and_then(|pool| pool.install(|| run(&cli))),
        None => run(&cli),
    };
    let mut stdout = std::io::stdout().lock();
    match result {
        Ok(report) => {
            let written = match cli.format {
                Format::Json => writeln!(stdout, "{}", serde_json::to_string_pretty(&report.json).expect("json")),
                Format::Plain => writeln!(stdout, "{}", report.plain),
            };
            if written.is_err() {
                return ExitCode::from(Kind::InvalidInput.code());
            }
            if report.failed {
                ExitCode::from(Kind::Verification.code())
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            match cli.format {
                Format::Json => eprintln!("{}", serde_json::to_string(&e).expect("json")),
                Format::Plain => eprintln!("{e}"),
            }
            ExitCode::from(e.kind.code())
        }
    }
}
