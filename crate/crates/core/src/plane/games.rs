use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::geometry::{circle_intersection, Arc, Circle, Intersection, Line, Point, Region};
use super::{PlaneError, GAME_TOL, GEOMETRY_TOL};

/// A moving robber. It sees the probes of a round before committing to its
/// position for that round.
pub trait Robber {
    /// Position in `round` (1-based); must be within 1 of the previous one.
    fn position(&mut self, round: usize, probes: &[Point]) -> Point;
}

pub struct StaticRobber(pub Point);

impl Robber for StaticRobber {
    fn position(&mut self, _round: usize, _probes: &[Point]) -> Point {
        self.0
    }
}

/// Visits the points in order, then stays on the last one.
pub struct Waypoints(pub Vec<Point>);

impl Robber for Waypoints {
    fn position(&mut self, round: usize, _probes: &[Point]) -> Point {
        self.0[(round - 1).min(self.0.len() - 1)]
    }
}

/// Starts at `start` and steps uniformly inside the unit disk each round.
pub struct RandomWalk {
    pos: Point,
    rng: ChaCha8Rng,
}

impl RandomWalk {
    pub fn new(start: Point, seed: u64) -> Self {
        RandomWalk { pos: start, rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

fn unit_disk_sample(rng: &mut ChaCha8Rng) -> Point {
    let r = rng.gen::<f64>().sqrt();
    Point::from_angle(rng.gen_range(0.0..std::f64::consts::TAU)) * r
}

impl Robber for RandomWalk {
    fn position(&mut self, round: usize, _probes: &[Point]) -> Point {
        if round > 1 {
            self.pos = self.pos + unit_disk_sample(&mut self.rng);
        }
        self.pos
    }
}

/// Picks, among sampled points of its unit disk, the one closest to the
/// line through the first two probes of the round.
pub struct LineHugger {
    pos: Point,
    rng: ChaCha8Rng,
    samples: usize,
}

impl LineHugger {
    pub fn new(start: Point, seed: u64, samples: usize) -> Self {
        LineHugger { pos: start, rng: ChaCha8Rng::seed_from_u64(seed), samples: samples.max(1) }
    }
}

impl Robber for LineHugger {
    fn position(&mut self, round: usize, probes: &[Point]) -> Point {
        if round == 1 || probes.len() < 2 {
            return self.pos;
        }
        let line = Line::through(probes[0], probes[1]);
        let mut best = self.pos;
        for _ in 0..self.samples {
            let cand = self.pos + unit_disk_sample(&mut self.rng) * 0.999;
            if line.signed_distance(cand).abs() < line.signed_distance(best).abs() {
                best = cand;
            }
        }
        self.pos = best;
        best
    }
}

fn check_move(prev: Option<Point>, next: Point, round: usize) -> Result<(), PlaneError> {
    if !(next.x.is_finite() && next.y.is_finite()) {
        return Err(PlaneError::NonFinite);
    }
    if let Some(p) = prev {
        let step = p.dist(next);
        if step > 1.0 + 1e-12 {
            return Err(PlaneError::RobberMove { round, step });
        }
    }
    Ok(())
}

/// One round of a multi-probe game.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundTrace {
    pub probes: Vec<Point>,
    pub distances: Vec<f64>,
    pub region: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoCopOutcome {
    pub located: Point,
    pub rounds: usize,
    pub trace: Vec<RoundTrace>,
    /// The robber's true position in the final round.
    pub actual: Point,
}

const ROUND1_PROBES: [Point; 2] = [Point { x: 0.0, y: 0.0 }, Point { x: 6.0, y: 0.0 }];
/// Offset of the round-2 line from the midpoint of the two candidates.
const SEPARATION_OFFSET: f64 = 1.5;
const ROUND2_SPREAD: f64 = 10.0;

/// Two cops: round 1 probes (0,0) and (6,0). Unless that pins the robber,
/// round 2 probes two points on a line parallel to the candidates' axis at
/// distance 1.5 from their midpoint; both unit disks lie strictly on one
/// side, which selects one of the two circle intersections.
pub fn two_cop_play(robber: &mut dyn Robber, tol: f64) -> Result<TwoCopOutcome, PlaneError> {
    let mut trace = Vec::new();
    let r1 = robber.position(1, &ROUND1_PROBES);
    check_move(None, r1, 1)?;
    let d: Vec<f64> = ROUND1_PROBES.iter().map(|p| p.dist(r1)).collect();
    let c1 = Circle::new(ROUND1_PROBES[0], d[0])?;
    let c2 = Circle::new(ROUND1_PROBES[1], d[1])?;
    let exact = |p: Point, region: Region, trace: &mut Vec<RoundTrace>| {
        trace.push(RoundTrace { probes: ROUND1_PROBES.to_vec(), distances: d.clone(), region: region.to_string() });
        Ok(TwoCopOutcome { located: p, rounds: 1, trace: std::mem::take(trace), actual: r1 })
    };
    if let Some(i) = d.iter().position(|&x| x <= tol) {
        return exact(ROUND1_PROBES[i], Region::Point(ROUND1_PROBES[i]), &mut trace);
    }
    let (p1, p2) = match circle_intersection(&c1, &c2, tol)? {
        Intersection::Tangent(p) => return exact(p, Region::Point(p), &mut trace),
        Intersection::Two(a, b) => (a, b),
        Intersection::None => return Err(PlaneError::Inconsistent(0.0)),
    };
    trace.push(RoundTrace {
        probes: ROUND1_PROBES.to_vec(),
        distances: d.clone(),
        region: Region::Points(vec![p1, p2]).to_string(),
    });

    let u = (p2 - p1).unit();
    let mut w = u.perp();
    if w.x < 0.0 || (w.x == 0.0 && w.y < 0.0) {
        w = -w;
    }
    let mid = (p1 + p2) * 0.5;
    let foot = mid + w * SEPARATION_OFFSET;
    let along = w.perp();
    let line = Line { point: foot, direction: along };
    // both disks are on the right of `line`
    let side = line.signed_distance(mid).signum();

    let r2 = robber.position(2, &[foot - along * ROUND2_SPREAD, foot + along * ROUND2_SPREAD]);
    check_move(Some(r1), r2, 2)?;
    for spread in [ROUND2_SPREAD, 10.0 * ROUND2_SPREAD] {
        let probes = [foot - along * spread, foot + along * spread];
        let dist: Vec<f64> = probes.iter().map(|p| p.dist(r2)).collect();
        let disks = Region::Points(vec![p1, p2]);
        let record = |region: Region| RoundTrace {
            probes: probes.to_vec(),
            distances: dist.clone(),
            region: region.to_string(),
        };
        if let Some(i) = dist.iter().position(|&x| x <= tol) {
            trace.push(record(Region::Point(probes[i])));
            return Ok(TwoCopOutcome { located: probes[i], rounds: 2, trace, actual: r2 });
        }
        let inter = circle_intersection(&Circle::new(probes[0], dist[0])?, &Circle::new(probes[1], dist[1])?, tol)?;
        let cands = match inter {
            Intersection::Two(a, b) => vec![a, b],
            Intersection::Tangent(p) => vec![p],
            Intersection::None => return Err(PlaneError::Inconsistent(0.0)),
        };
        let on_side: Vec<Point> = cands
            .iter()
            .copied()
            .filter(|&c| line.signed_distance(c) * side > GAME_TOL.min(tol.max(GEOMETRY_TOL)))
            .collect();
        if on_side.len() == 1 {
            trace.push(record(Region::HalfPlaneConstrained { region: Box::new(disks), line }));
            return Ok(TwoCopOutcome { located: on_side[0], rounds: 2, trace, actual: r2 });
        }
    }
    Err(PlaneError::Ambiguous)
}

/// Chooses one probe per round knowing the robber's previous position.
pub trait Prober {
    fn probe(&mut self, round: usize, previous: Point) -> Point;
}

/// Probes the centre of the disk the robber must be in.
pub struct CenterProber;

impl Prober for CenterProber {
    fn probe(&mut self, _round: usize, previous: Point) -> Point {
        previous
    }
}

/// Probes uniformly in the square of side 4 around the disk centre.
pub struct RandomProber(ChaCha8Rng);

impl RandomProber {
    pub fn new(seed: u64) -> Self {
        RandomProber(ChaCha8Rng::seed_from_u64(seed))
    }
}

impl Prober for RandomProber {
    fn probe(&mut self, _round: usize, previous: Point) -> Point {
        previous + Point::new(self.0.gen_range(-2.0..2.0), self.0.gen_range(-2.0..2.0))
    }
}

/// Probes exactly where the escape rule's unadjusted step would land.
pub struct PredictingProber;

impl Prober for PredictingProber {
    fn probe(&mut self, round: usize, previous: Point) -> Point {
        previous + Point::from_angle(escape_angle(round)) * ESCAPE_STEP
    }
}

const ESCAPE_STEP: f64 = 0.9;
const MIN_SINE: f64 = 0.1;

fn escape_angle(round: usize) -> f64 {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (round as f64 * golden) % std::f64::consts::TAU
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EscapeRound {
    pub probe: Point,
    pub distance: f64,
    pub region: String,
    pub robber: Point,
    /// Another point of the same response circle inside the same disk.
    pub witness: Point,
    pub separation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EscapeTrace {
    pub rounds: Vec<EscapeRound>,
    pub min_separation: f64,
}

/// A robber that announces its previous position every round and still is
/// never pinned down by one cop: it steps 0.9 at golden-angle increments,
/// turned a quarter if the step is nearly aligned with the probe, and the
/// mirror image across the probe-centre line answers the probe identically.
pub fn one_cop_escape(prober: &mut dyn Prober, rounds: usize) -> Result<EscapeTrace, PlaneError> {
    let mut prev = Point::ORIGIN;
    let mut out = Vec::with_capacity(rounds);
    let mut min_sep = f64::INFINITY;
    for round in 1..=rounds {
        let c = prober.probe(round, prev);
        if !(c.x.is_finite() && c.y.is_finite()) {
            return Err(PlaneError::NonFinite);
        }
        let mut dir = Point::from_angle(escape_angle(round));
        let axis = c - prev;
        let degenerate = axis.norm() <= GEOMETRY_TOL;
        if !degenerate && dir.cross(axis.unit()).abs() < MIN_SINE {
            dir = dir.perp();
        }
        let pos = prev + dir * ESCAPE_STEP;
        let witness =
            if degenerate { pos.rotate_about(prev, std::f64::consts::FRAC_PI_2) } else { pos.reflect(prev, c) };
        let distance = c.dist(pos);
        let separation = pos.dist(witness);
        if distance <= 0.0 || (witness.dist(c) - distance).abs() > GAME_TOL || witness.dist(prev) >= 1.0 {
            return Err(PlaneError::Guarantee(format!("escape witness invalid in round {round}")));
        }
        min_sep = min_sep.min(separation);
        let region = format!("{} within unit disk at {}", Region::Circle(Circle::new(c, distance)?), prev);
        out.push(EscapeRound { probe: c, distance, region, robber: pos, witness, separation });
        prev = pos;
    }
    Ok(EscapeTrace { rounds: out, min_separation: min_sep })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApproxParams {
    pub epsilon: f64,
    /// Positive root of `2 d^2 + 2 d - (2 eps + eps^2) = 0`.
    pub root: f64,
    /// Half the root.
    pub delta: f64,
}

impl ApproxParams {
    /// `sqrt((1 + delta)^2 + delta^2)`.
    pub fn error_bound(&self) -> f64 {
        (1.0 + self.delta).hypot(self.delta)
    }
}

pub fn derive_delta(epsilon: f64) -> Result<ApproxParams, PlaneError> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(PlaneError::InvalidEpsilon(epsilon));
    }
    let q = 2.0 * epsilon + epsilon * epsilon;
    let root = q / (1.0 + (1.0 + 2.0 * q).sqrt());
    Ok(ApproxParams { epsilon, root, delta: root / 2.0 })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeRound {
    pub probe: Point,
    pub distance: f64,
    pub region: String,
    /// Largest distance of the surviving arcs from their reference line.
    pub deviation: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FinalEstimate {
    pub estimate: Point,
    pub error_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproxOutcome {
    pub params: ApproxParams,
    pub rounds: Vec<ProbeRound>,
    #[serde(rename = "final")]
    pub result: FinalEstimate,
    /// Whether a zero distance located the robber exactly.
    pub exact: bool,
    /// The robber's true position in the last round played.
    pub actual: Point,
}

/// Probe distance for a region of extent `diam` whose chords through the
/// next response circle are at most `chord`: far enough that the sagitta
/// `chord^2 / (4 R)` is at most `delta`.
fn far_distance(chord: f64, diam: f64, delta: f64) -> f64 {
    (chord * chord / (4.0 * delta)).max(10.0 * diam) + diam
}

/// One cop, three rounds, error at most `1 + eps`.
///
/// Round 1 probes the origin and learns the robber is on a circle of radius
/// `d1`, so afterwards within the annulus `[d1 - 1, d1 + 1]`. Round 2
/// probes far out on the x-axis; the surviving arcs lie within `delta` of
/// the tangent line `l` of the response circle. Round 3 probes far along
/// `l`; the single surviving arc lies within `delta` of the tangent line
/// `k`, perpendicular to `l`. The estimate is the point where `k` meets `l`.
pub fn approx_one_cop(robber: &mut dyn Robber, epsilon: f64) -> Result<ApproxOutcome, PlaneError> {
    let params = derive_delta(epsilon)?;
    let delta = params.delta;
    let mut rounds = Vec::new();
    let exact = |p: Point, rounds: Vec<ProbeRound>| ApproxOutcome {
        params,
        rounds,
        result: FinalEstimate { estimate: p, error_bound: 0.0 },
        exact: true,
        actual: p,
    };

    let c1 = Point::ORIGIN;
    let r1 = robber.position(1, &[c1]);
    check_move(None, r1, 1)?;
    let d1 = c1.dist(r1);
    if d1 == 0.0 {
        rounds.push(ProbeRound { probe: c1, distance: 0.0, region: Region::Point(c1).to_string(), deviation: None });
        return Ok(exact(c1, rounds));
    }
    let annulus = Region::Annulus { center: c1, inner: (d1 - 1.0).max(0.0), outer: d1 + 1.0 };
    rounds.push(ProbeRound { probe: c1, distance: d1, region: annulus.to_string(), deviation: None });

    let diam = 2.0 * (d1 + 1.0);
    let e = Point::new(1.0, 0.0);
    let c2 = c1 + e * far_distance(diam, diam, delta);
    let r2 = robber.position(2, &[c2]);
    check_move(Some(r1), r2, 2)?;
    let d2 = c2.dist(r2);
    if d2 == 0.0 {
        rounds.push(ProbeRound { probe: c2, distance: 0.0, region: Region::Point(c2).to_string(), deviation: None });
        return Ok(exact(c2, rounds));
    }
    // S2: points of the response circle at distance within the annulus from c1
    let big = c2.dist(c1);
    let angle_at = |rho: f64| ((big * big + d2 * d2 - rho * rho) / (2.0 * big * d2)).clamp(-1.0, 1.0).acos();
    let phi_out = angle_at(d1 + 1.0);
    let phi_in = angle_at((d1 - 1.0).max(0.0));
    let toward = std::f64::consts::PI;
    let circle2 = Circle::new(c2, d2)?;
    let arcs = if d1 <= 1.0 {
        vec![Arc { circle: circle2, start: toward - phi_out, end: toward + phi_out }]
    } else {
        vec![
            Arc { circle: circle2, start: toward - phi_out, end: toward - phi_in },
            Arc { circle: circle2, start: toward + phi_in, end: toward + phi_out },
        ]
    };
    let dev2 = d2 * (1.0 - phi_out.cos());
    if dev2 > delta {
        return Err(PlaneError::Guarantee(format!("round-2 arc deviates {dev2:e} > delta")));
    }
    rounds.push(ProbeRound {
        probe: c2,
        distance: d2,
        region: Region::ArcSet(arcs).to_string(),
        deviation: Some(dev2),
    });

    // line l: tangent to the response circle at its point nearest c1
    let foot = c2 - e * d2;
    let f = e.perp();
    let diam3 = 2.0 * (d1 + 2.0);
    let chord3 = 2.0 * (1.0 + delta);
    let c3 = foot + f * far_distance(chord3, diam3, delta);
    let r3 = robber.position(3, &[c3]);
    check_move(Some(r2), r3, 3)?;
    let d3 = c3.dist(r3);
    if d3 == 0.0 {
        rounds.push(ProbeRound { probe: c3, distance: 0.0, region: Region::Point(c3).to_string(), deviation: None });
        return Ok(exact(c3, rounds));
    }
    // S3 sits in the strip of half-width 1 + delta around l; on a circle
    // centred on l that is one arc around the direction back towards A3
    if d3 <= diam3 {
        return Err(PlaneError::Guarantee("round-3 response circle does not isolate one arc".into()));
    }
    let half = ((1.0 + delta) / d3).asin();
    let back = (-f).y.atan2((-f).x);
    let dev3 = d3 * (1.0 - half.cos());
    if dev3 > delta {
        return Err(PlaneError::Guarantee(format!("round-3 arc deviates {dev3:e} > delta")));
    }
    let arc3 = Arc { circle: Circle::new(c3, d3)?, start: back - half, end: back + half };
    rounds.push(ProbeRound {
        probe: c3,
        distance: d3,
        region: Region::ArcSet(vec![arc3]).to_string(),
        deviation: Some(dev3),
    });

    let estimate = c3 - f * d3;
    Ok(ApproxOutcome {
        params,
        rounds,
        result: FinalEstimate { estimate, error_bound: params.error_bound() },
        exact: false,
        actual: r3,
    })
}
