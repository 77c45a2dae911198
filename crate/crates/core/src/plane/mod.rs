//! The localization game in the Euclidean plane, where a probe returns the
//! exact distance to the robber and the robber moves at most 1 per round.

mod games;
mod geometry;

use thiserror::Error;

pub use games::{
    approx_one_cop, derive_delta, one_cop_escape, two_cop_play, ApproxOutcome, ApproxParams, CenterProber, EscapeRound,
    EscapeTrace, FinalEstimate, LineHugger, PredictingProber, ProbeRound, Prober, RandomProber, RandomWalk, Robber,
    RoundTrace, StaticRobber, TwoCopOutcome, Waypoints,
};
pub use geometry::{circle_intersection, trilaterate, Arc, Circle, Intersection, Line, Point, Region};

/// Absolute tolerance of the geometry kernels.
pub const GEOMETRY_TOL: f64 = 1e-9;
/// Tolerance of game-level checks.
pub const GAME_TOL: f64 = 1e-6;

#[derive(Debug, Error, PartialEq)]
pub enum PlaneError {
    #[error("circles have coincident centers")]
    CoincidentCenters,
    #[error("probes are collinear")]
    Collinear,
    #[error("distances are inconsistent (residual {0:e})")]
    Inconsistent(f64),
    #[error("non-finite or negative coordinate")]
    NonFinite,
    #[error("epsilon must be positive and finite, got {0}")]
    InvalidEpsilon(f64),
    #[error("robber moved {step} > 1 in round {round}")]
    RobberMove { round: usize, step: f64 },
    #[error("cannot tell which side of the separating line the robber is on")]
    Ambiguous,
    #[error("geometric guarantee violated: {0}")]
    Guarantee(String),
}
