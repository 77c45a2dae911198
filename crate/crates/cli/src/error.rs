use std::fmt;

use locgame::bush::BushError;
use locgame::locating::LocatingError;
use locgame::plane::PlaneError;
use locgame::strategies::StrategyError;
use locgame::{GraphError, SolveError};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Usage,
    InvalidInput,
    Budget,
    Verification,
}

impl Kind {
    pub fn code(self) -> u8 {
        match self {
            Kind::Usage => 1,
            Kind::InvalidInput => 2,
            Kind::Budget => 3,
            Kind::Verification => 4,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CliError {
    #[serde(rename = "error")]
    pub kind: Kind,
    pub message: String,
}

impl CliError {
    pub fn new(kind: Kind, message: impl Into<String>) -> Self {
        CliError { kind, message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        CliError::new(Kind::Usage, message)
    }

    pub fn input(message: impl Into<String>) -> Self {
        CliError::new(Kind::InvalidInput, message)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error: {}", self.message)
    }
}

fn graph_kind(e: &GraphError) -> Kind {
    match e {
        GraphError::SizeLimit { .. } | GraphError::TooLarge(_) => Kind::Budget,
        _ => Kind::InvalidInput,
    }
}

fn solve_kind(e: &SolveError) -> Kind {
    match e {
        SolveError::Budget { .. } => Kind::Budget,
        SolveError::Graph(g) => graph_kind(g),
        _ => Kind::InvalidInput,
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::new(graph_kind(&e), e.to_string())
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        CliError::new(solve_kind(&e), e.to_string())
    }
}

impl From<BushError> for CliError {
    fn from(e: BushError) -> Self {
        let kind = match &e {
            BushError::Budget(_) => Kind::Budget,
            BushError::Solve(s) => solve_kind(s),
            BushError::Graph(g) => graph_kind(g),
            _ => Kind::InvalidInput,
        };
        CliError::new(kind, e.to_string())
    }
}

impl From<LocatingError> for CliError {
    fn from(e: LocatingError) -> Self {
        let kind = match &e {
            LocatingError::Solve(s) => solve_kind(s),
            LocatingError::Graph(g) => graph_kind(g),
            _ => Kind::InvalidInput,
        };
        CliError::new(kind, e.to_string())
    }
}

impl From<StrategyError> for CliError {
    fn from(e: StrategyError) -> Self {
        let kind = match &e {
            StrategyError::Solve(s) => solve_kind(s),
            StrategyError::Graph(g) => graph_kind(g),
            _ => Kind::InvalidInput,
        };
        CliError::new(kind, e.to_string())
    }
}

impl From<PlaneError> for CliError {
    fn from(e: PlaneError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::input(e.to_string())
    }
}
