use std::collections::HashSet;
use std::io::{BufRead, Write};

use locgame::solver::{solve, AdversarialRobber, Arena, ProbeSet, RobberChoice, Signature};
use locgame::{Budget, Graph, VertexSet};
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    Cop,
    Robber,
}

#[derive(Debug, Serialize)]
pub struct Turn {
    pub belief: VertexSet,
    pub probe: ProbeSet,
    pub signature: Vec<u32>,
    pub class: VertexSet,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Located,
    RobberWins,
}

#[derive(Debug, Serialize)]
pub struct Transcript {
    pub role: Role,
    pub k: usize,
    pub turns: Vec<Turn>,
    pub outcome: Outcome,
    pub located: Option<usize>,
}

/// Reads one trimmed non-empty line; EOF aborts the session.
fn read_line(input: &mut dyn BufRead) -> Result<String, CliError> {
    loop {
        let mut line = String::new();
        if input.read_line(&mut line)? == 0 {
            return Err(CliError::usage("input ended before the game finished"));
        }
        let line = line.trim();
        if !line.is_empty() {
            return Ok(line.to_string());
        }
    }
}

fn signature_of(arena: &Arena, class: VertexSet, probe: &ProbeSet) -> Signature {
    arena.signature(class.first().expect("classes are nonempty"), probe.vertices())
}

pub fn play(
    g: &Graph,
    role: Role,
    k: usize,
    budget: &Budget,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> Result<Transcript, CliError> {
    if k == 0 {
        return Err(CliError::input("k must be at least 1"));
    }
    let arena = Arena::new(g)?;
    match role {
        Role::Robber => play_robber(&arena, k, budget, input, out),
        Role::Cop => play_cop(arena, k, budget, input, out),
    }
}

/// The human picks classes; the cops follow the solver's strategy.
fn play_robber(
    arena: &Arena,
    k: usize,
    budget: &Budget,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> Result<Transcript, CliError> {
    let table = solve(arena, k, arena.full(), budget)?;
    if !table.wins() {
        return Err(CliError::input(format!("{k} cops have no winning strategy on this graph")));
    }
    let mut belief = arena.full();
    let mut turns = Vec::new();
    loop {
        let probe = table.best_probe(belief).expect("winning beliefs have a probe");
        let classes = arena.split(belief, probe.vertices());
        writeln!(out, "turn {}: belief {belief}, cops probe {:?}", turns.len() + 1, probe.vertices())?;
        let class = if classes.len() == 1 {
            classes[0]
        } else {
            for (i, c) in classes.iter().enumerate() {
                writeln!(out, "  [{}] {c} answers {:?}", i + 1, signature_of(arena, *c, &probe).0)?;
            }
            loop {
                write!(out, "choose a class: ")?;
                out.flush()?;
                match read_line(input)?.parse::<usize>() {
                    Ok(i) if (1..=classes.len()).contains(&i) => break classes[i - 1],
                    _ => writeln!(out, "enter a number from 1 to {}", classes.len())?,
                }
            }
        };
        let signature = signature_of(arena, class, &probe).0;
        turns.push(Turn { belief, probe, signature, class });
        if class.len() == 1 {
            let v = class.first().unwrap();
            writeln!(out, "robber located at {v} after {} turns", turns.len())?;
            return Ok(Transcript { role: Role::Robber, k, turns, outcome: Outcome::Located, located: Some(v) });
        }
        belief = arena.step(class);
    }
}

fn parse_probe(line: &str, n: usize, k: usize) -> Result<ProbeSet, String> {
    let vertices = line
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| format!("not a vertex: {s}")))
        .collect::<Result<Vec<_>, _>>()?;
    let probe = ProbeSet::new(vertices).map_err(|e| e.to_string())?;
    probe.check(n, k).map_err(|e| e.to_string())?;
    Ok(probe)
}

/// The human enters probes; an adversarial robber answers.
fn play_cop(
    arena: Arena,
    k: usize,
    budget: &Budget,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> Result<Transcript, CliError> {
    let n = arena.n();
    let mut robber = AdversarialRobber::new(arena, k, *budget)?;
    let mut belief = robber.arena().full();
    let mut seen = HashSet::new();
    let mut turns = Vec::new();
    loop {
        if !seen.insert(belief) && robber.rank(belief)?.is_none() {
            writeln!(out, "belief {belief} repeats and the robber can evade forever: robber wins")?;
            return Ok(Transcript { role: Role::Cop, k, turns, outcome: Outcome::RobberWins, located: None });
        }
        writeln!(out, "turn {}: belief {belief}", turns.len() + 1)?;
        let probe = loop {
            write!(out, "probe up to {k} vertices: ")?;
            out.flush()?;
            match parse_probe(&read_line(input)?, n, k) {
                Ok(p) => break p,
                Err(msg) => writeln!(out, "{msg}")?,
            }
        };
        let class = match robber.choose(belief, &probe)? {
            RobberChoice::Class(c) => c,
            RobberChoice::Located => robber.arena().split(belief, probe.vertices())[0],
        };
        let signature = signature_of(robber.arena(), class, &probe).0;
        writeln!(out, "answer {signature:?}: robber in {class}")?;
        turns.push(Turn { belief, probe, signature, class });
        if class.len() == 1 {
            let v = class.first().unwrap();
            writeln!(out, "robber located at {v} after {} turns", turns.len())?;
            return Ok(Transcript { role: Role::Cop, k, turns, outcome: Outcome::Located, located: Some(v) });
        }
        belief = robber.arena().step(class);
    }
}
