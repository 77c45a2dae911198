use serde::{Deserialize, Serialize};

use super::{build_t, bush_number, BushError, BushGame};
use crate::graph::{VertexSet, MAX_SET_VERTICES};
use crate::solver::Budget;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Solved,
    /// No `k` in range clears the tree.
    ExceedsMaxK,
    Budget,
    /// Too many vertices for the bitset engine.
    TooLarge,
}

/// One instance of the scaling experiment on twice-subdivided trees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub arity: usize,
    pub height: usize,
    pub subdivisions: usize,
    pub vertices: usize,
    pub status: RowStatus,
    pub bush_number: Option<usize>,
    pub schedule_length: Option<usize>,
    /// Regular vertices without bush after each turn of the schedule.
    pub clean_regular: Vec<usize>,
}

/// Bush numbers of subdivided complete trees; budget exhaustion marks the
/// row instead of aborting the table.
pub fn bush_scaling_experiment(
    params: &[(usize, usize, usize)],
    max_k: usize,
    budget: &Budget,
) -> Result<Vec<ExperimentRow>, BushError> {
    let mut rows = Vec::with_capacity(params.len());
    for &(arity, height, subdivisions) in params {
        let t = build_t(arity, height, subdivisions)?;
        let n = t.tree.n();
        let mut row = ExperimentRow {
            arity,
            height,
            subdivisions,
            vertices: n,
            status: RowStatus::TooLarge,
            bush_number: None,
            schedule_length: None,
            clean_regular: Vec::new(),
        };
        if n <= MAX_SET_VERTICES {
            match bush_number(&t.tree, max_k, budget) {
                Ok(r) => match (r.k, r.schedule) {
                    (Some(k), Some(schedule)) => {
                        let regular: VertexSet = (0..n).filter(|&v| t.regular[v]).collect();
                        let game = BushGame::new(&t.tree)?;
                        row.status = RowStatus::Solved;
                        row.bush_number = Some(k);
                        row.schedule_length = Some(schedule.len());
                        row.clean_regular = game.replay(&schedule).into_iter().map(|b| (regular - b).len()).collect();
                    }
                    _ => row.status = RowStatus::ExceedsMaxK,
                },
                Err(BushError::Budget(_)) => row.status = RowStatus::Budget,
                Err(e) => return Err(e),
            }
        }
        rows.push(row);
    }
    Ok(rows)
}
