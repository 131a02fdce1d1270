//! Shared solver plumbing: engine selection, time budgets, errors.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::AnswerSet;
use crate::oracle::{self, OracleError};
use crate::program::Program;
use crate::{grasp, igasp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("time budget exceeded")]
    Timeout,
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("query atom `{0}` does not occur in the program")]
    QueryAtomUnknown(String),
}

/// Optional wall-clock limit, polled cheaply from inner loops.
#[derive(Debug, Clone)]
pub struct Budget {
    deadline: Option<Instant>,
    ticks: u32,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            deadline: None,
            ticks: 0,
        }
    }

    pub fn until(deadline: Option<Instant>) -> Self {
        Budget { deadline, ticks: 0 }
    }

    pub fn for_duration(limit: Duration) -> Self {
        Self::until(Some(Instant::now() + limit))
    }

    pub fn deadline(&self) -> Option<Instant> {
        self.deadline
    }

    pub fn tick(&mut self) -> Result<(), SolveError> {
        let Some(deadline) = self.deadline else {
            return Ok(());
        };
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks.is_multiple_of(256) && Instant::now() >= deadline {
            return Err(SolveError::Timeout);
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::unlimited()
    }
}

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    #[default]
    Grasp,
    Igasp,
    Oracle,
}

impl SolverKind {
    pub const ALL: [SolverKind; 3] = [SolverKind::Grasp, SolverKind::Igasp, SolverKind::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Grasp => "grasp",
            SolverKind::Igasp => "igasp",
            SolverKind::Oracle => "oracle",
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "grasp" => Ok(SolverKind::Grasp),
            "igasp" => Ok(SolverKind::Igasp),
            "oracle" => Ok(SolverKind::Oracle),
            other => Err(format!(
                "unknown solver `{other}` (expected grasp, igasp or oracle)"
            )),
        }
    }
}

/// Runs the selected engine. The oracle ignores the budget.
pub fn solve_with(
    program: &Program,
    solver: SolverKind,
    budget: Budget,
) -> Result<Vec<AnswerSet>, SolveError> {
    match solver {
        SolverKind::Grasp => grasp::solve_grasp_with(
            program,
            &grasp::GraspOptions {
                budget,
                ..Default::default()
            },
        ),
        SolverKind::Igasp => igasp::solve_igasp_with(program, budget),
        SolverKind::Oracle => Ok(oracle::enumerate_stable(program)?),
    }
}

pub fn solve(program: &Program, solver: SolverKind) -> Result<Vec<AnswerSet>, SolveError> {
    solve_with(program, solver, Budget::unlimited())
}
