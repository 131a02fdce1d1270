//! Benchmark harness: rounds of generated programs, cycle statistics and
//! per-solver timings, with a differential check between solvers.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycles::{cycle_stats, CycleStats, DEFAULT_CYCLE_CAP};
use crate::generator::{gen_random, ConfigError, GenConfig};
use crate::graph::build_dg;
use crate::model::AnswerSet;
use crate::oracle::{self, DEFAULT_ATOM_CAP};
use crate::solve::{solve_with, Budget, SolveError, SolverKind};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BenchConfig {
    pub rounds: usize,
    pub programs_per_round: usize,
    /// Program `i` of round `r` uses seed `generator.seed + r * programs_per_round + i`.
    pub generator: GenConfig,
    pub solvers: Vec<SolverKind>,
    pub timeout: Duration,
    pub cycle_cap: usize,
    /// Compare every finished solver, and the oracle when the program is small enough.
    pub differential: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            rounds: 5,
            programs_per_round: 20,
            generator: GenConfig {
                num_atoms: 300,
                num_rules: 300,
                max_body_len: 3,
                naf_probability: 0.5,
                constraint_fraction: 0.01,
                seed: 0,
            },
            solvers: vec![SolverKind::Grasp, SolverKind::Igasp],
            timeout: Duration::from_secs(10),
            cycle_cap: DEFAULT_CYCLE_CAP,
            differential: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BenchError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("solvers disagree on the program with seed {seed}: {left} vs {right}")]
    Mismatch {
        seed: u64,
        left: SolverKind,
        right: SolverKind,
    },
    #[error("{0}")]
    Solve(SolveError),
}

/// One solver on one program.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub solver: SolverKind,
    pub wall_time: f64,
    /// `None` when the run timed out or the oracle was skipped.
    pub answer_set_count: Option<usize>,
    pub timed_out: bool,
    pub cycle_stats: Option<CycleStats>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProgramReport {
    pub round: usize,
    pub seed: u64,
    pub rules: usize,
    /// `None` when the cycle count exceeded the cap.
    pub cycles: Option<CycleStats>,
    pub runs: Vec<RunReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverColumn {
    pub solver: SolverKind,
    pub mean_seconds: f64,
    pub timeouts: usize,
}

/// One table row: round means and totals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundRow {
    pub round: usize,
    pub mean_rules: f64,
    pub even_cycles: usize,
    pub odd_cycles: usize,
    /// Programs whose cycles were not counted because they exceeded the cap.
    pub capped: usize,
    pub solvers: Vec<SolverColumn>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub rows: Vec<RoundRow>,
    pub programs: Vec<ProgramReport>,
}

pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport, BenchError> {
    run_bench_with(cfg, |_| {})
}

/// Like [`run_bench`], calling `progress` after each program.
pub fn run_bench_with(
    cfg: &BenchConfig,
    mut progress: impl FnMut(&ProgramReport),
) -> Result<BenchReport, BenchError> {
    cfg.generator.validate()?;
    let mut programs = Vec::new();
    for round in 0..cfg.rounds {
        for i in 0..cfg.programs_per_round {
            let seed = cfg
                .generator
                .seed
                .wrapping_add((round * cfg.programs_per_round + i) as u64);
            let report = run_program(cfg, round + 1, seed)?;
            progress(&report);
            programs.push(report);
        }
    }
    let rows = (1..=cfg.rounds)
        .map(|round| summarize(cfg, round, &programs))
        .collect();
    Ok(BenchReport { rows, programs })
}

fn run_program(cfg: &BenchConfig, round: usize, seed: u64) -> Result<ProgramReport, BenchError> {
    let gen = GenConfig {
        seed,
        ..cfg.generator.clone()
    };
    let program = gen_random(&gen)?;
    let cycles = cycle_stats(&build_dg(&program), cfg.cycle_cap).ok();
    let within_oracle_cap = program.atoms().len() <= DEFAULT_ATOM_CAP;

    let mut runs = Vec::new();
    let mut results: Vec<(SolverKind, Vec<AnswerSet>)> = Vec::new();
    for &solver in &cfg.solvers {
        if solver == SolverKind::Oracle && !within_oracle_cap {
            runs.push(RunReport {
                solver,
                wall_time: 0.0,
                answer_set_count: None,
                timed_out: false,
                cycle_stats: cycles,
            });
            continue;
        }
        let start = Instant::now();
        let outcome = solve_with(&program, solver, Budget::for_duration(cfg.timeout));
        let wall_time = start.elapsed().as_secs_f64();
        let (count, timed_out) = match outcome {
            Ok(models) => {
                let n = models.len();
                results.push((solver, models));
                (Some(n), false)
            }
            Err(SolveError::Timeout) => (None, true),
            Err(e) => return Err(BenchError::Solve(e)),
        };
        runs.push(RunReport {
            solver,
            wall_time,
            answer_set_count: count,
            timed_out,
            cycle_stats: cycles,
        });
    }

    if cfg.differential {
        if within_oracle_cap && !cfg.solvers.contains(&SolverKind::Oracle) {
            let models = oracle::enumerate_stable(&program)
                .map_err(SolveError::from)
                .map_err(BenchError::Solve)?;
            results.push((SolverKind::Oracle, models));
        }
        if let Some((first, expected)) = results.first() {
            if let Some((other, _)) = results.iter().find(|(_, m)| m != expected) {
                return Err(BenchError::Mismatch {
                    seed,
                    left: *first,
                    right: *other,
                });
            }
        }
    }
    Ok(ProgramReport {
        round,
        seed,
        rules: program.len(),
        cycles,
        runs,
    })
}

fn summarize(cfg: &BenchConfig, round: usize, programs: &[ProgramReport]) -> RoundRow {
    let mine: Vec<&ProgramReport> = programs.iter().filter(|p| p.round == round).collect();
    let n = mine.len().max(1) as f64;
    let counted = mine.iter().filter_map(|p| p.cycles);
    let (even, odd) = counted.fold((0, 0), |(e, o), c| (e + c.even, o + c.odd));
    let solvers = cfg
        .solvers
        .iter()
        .map(|&solver| {
            let runs: Vec<&RunReport> = mine
                .iter()
                .flat_map(|p| p.runs.iter().filter(move |r| r.solver == solver))
                .collect();
            let total: f64 = runs.iter().map(|r| r.wall_time).sum();
            SolverColumn {
                solver,
                mean_seconds: total / runs.len().max(1) as f64,
                timeouts: runs.iter().filter(|r| r.timed_out).count(),
            }
        })
        .collect();
    RoundRow {
        round,
        mean_rules: mine.iter().map(|p| p.rules as f64).sum::<f64>() / n,
        even_cycles: even,
        odd_cycles: odd,
        capped: mine.iter().filter(|p| p.cycles.is_none()).count(),
        solvers,
    }
}

impl BenchReport {
    /// Fixed-width table: `Round  #Rules  #EC  #OC  <solver> ...`.
    ///
    /// Cycle totals with a trailing `+` exclude programs over the cycle cap;
    /// solver cells note timeouts as `(k TO)`.
    pub fn to_table(&self) -> String {
        let mut header = vec![
            "Round".to_string(),
            "#Rules".into(),
            "#EC".into(),
            "#OC".into(),
        ];
        if let Some(row) = self.rows.first() {
            header.extend(row.solvers.iter().map(|s| format!("{} (s)", s.solver)));
        }
        let mut lines = vec![header];
        for row in &self.rows {
            let plus = if row.capped > 0 { "+" } else { "" };
            let mut cells = vec![
                row.round.to_string(),
                format!("{:.1}", row.mean_rules),
                format!("{}{plus}", row.even_cycles),
                format!("{}{plus}", row.odd_cycles),
            ];
            for s in &row.solvers {
                let mut cell = format!("{:.4}", s.mean_seconds);
                if s.timeouts > 0 {
                    let _ = write!(cell, " ({} TO)", s.timeouts);
                }
                cells.push(cell);
            }
            lines.push(cells);
        }
        let columns = lines[0].len();
        let widths: Vec<usize> = (0..columns)
            .map(|c| {
                lines
                    .iter()
                    .map(|l| l.get(c).map_or(0, String::len))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for line in &lines {
            let cells: Vec<String> = line
                .iter()
                .zip(&widths)
                .map(|(cell, &w)| format!("{cell:>w$}"))
                .collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
