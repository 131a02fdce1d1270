use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use aspgraph_core::bench::{run_bench_with, BenchConfig};
use aspgraph_core::cycles::DEFAULT_CYCLE_CAP;
use aspgraph_core::generator::{complete_digraph, complete_graph, cycle_graph, gen_random_text};
use aspgraph_core::igasp::solve_query_with;
use aspgraph_core::justifier::export_dot_justified;
use aspgraph_core::{
    build_cnr, build_dg, cycle_stats, export_dot, gen_classic, justify, parse_program, AnswerSet,
    Budget, Classic, GenConfig, Program, SolverKind, World,
};

/// Exit status: 0 when at least one answer set was found, 1 when there is
/// none, 2 on any error.
#[derive(Parser)]
#[command(name = "aspgraph", version, about = "Graph-based answer set solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the answer sets of a program.
    Solve {
        /// Program file, or `-` for standard input.
        file: PathBuf,
        #[arg(long, default_value = "grasp")]
        solver: SolverKind,
        #[arg(long)]
        json: bool,
        /// Print only the first N answer sets in sorted order.
        #[arg(long)]
        max_models: Option<usize>,
        /// Give up after this many seconds.
        #[arg(long)]
        timeout: Option<f64>,
    },
    /// Print the answer sets in which an atom holds (or, with --negative, does not).
    Query {
        file: PathBuf,
        atom: String,
        #[arg(long)]
        negative: bool,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        timeout: Option<f64>,
    },
    /// Explain the value of an atom in one answer set.
    Justify {
        file: PathBuf,
        atom: String,
        /// Which answer set, counting from 0 in sorted order.
        #[arg(long, default_value_t = 0)]
        model_index: usize,
        #[arg(long, value_enum, default_value_t = TreeFormat::Text)]
        format: TreeFormat,
        #[arg(long, default_value = "grasp")]
        solver: SolverKind,
    },
    /// Generate a program.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Export the dependency graph.
    Graph {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
        /// Export the graph before conjunction edges are flipped.
        #[arg(long)]
        cnr: bool,
        /// Print cycle counts as JSON instead of the graph.
        #[arg(long)]
        stats: bool,
    },
    /// Time the solvers on rounds of generated programs.
    Bench {
        #[arg(long, default_value_t = 5)]
        rounds: usize,
        #[arg(long, default_value_t = 20)]
        programs_per_round: usize,
        /// JSON generator config; fields left out keep the benchmark defaults.
        #[arg(long)]
        gen_config: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "grasp,igasp")]
        solvers: Vec<SolverKind>,
        /// Per-program, per-solver timeout in seconds.
        #[arg(long, default_value_t = 10.0)]
        timeout: f64,
        #[arg(long)]
        json: bool,
        /// Skip comparing the solvers' answers.
        #[arg(long)]
        no_differential: bool,
        /// Report each program on standard error as it finishes.
        #[arg(long)]
        verbose: bool,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// A uniform random program.
    Random {
        #[arg(long, default_value_t = 10)]
        atoms: usize,
        #[arg(long, default_value_t = 15)]
        rules: usize,
        #[arg(long, default_value_t = 3)]
        max_body_len: usize,
        #[arg(long, default_value_t = 0.5)]
        naf: f64,
        #[arg(long, default_value_t = 0.05)]
        constraints: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Graph coloring of a cycle or complete graph.
    Coloring {
        #[arg(long, default_value_t = 4)]
        nodes: usize,
        #[arg(long, default_value_t = 3)]
        colors: usize,
        #[arg(long, value_enum, default_value_t = Shape::Cycle)]
        graph: Shape,
    },
    /// Hamiltonian cycle on a complete directed graph.
    Hamiltonian {
        #[arg(long, default_value_t = 4)]
        nodes: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Shape {
    Cycle,
    Complete,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TreeFormat {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Serialize)]
struct SolveOutput<'a> {
    answer_sets: &'a [AnswerSet],
    count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    total: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    query: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    holds_in: Option<usize>,
}

#[derive(Serialize)]
struct StatsOutput {
    rules: usize,
    even_cycles: usize,
    odd_cycles: usize,
    positive_cycles: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Solve {
            file,
            solver,
            json,
            max_models,
            timeout,
        } => {
            let program = load(&file)?;
            let mut models = aspgraph_core::solve_with(&program, solver, budget(timeout)?)?;
            let total = models.len();
            if let Some(n) = max_models {
                models.truncate(n);
            }
            let output = SolveOutput {
                answer_sets: &models,
                count: models.len(),
                total: (models.len() < total).then_some(total),
                query: None,
                holds_in: None,
            };
            print_models(&output, json)?;
            Ok(found(total))
        }
        Command::Query {
            file,
            atom,
            negative,
            json,
            timeout,
        } => {
            let program = load(&file)?;
            let models = solve_query_with(&program, &atom, !negative, budget(timeout)?)?;
            let output = SolveOutput {
                answer_sets: &models,
                count: models.len(),
                total: None,
                query: Some(if negative {
                    format!("not {atom}")
                } else {
                    atom
                }),
                holds_in: Some(models.len()),
            };
            print_models(&output, json)?;
            Ok(found(models.len()))
        }
        Command::Justify {
            file,
            atom,
            model_index,
            format,
            solver,
        } => {
            let program = load(&file)?;
            if !program.contains_atom(&atom) {
                bail!("`{atom}` is not an atom of the program");
            }
            let models = aspgraph_core::solve(&program, solver)?;
            if models.is_empty() {
                eprintln!("no answer sets");
                return Ok(ExitCode::from(1));
            }
            let model = models.get(model_index).ok_or_else(|| {
                anyhow!(
                    "model index {model_index} out of range ({} answer sets)",
                    models.len()
                )
            })?;
            let g = build_dg(&program);
            let world = World::from_answer_set(&g, model);
            match format {
                TreeFormat::Dot => print!("{}", export_dot_justified(&g, &world)),
                TreeFormat::Text => print!("{}", justify(&g, &world, &atom)?.to_text()),
                TreeFormat::Json => println!("{}", justify(&g, &world, &atom)?.to_json()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen { kind } => {
            print!("{}", generate(kind)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Graph {
            file,
            format,
            cnr,
            stats,
        } => {
            let program = load(&file)?;
            let g = if cnr {
                build_cnr(&program)
            } else {
                build_dg(&program)
            };
            if stats {
                let s = cycle_stats(&build_dg(&program), cycle_cap()?)?;
                let out = StatsOutput {
                    rules: program.len(),
                    even_cycles: s.even,
                    odd_cycles: s.odd,
                    positive_cycles: s.positive,
                };
                println!("{}", serde_json::to_string(&out)?);
            } else if format == GraphFormat::Json {
                println!("{}", serde_json::to_string_pretty(&g.to_document())?);
            } else {
                print!("{}", export_dot(&g));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench {
            rounds,
            programs_per_round,
            gen_config,
            solvers,
            timeout,
            json,
            no_differential,
            verbose,
        } => {
            let mut cfg = BenchConfig {
                rounds,
                programs_per_round,
                solvers,
                timeout: seconds(timeout)?,
                cycle_cap: cycle_cap()?,
                differential: !no_differential,
                ..Default::default()
            };
            if let Some(path) = gen_config {
                cfg.generator = load_gen_config(&path, &cfg.generator)?;
            }
            let report = run_bench_with(&cfg, |p| {
                if verbose {
                    let runs: Vec<String> = p
                        .runs
                        .iter()
                        .map(|r| match r.answer_set_count {
                            Some(n) => format!("{} {:.4}s {n} models", r.solver, r.wall_time),
                            None if r.timed_out => format!("{} timeout", r.solver),
                            None => format!("{} skipped", r.solver),
                        })
                        .collect();
                    eprintln!("round {} seed {}: {}", p.round, p.seed, runs.join(", "));
                }
            })?;
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_table());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn found(count: usize) -> ExitCode {
    if count > 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn print_models(output: &SolveOutput, json: bool) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string(output)?);
    } else {
        for m in output.answer_sets {
            println!("{m}");
        }
    }
    Ok(())
}

fn load(path: &Path) -> Result<Program> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .context("reading standard input")?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    parse_program(&text).with_context(|| format!("parsing {}", path.display()))
}

fn seconds(s: f64) -> Result<Duration> {
    Duration::try_from_secs_f64(s).map_err(|_| anyhow!("invalid duration: {s} seconds"))
}

fn budget(timeout: Option<f64>) -> Result<Budget> {
    Ok(match timeout {
        Some(s) => Budget::for_duration(seconds(s)?),
        None => Budget::unlimited(),
    })
}

fn cycle_cap() -> Result<usize> {
    match std::env::var("ASPGRAPH_CYCLE_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("ASPGRAPH_CYCLE_CAP must be a number, got `{v}`")),
        Err(_) => Ok(DEFAULT_CYCLE_CAP),
    }
}

/// Reads a JSON generator config, filling missing fields from `base`.
fn load_gen_config(path: &Path, base: &GenConfig) -> Result<GenConfig> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut merged = serde_json::to_value(base)?;
    let given: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let (Some(target), Some(fields)) = (merged.as_object_mut(), given.as_object()) else {
        bail!("{} must contain a JSON object", path.display());
    };
    for (k, v) in fields {
        target.insert(k.clone(), v.clone());
    }
    let cfg: GenConfig = serde_json::from_value(merged)?;
    cfg.validate()?;
    Ok(cfg)
}

fn generate(kind: GenKind) -> Result<String> {
    Ok(match kind {
        GenKind::Random {
            atoms,
            rules,
            max_body_len,
            naf,
            constraints,
            seed,
        } => gen_random_text(&GenConfig {
            num_atoms: atoms,
            num_rules: rules,
            max_body_len,
            naf_probability: naf,
            constraint_fraction: constraints,
            seed,
        })?,
        GenKind::Coloring {
            nodes,
            colors,
            graph,
        } => {
            let edges = match graph {
                Shape::Cycle => cycle_graph(nodes),
                Shape::Complete => complete_graph(nodes),
            };
            let problem = Classic::Coloring {
                nodes,
                edges,
                colors,
            };
            classic_text(&problem)?
        }
        GenKind::Hamiltonian { nodes } => classic_text(&Classic::Hamiltonian {
            nodes,
            edges: complete_digraph(nodes),
        })?,
    })
}

fn classic_text(problem: &Classic) -> Result<String> {
    let program = gen_classic(problem)?;
    Ok(format!(
        "% classic: {}\n{program}\n",
        serde_json::to_string(problem)?
    ))
}
