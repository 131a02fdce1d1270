//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use aspgraph_core::bench::BenchReport;
use aspgraph_core::generator::{complete_digraph, complete_graph, cycle_graph};
use aspgraph_core::justifier::Reason;
use aspgraph_core::oracle::enumerate_stable;
use aspgraph_core::{
    build_cnr, build_dg, check_justified, cnr_to_dg, cycle_stats, gen_classic, gen_random, justify,
    parse_program, solve, solve_query, AnswerSet, Classic, GenConfig, NodeKind, Program,
    SolverKind, World,
};

const GOLDEN_LIMIT: Duration = Duration::from_secs(1);
const TAXONOMY_LIMIT: Duration = Duration::from_secs(1);
const DIFFERENTIAL_PROGRAMS: u64 = 500;
const DIFFERENTIAL_MAX_ATOMS: usize = 10;
const DIFFERENTIAL_MAX_RULES: usize = 15;
const DIFFERENTIAL_LIMIT: Duration = Duration::from_secs(300);
const CLASSIC_LIMIT: Duration = Duration::from_secs(30);
const BENCH_ROUNDS: usize = 5;
const BENCH_PROGRAMS: usize = 20;
const BENCH_RULES: f64 = 300.0;
const BENCH_RULES_TOLERANCE: f64 = 0.0;
const BENCH_TIMEOUT_SECS: u64 = 10;
const GRAPH_PROGRAMS: u64 = 1000;
const GRAPH_LIMIT: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn prog(text: &str) -> Program {
    parse_program(text).expect("valid program")
}

fn sets(list: &[&[&str]]) -> Vec<AnswerSet> {
    list.iter().map(|s| s.iter().copied().collect()).collect()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed <= limit, || {
        format!("took {elapsed:.2?}, limit {limit:?}")
    })
}

/// Solves with every engine and requires identical answers.
fn agree(p: &Program) -> Result<Vec<AnswerSet>, String> {
    let oracle = solve(p, SolverKind::Oracle).map_err(|e| e.to_string())?;
    for solver in [SolverKind::Grasp, SolverKind::Igasp] {
        let got = solve(p, solver).map_err(|e| e.to_string())?;
        check(got == oracle, || {
            format!("{solver} disagrees with oracle on\n{p}")
        })?;
    }
    Ok(oracle)
}

fn expect(p: &Program, want: Vec<AnswerSet>) -> Result<(), String> {
    let got = agree(p)?;
    check(got == want, || {
        format!("got {got:?}, expected {want:?} for\n{p}")
    })
}

fn golden() -> Vec<(Program, Vec<AnswerSet>)> {
    vec![
        (prog("p :- q, not r, not p."), sets(&[&[]])),
        (prog("p :- q, not p. p :- not r."), sets(&[&["p"]])),
        (prog("p :- not q, not r, not p."), vec![]),
        (prog(":- not q, not r."), vec![]),
        (
            prog("m :- p. m :- not q. m :- r. :- not m. :- n."),
            sets(&[&["m"]]),
        ),
    ]
}

fn taxonomy() -> Vec<(Program, Vec<AnswerSet>)> {
    vec![
        (prog("p :- not q. q :- not p."), sets(&[&["p"], &["q"]])),
        (prog("p :- not q. q :- not r. r :- not p."), vec![]),
        (prog("p :- q. q :- p."), sets(&[&[]])),
        (prog("p :- p."), sets(&[&[]])),
    ]
}

fn differential_program(seed: u64) -> Program {
    let atoms = 1 + (seed as usize % DIFFERENTIAL_MAX_ATOMS);
    let rules = 1 + (seed as usize * 7 % DIFFERENTIAL_MAX_RULES);
    gen_random(&GenConfig {
        constraint_fraction: 0.1,
        ..GenConfig::new(atoms, rules, seed)
    })
    .expect("valid config")
}

fn classics() -> Vec<(&'static str, Program, usize)> {
    let make = |c: Classic| gen_classic(&c).expect("valid encoding");
    vec![
        (
            "3-coloring C4",
            make(Classic::Coloring {
                nodes: 4,
                edges: cycle_graph(4),
                colors: 3,
            }),
            18,
        ),
        (
            "3-coloring K4",
            make(Classic::Coloring {
                nodes: 4,
                edges: complete_graph(4),
                colors: 3,
            }),
            0,
        ),
        (
            "hamiltonian K4",
            make(Classic::Hamiltonian {
                nodes: 4,
                edges: complete_digraph(4),
            }),
            6,
        ),
    ]
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for (p, want) in golden() {
        expect(&p, want)?;
    }
    within(start.elapsed(), GOLDEN_LIMIT)?;
    Ok(format!("5 programs in {:.2?}", start.elapsed()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    for (p, want) in taxonomy() {
        expect(&p, want)?;
    }
    let even_odd = [
        ("p :- not q. q :- not p.", (1, 0, 0)),
        ("p :- not q. q :- not r. r :- not p.", (0, 1, 0)),
        ("p :- q. q :- p.", (0, 0, 1)),
    ];
    for (text, (even, odd, positive)) in even_odd {
        let stats = cycle_stats(&build_dg(&prog(text)), 100).map_err(|e| e.to_string())?;
        check(
            (stats.even, stats.odd, stats.positive) == (even, odd, positive),
            || format!("{text}: {stats:?}"),
        )?;
    }
    within(start.elapsed(), TAXONOMY_LIMIT)?;
    Ok(format!(
        "even/odd/positive loops in {:.2?}",
        start.elapsed()
    ))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut with_models = 0;
    for seed in 0..DIFFERENTIAL_PROGRAMS {
        let p = differential_program(seed);
        let oracle = enumerate_stable(&p).map_err(|e| e.to_string())?;
        for solver in [SolverKind::Grasp, SolverKind::Igasp] {
            let got = solve(&p, solver).map_err(|e| e.to_string())?;
            check(got == oracle, || {
                format!("seed {seed}: {solver} disagrees on\n{p}")
            })?;
        }
        with_models += usize::from(!oracle.is_empty());
    }
    within(start.elapsed(), DIFFERENTIAL_LIMIT)?;
    Ok(format!(
        "{DIFFERENTIAL_PROGRAMS} programs ({with_models} satisfiable) in {:.2?}",
        start.elapsed()
    ))
}

fn criterion_4() -> Outcome {
    let mut notes = Vec::new();
    for (name, p, count) in classics() {
        let start = Instant::now();
        let models = solve(&p, SolverKind::Grasp).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        check(models.len() == count, || {
            format!("{name}: {} models, expected {count}", models.len())
        })?;
        within(elapsed, CLASSIC_LIMIT).map_err(|e| format!("{name}: {e}"))?;
        let oracle = enumerate_stable(&p).map_err(|e| e.to_string())?;
        check(oracle == models, || format!("{name}: oracle disagrees"))?;
        notes.push(format!("{name}={count} ({elapsed:.2?})"));
    }
    Ok(notes.join(", "))
}

fn criterion_5() -> Outcome {
    let mut programs: Vec<Program> = golden().into_iter().map(|(p, _)| p).collect();
    programs.extend(taxonomy().into_iter().map(|(p, _)| p));
    programs.extend((0..DIFFERENTIAL_PROGRAMS).map(differential_program));
    programs.extend(classics().into_iter().map(|(_, p, _)| p));

    let (mut models, mut trees) = (0, 0);
    for p in &programs {
        let g = build_dg(p);
        for model in solve(p, SolverKind::Grasp).map_err(|e| e.to_string())? {
            let w = World::from_answer_set(&g, &model);
            check(check_justified(&g, &w), || {
                format!("{model} not justified in\n{p}")
            })?;
            models += 1;
            for atom in p.atoms() {
                let tree = justify(&g, &w, atom.name()).map_err(|e| e.to_string())?;
                for leaf in tree.leaves() {
                    let ok = matches!(leaf.reason, Reason::Fact | Reason::NoRules)
                        || leaf.reason.is_leaf_marker();
                    check(ok, || {
                        format!(
                            "{}: leaf {:?} in tree for {model}",
                            atom.name(),
                            leaf.reason
                        )
                    })?;
                }
                trees += 1;
            }
        }
    }
    Ok(format!("{models} models, {trees} trees"))
}

fn criterion_6() -> Outcome {
    let p = prog("p :- not q. q :- not p. :- p, q.");
    let got = solve_query(&p, "p", true).map_err(|e| e.to_string())?;
    check(got == sets(&[&["p"]]), || format!("got {got:?}"))?;
    let neg = solve_query(&p, "p", false).map_err(|e| e.to_string())?;
    check(neg == sets(&[&["q"]]), || {
        format!("negated query got {neg:?}")
    })?;
    Ok("query p -> {p}".into())
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_aspgraph"))
        .args([
            "bench",
            "--rounds",
            &BENCH_ROUNDS.to_string(),
            "--programs-per-round",
            &BENCH_PROGRAMS.to_string(),
            "--timeout",
            &BENCH_TIMEOUT_SECS.to_string(),
            "--json",
        ])
        .output()
        .map_err(|e| e.to_string())?;
    check(out.status.success(), || {
        format!(
            "bench exited {:?}: {}",
            out.status,
            String::from_utf8_lossy(&out.stderr)
        )
    })?;
    let report: BenchReport = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    check(report.rows.len() == BENCH_ROUNDS, || {
        format!("{} rows", report.rows.len())
    })?;
    check(
        report.programs.len() == BENCH_ROUNDS * BENCH_PROGRAMS,
        || format!("{} programs", report.programs.len()),
    )?;
    for row in &report.rows {
        check(
            (row.mean_rules - BENCH_RULES).abs() <= BENCH_RULES_TOLERANCE,
            || format!("round {} averages {} rules", row.round, row.mean_rules),
        )?;
        let grasp = row
            .solvers
            .iter()
            .find(|s| s.solver == SolverKind::Grasp)
            .ok_or("no grasp column")?;
        check(grasp.timeouts == 0, || {
            format!("round {}: {} grasp timeouts", row.round, grasp.timeouts)
        })?;
    }
    let table = report.to_table();
    let header: Vec<&str> = table
        .lines()
        .next()
        .unwrap_or("")
        .split_whitespace()
        .collect();
    check(
        header[..4] == ["Round", "#Rules", "#EC", "#OC"] && header[4..].contains(&"grasp"),
        || format!("header {header:?}"),
    )?;
    print!("{table}");
    Ok(format!(
        "{BENCH_ROUNDS}x{BENCH_PROGRAMS} programs, no grasp timeouts, {:.2?}",
        start.elapsed()
    ))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    for seed in 0..GRAPH_PROGRAMS {
        let p = gen_random(&GenConfig {
            num_atoms: 2 + (seed % 15) as usize,
            num_rules: 1 + (seed % 25) as usize,
            max_body_len: 1 + (seed % 5) as usize,
            constraint_fraction: 0.2,
            ..GenConfig::new(1, 1, seed)
        })
        .map_err(|e| e.to_string())?;
        let cnr = build_cnr(&p);

        let distinct: BTreeSet<_> = p
            .rules()
            .iter()
            .map(|r| {
                (
                    r.head.clone(),
                    r.body.iter().cloned().collect::<BTreeSet<_>>(),
                )
            })
            .collect();
        let (mut nodes, mut edges) = (p.atoms().len(), 0);
        for (head, body) in &distinct {
            nodes += usize::from(head.is_none());
            match body.len() {
                0 => {}
                1 => edges += 1,
                n => {
                    nodes += 1;
                    edges += n + 1;
                }
            }
        }
        check(
            (cnr.node_count(), cnr.edge_count()) == (nodes, edges),
            || format!("seed {seed}: counts differ"),
        )?;

        let dg = cnr_to_dg(&cnr).map_err(|e| e.to_string())?;
        for (a, b) in cnr.edges().iter().zip(dg.edges()) {
            let flipped = cnr.kind(a.from) == NodeKind::Conj || cnr.kind(a.to) == NodeKind::Conj;
            check((a.sign != b.sign) == flipped, || {
                format!("seed {seed}: sign flip")
            })?;
        }
        check(dg.flip_conjunction_signs().edges() == cnr.edges(), || {
            format!("seed {seed}: transform is not an involution")
        })?;
    }
    within(start.elapsed(), GRAPH_LIMIT)?;
    Ok(format!(
        "{GRAPH_PROGRAMS} programs in {:.2?}",
        start.elapsed()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("golden programs", criterion_1),
        ("cycle taxonomy", criterion_2),
        ("differential vs oracle", criterion_3),
        ("classic problems", criterion_4),
        ("justifications", criterion_5),
        ("goal-directed query", criterion_6),
        ("benchmark table", criterion_7),
        ("graph transform", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(note) => println!("criterion {} ({name}): PASS - {note}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL - {why}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
