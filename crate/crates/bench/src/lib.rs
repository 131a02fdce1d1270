//! Fixture programs for benchmarks.

use aspgraph_core::bench::BenchConfig;
use aspgraph_core::generator::{complete_digraph, complete_graph, cycle_graph};
use aspgraph_core::{gen_classic, gen_random, Classic, GenConfig, Program};

/// The `count` programs of the default benchmark's first round.
pub fn random_round(count: usize) -> Vec<Program> {
    let base = BenchConfig::default().generator;
    (0..count as u64)
        .map(|seed| {
            gen_random(&GenConfig {
                seed,
                ..base.clone()
            })
            .expect("default config is valid")
        })
        .collect()
}

/// `n` disjoint even loops: 2^n answer sets.
pub fn even_loops(n: usize) -> Program {
    let text: String = (0..n)
        .map(|i| format!("a{i} :- not b{i}. b{i} :- not a{i}.\n"))
        .collect();
    aspgraph_core::parse_program(&text).expect("fixture parses")
}

pub fn coloring_c4() -> Program {
    gen_classic(&Classic::Coloring {
        nodes: 4,
        edges: cycle_graph(4),
        colors: 3,
    })
    .unwrap()
}

pub fn coloring_k4() -> Program {
    gen_classic(&Classic::Coloring {
        nodes: 4,
        edges: complete_graph(4),
        colors: 3,
    })
    .unwrap()
}

pub fn hamiltonian_k4() -> Program {
    gen_classic(&Classic::Hamiltonian {
        nodes: 4,
        edges: complete_digraph(4),
    })
    .unwrap()
}
