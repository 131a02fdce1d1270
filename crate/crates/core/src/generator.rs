//! Seeded program generators: uniform random programs and ground encodings
//! of graph coloring and Hamiltonian cycle.
//!
//! Randomness comes from ChaCha8 seeded with `seed_from_u64`, so a given
//! configuration produces the same program on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::program::{Atom, BodyLiteral, Program};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("{0} must be at least 1")]
    Zero(&'static str),
    #[error("{name} = {value} is outside [0, 1]")]
    Fraction { name: &'static str, value: f64 },
    #[error("edge ({0}, {1}) refers to a missing node")]
    EdgeOutOfRange(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GenConfig {
    pub num_atoms: usize,
    pub num_rules: usize,
    pub max_body_len: usize,
    pub naf_probability: f64,
    pub constraint_fraction: f64,
    pub seed: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            num_atoms: 10,
            num_rules: 15,
            max_body_len: 3,
            naf_probability: 0.5,
            constraint_fraction: 0.05,
            seed: 0,
        }
    }
}

impl GenConfig {
    pub fn new(num_atoms: usize, num_rules: usize, seed: u64) -> Self {
        GenConfig {
            num_atoms,
            num_rules,
            seed,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.num_atoms == 0 {
            return Err(ConfigError::Zero("num_atoms"));
        }
        if self.num_rules == 0 {
            return Err(ConfigError::Zero("num_rules"));
        }
        if self.max_body_len == 0 {
            return Err(ConfigError::Zero("max_body_len"));
        }
        for (name, value) in [
            ("naf_probability", self.naf_probability),
            ("constraint_fraction", self.constraint_fraction),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(ConfigError::Fraction { name, value });
            }
        }
        Ok(())
    }

    /// The `% genconfig: {...}` comment line that prefixes generated text.
    pub fn header(&self) -> String {
        format!(
            "% genconfig: {}",
            serde_json::to_string(self).expect("config serializes")
        )
    }
}

/// A random program. Each rule draws a head uniformly, a body length
/// uniformly from `0..=max_body_len` (capped by the atom count) and that many
/// distinct body atoms, each negated with `naf_probability`. A share of
/// `constraint_fraction` rules are headless; those always get a body.
pub fn gen_random(c: &GenConfig) -> Result<Program, ConfigError> {
    c.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let atom = |i: usize| Atom::new(format!("p{i}"));
    let max_len = c.max_body_len.min(c.num_atoms);
    let mut program = Program::new();
    let mut pool: Vec<usize> = (0..c.num_atoms).collect();
    for _ in 0..c.num_rules {
        let constraint = rng.random_bool(c.constraint_fraction);
        let head = rng.random_range(0..c.num_atoms);
        let min_len = usize::from(constraint);
        let len = rng.random_range(min_len..=max_len);
        // Partial Fisher-Yates: the first `len` slots become distinct atoms.
        for i in 0..len {
            let j = rng.random_range(i..pool.len());
            pool.swap(i, j);
        }
        let body = pool[..len]
            .iter()
            .map(|&a| BodyLiteral {
                atom: atom(a),
                negated: rng.random_bool(c.naf_probability),
            })
            .collect();
        program.push((!constraint).then(|| atom(head)), body);
    }
    Ok(program)
}

/// `gen_random` rendered as text, with the config header.
pub fn gen_random_text(c: &GenConfig) -> Result<String, ConfigError> {
    let program = gen_random(c)?;
    Ok(format!("{}\n{}\n", c.header(), program))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "problem")]
pub enum Classic {
    /// Proper `colors`-colorings of an undirected graph.
    Coloring {
        nodes: usize,
        edges: Vec<(usize, usize)>,
        colors: usize,
    },
    /// Directed Hamiltonian cycles.
    Hamiltonian {
        nodes: usize,
        edges: Vec<(usize, usize)>,
    },
}

/// Edges of the undirected cycle `0 - 1 - ... - (n-1) - 0`.
pub fn cycle_graph(n: usize) -> Vec<(usize, usize)> {
    match n {
        0 | 1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => (0..n).map(|i| (i, (i + 1) % n)).collect(),
    }
}

/// Edges of the undirected complete graph.
pub fn complete_graph(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

/// Arcs of the complete directed graph without self-loops.
pub fn complete_digraph(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect()
}

/// Ground encoding of a classic problem; one stable model per solution.
///
/// Choices use mutually exclusive rules (`a :- not b, not c.` for each
/// option), the smallest normal-program choice that yields exactly one
/// chosen option per group.
pub fn gen_classic(problem: &Classic) -> Result<Program, ConfigError> {
    match problem {
        Classic::Coloring {
            nodes,
            edges,
            colors,
        } => coloring(*nodes, edges, *colors),
        Classic::Hamiltonian { nodes, edges } => hamiltonian(*nodes, edges),
    }
}

fn check_edges(nodes: usize, edges: &[(usize, usize)]) -> Result<(), ConfigError> {
    if nodes == 0 {
        return Err(ConfigError::Zero("nodes"));
    }
    match edges.iter().find(|&&(u, v)| u >= nodes || v >= nodes) {
        Some(&(u, v)) => Err(ConfigError::EdgeOutOfRange(u, v)),
        None => Ok(()),
    }
}

/// Exactly one atom of `group` is true.
fn choose_one(p: &mut Program, group: &[Atom]) {
    for (i, chosen) in group.iter().enumerate() {
        let body = group
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, other)| BodyLiteral::neg(other.name()))
            .collect();
        p.push(Some(chosen.clone()), body);
    }
}

fn coloring(nodes: usize, edges: &[(usize, usize)], colors: usize) -> Result<Program, ConfigError> {
    check_edges(nodes, edges)?;
    if colors == 0 {
        return Err(ConfigError::Zero("colors"));
    }
    let color = |v: usize, k: usize| Atom::new(format!("col_{v}_{k}"));
    let mut p = Program::new();
    for v in 0..nodes {
        let group: Vec<Atom> = (0..colors).map(|k| color(v, k)).collect();
        choose_one(&mut p, &group);
    }
    for &(u, v) in edges {
        for k in 0..colors {
            p.push(
                None,
                vec![
                    BodyLiteral::pos(color(u, k).name()),
                    BodyLiteral::pos(color(v, k).name()),
                ],
            );
        }
    }
    Ok(p)
}

fn hamiltonian(nodes: usize, edges: &[(usize, usize)]) -> Result<Program, ConfigError> {
    check_edges(nodes, edges)?;
    let arc = |u: usize, v: usize| Atom::new(format!("in_{u}_{v}"));
    let reached = |v: usize| Atom::new(format!("r_{v}"));
    let mut arcs = edges.to_vec();
    arcs.sort_unstable();
    arcs.dedup();

    let mut p = Program::new();
    // One outgoing arc per node.
    for u in 0..nodes {
        let group: Vec<Atom> = arcs
            .iter()
            .filter(|&&(a, _)| a == u)
            .map(|&(a, b)| arc(a, b))
            .collect();
        choose_one(&mut p, &group);
    }
    // At most one incoming arc per node.
    for v in 0..nodes {
        let incoming: Vec<usize> = arcs
            .iter()
            .filter(|&&(_, b)| b == v)
            .map(|&(a, _)| a)
            .collect();
        for (i, &u) in incoming.iter().enumerate() {
            for &w in &incoming[i + 1..] {
                p.push(
                    None,
                    vec![
                        BodyLiteral::pos(arc(u, v).name()),
                        BodyLiteral::pos(arc(w, v).name()),
                    ],
                );
            }
        }
    }
    // Every node is reached from node 0 along chosen arcs.
    for &(u, v) in &arcs {
        let mut body = vec![BodyLiteral::pos(arc(u, v).name())];
        if u != 0 {
            body.push(BodyLiteral::pos(reached(u).name()));
        }
        p.push(Some(reached(v)), body);
    }
    for v in 0..nodes {
        p.push(None, vec![BodyLiteral::neg(reached(v).name())]);
    }
    Ok(p)
}
