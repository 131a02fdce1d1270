//! Graph-based answer set solving for ground (propositional) programs.
//!
//! Programs are turned into dependency graphs with conjunction nodes for
//! multi-literal bodies. Two engines compute stable models over that graph:
//! [`grasp`] works bottom-up through strongly connected components, [`igasp`]
//! works top-down from the constraints. [`oracle`] is a brute-force reference
//! and [`justifier`] explains why each atom has its value.

pub mod bench;
pub mod cycles;
pub mod generator;
pub mod graph;
pub mod grasp;
pub mod igasp;
pub mod justifier;
pub mod model;
pub mod oracle;
pub mod parser;
pub mod program;
pub mod solve;

pub use cycles::{cycle_stats, CycleKind, CycleStats};
pub use generator::{gen_classic, gen_random, Classic, ConfigError, GenConfig};
pub use graph::{
    atoms_of, build_cnr, build_dg, cnr_to_dg, export_dot, DepGraph, Edge, NodeId, NodeIx, NodeKind,
    Sign, TruthValue,
};
pub use grasp::{solve_grasp, solve_grasp_with, GraspOptions, World};
pub use igasp::{solve_igasp, solve_query};
pub use justifier::{check_justified, justify, JustificationTree, JustifyError};
pub use model::AnswerSet;
pub use parser::{parse_program, ParseError};
pub use program::{print_program, Atom, BodyLiteral, Program, Rule};
pub use solve::{solve, solve_with, Budget, SolveError, SolverKind};
