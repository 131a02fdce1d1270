use aspgraph_core::grasp::{solve_grasp_with, GraspOptions};
use aspgraph_core::oracle::enumerate_stable;
use aspgraph_core::{gen_random, solve_grasp, solve_igasp, GenConfig};
use proptest::prelude::*;

fn config(seed: u64) -> GenConfig {
    GenConfig {
        num_atoms: 3 + (seed % 8) as usize,
        num_rules: 4 + (seed % 12) as usize,
        max_body_len: 3,
        naf_probability: 0.5,
        constraint_fraction: 0.15,
        seed,
    }
}

#[test]
fn engines_agree_with_oracle_on_seeded_programs() {
    for seed in 0..600 {
        let p = gen_random(&config(seed)).unwrap();
        let expected = enumerate_stable(&p).unwrap();
        assert_eq!(
            solve_grasp(&p).unwrap(),
            expected,
            "grasp, seed {seed}:\n{p}"
        );
        assert_eq!(solve_igasp(&p), expected, "igasp, seed {seed}:\n{p}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn engines_agree_with_oracle(
        atoms in 1usize..=12,
        rules in 1usize..=20,
        max_body_len in 1usize..=4,
        naf in 0.0f64..=1.0,
        constraints in 0.0f64..=0.4,
        seed in any::<u64>(),
    ) {
        let c = GenConfig {
            num_atoms: atoms,
            num_rules: rules,
            max_body_len,
            naf_probability: naf,
            constraint_fraction: constraints,
            seed,
        };
        let p = gen_random(&c).unwrap();
        let expected = enumerate_stable(&p).unwrap();
        prop_assert_eq!(&solve_grasp(&p).unwrap(), &expected);
        prop_assert_eq!(&solve_igasp(&p), &expected);
    }

    /// Dropping edges that fixed values make irrelevant never changes the answer.
    #[test]
    fn edge_pruning_is_safe(seed in any::<u64>(), atoms in 2usize..=10, rules in 2usize..=16) {
        let p = gen_random(&GenConfig { constraint_fraction: 0.1, ..GenConfig::new(atoms, rules, seed) }).unwrap();
        let unpruned = GraspOptions { prune_edges: false, ..Default::default() };
        prop_assert_eq!(solve_grasp(&p).unwrap(), solve_grasp_with(&p, &unpruned).unwrap());
    }
}
