//! Reference stable-model enumeration: try every interpretation and keep
//! those equal to the least model of their Gelfond–Lifschitz reduct.
//!
//! Deliberately naive. It shares no code with the graph engines and serves as
//! ground truth for differential testing.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::model::{normalize, AnswerSet};
use crate::program::{Atom, BodyLiteral, Program};

pub const DEFAULT_ATOM_CAP: usize = 20;

/// Head given to reduced constraints. The `__` prefix cannot clash with program atoms.
pub const FALSE_ATOM: &str = "__false";

pub type Interpretation = BTreeSet<Atom>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("program has {atoms} atoms, above the oracle cap of {cap}")]
    TooManyAtoms { atoms: usize, cap: usize },
}

/// Gelfond–Lifschitz reduct. Rules blocked by `i` are dropped, remaining
/// negative literals are stripped, constraints get the head [`FALSE_ATOM`].
pub fn reduct(p: &Program, i: &Interpretation) -> Program {
    let mut out = Program::new();
    for rule in p.rules() {
        if rule.body.iter().any(|l| l.negated && i.contains(&l.atom)) {
            continue;
        }
        let body: Vec<BodyLiteral> = rule.body.iter().filter(|l| !l.negated).cloned().collect();
        let head = rule.head.clone().unwrap_or_else(|| Atom::new(FALSE_ATOM));
        out.push(Some(head), body);
    }
    out
}

/// Least model of a program without negation, by naive forward chaining.
/// Negative literals, if any, are ignored.
pub fn least_model(p_pos: &Program) -> Interpretation {
    let mut model = Interpretation::new();
    loop {
        let mut changed = false;
        for rule in p_pos.rules() {
            let Some(head) = &rule.head else { continue };
            if model.contains(head) {
                continue;
            }
            if rule
                .body
                .iter()
                .all(|l| l.negated || model.contains(&l.atom))
            {
                model.insert(head.clone());
                changed = true;
            }
        }
        if !changed {
            return model;
        }
    }
}

pub fn is_stable(p: &Program, i: &Interpretation) -> bool {
    least_model(&reduct(p, i)) == *i
}

/// Program compiled to bit masks, for checking many interpretations quickly.
#[derive(Debug, Clone)]
pub struct CompiledProgram {
    atoms: Vec<Atom>,
    rules: Vec<MaskRule>,
}

#[derive(Debug, Clone, Copy)]
struct MaskRule {
    // None is the false head of a constraint.
    head: Option<u32>,
    pos: u64,
    neg: u64,
}

impl CompiledProgram {
    /// Panics if the program has more than 64 atoms.
    pub fn new(p: &Program) -> Self {
        let atoms: Vec<Atom> = p.atoms().iter().cloned().collect();
        assert!(atoms.len() <= 64, "mask encoding supports at most 64 atoms");
        let index: BTreeMap<&Atom, u32> = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a, i as u32))
            .collect();
        let rules = p
            .rules()
            .iter()
            .map(|r| {
                let mut pos = 0u64;
                let mut neg = 0u64;
                for l in &r.body {
                    let bit = 1u64 << index[&l.atom];
                    if l.negated {
                        neg |= bit;
                    } else {
                        pos |= bit;
                    }
                }
                MaskRule {
                    head: r.head.as_ref().map(|h| index[h]),
                    pos,
                    neg,
                }
            })
            .collect();
        CompiledProgram { atoms, rules }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// Least model of the reduct w.r.t. `i`; `None` when a constraint fires.
    fn reduct_least_model(&self, i: u64) -> Option<u64> {
        let mut model = 0u64;
        loop {
            let mut changed = false;
            for r in &self.rules {
                if r.neg & i != 0 || r.pos & !model != 0 {
                    continue;
                }
                match r.head {
                    None => return None,
                    Some(h) if model & (1 << h) == 0 => {
                        model |= 1 << h;
                        changed = true;
                    }
                    Some(_) => {}
                }
            }
            if !changed {
                return Some(model);
            }
        }
    }

    pub fn is_stable_mask(&self, i: u64) -> bool {
        self.reduct_least_model(i) == Some(i)
    }

    pub fn mask_of(&self, true_atoms: &Interpretation) -> Option<u64> {
        let mut mask = 0;
        for a in true_atoms {
            let ix = self.atoms.binary_search(a).ok()?;
            mask |= 1u64 << ix;
        }
        Some(mask)
    }

    pub fn answer_set(&self, mask: u64) -> AnswerSet {
        self.atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, a)| a.clone())
            .collect()
    }
}

/// All stable models, sorted. Interpretations are visited by increasing size,
/// then lexicographically.
pub fn enumerate_stable(p: &Program) -> Result<Vec<AnswerSet>, OracleError> {
    enumerate_stable_capped(p, DEFAULT_ATOM_CAP)
}

pub fn enumerate_stable_capped(p: &Program, cap: usize) -> Result<Vec<AnswerSet>, OracleError> {
    let n = p.atoms().len();
    if n > cap.min(63) {
        return Err(OracleError::TooManyAtoms {
            atoms: n,
            cap: cap.min(63),
        });
    }
    let compiled = CompiledProgram::new(p);
    let mut found = Vec::new();
    for size in 0..=n {
        for_each_subset(n, size, |mask| {
            if compiled.is_stable_mask(mask) {
                found.push(compiled.answer_set(mask));
            }
        });
    }
    Ok(normalize(found))
}

/// Visits the `k`-subsets of `0..n` as bit masks in lexicographic order.
fn for_each_subset(n: usize, k: usize, mut visit: impl FnMut(u64)) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(idx.iter().fold(0u64, |m, &i| m | (1 << i)));
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_program;
    use crate::program::print_program;

    fn prog(text: &str) -> Program {
        parse_program(text).unwrap()
    }

    fn interp(names: &[&str]) -> Interpretation {
        names.iter().map(|n| Atom::new(*n)).collect()
    }

    fn sets(list: &[&[&str]]) -> Vec<AnswerSet> {
        list.iter().map(|s| s.iter().copied().collect()).collect()
    }

    #[test]
    fn reduct_examples() {
        assert_eq!(
            print_program(&reduct(&prog("p :- not q."), &interp(&[]))),
            "p."
        );
        assert!(reduct(&prog("p :- not q."), &interp(&["q"])).is_empty());
        assert_eq!(
            print_program(&reduct(&prog("p :- q, not r."), &interp(&["p", "q"]))),
            "p :- q."
        );
        assert_eq!(
            print_program(&reduct(&prog(":- not q."), &interp(&[]))),
            "__false."
        );
    }

    #[test]
    fn least_model_examples() {
        assert_eq!(least_model(&prog("q. p :- q.")), interp(&["p", "q"]));
        assert_eq!(least_model(&prog("p :- q. q :- p.")), interp(&[]));
        assert_eq!(least_model(&Program::new()), interp(&[]));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(
            enumerate_stable(&prog("p :- not q. q :- not p.")).unwrap(),
            sets(&[&["p"], &["q"]])
        );
        assert!(
            enumerate_stable(&prog("p :- not q. q :- not r. r :- not p."))
                .unwrap()
                .is_empty()
        );
        assert_eq!(
            enumerate_stable(&prog("m :- p. m :- not q. m :- r. :- not m. :- n.")).unwrap(),
            sets(&[&["m"]])
        );
    }

    #[test]
    fn too_many_atoms() {
        let text: String = (0..21).map(|i| format!("a{i}. ")).collect();
        assert_eq!(
            enumerate_stable(&prog(&text)),
            Err(OracleError::TooManyAtoms { atoms: 21, cap: 20 })
        );
        assert_eq!(enumerate_stable_capped(&prog(&text), 21).unwrap().len(), 1);
    }

    #[test]
    fn subsets_in_size_then_lex_order() {
        let mut seen = Vec::new();
        for k in 0..=3 {
            for_each_subset(3, k, |m| seen.push(m));
        }
        assert_eq!(seen, vec![0, 1, 2, 4, 3, 5, 6, 7]);
    }

    #[test]
    fn compiled_agrees_with_symbolic_check() {
        let p = prog("a :- not b. b :- not a. c :- a. c :- b. :- c, not a.");
        let compiled = CompiledProgram::new(&p);
        for mask in 0..(1u64 << 3) {
            let i: Interpretation = compiled.answer_set(mask).atoms().clone();
            let constraint_ok = p
                .rules()
                .iter()
                .filter(|r| r.is_constraint())
                .all(|r| !r.body_holds_in(&i));
            assert_eq!(
                compiled.is_stable_mask(mask),
                is_stable(&p, &i) && constraint_ok,
                "{mask}"
            );
        }
    }
}
