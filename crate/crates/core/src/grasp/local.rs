//! Stable-model search for the small normal program living inside one
//! strongly connected component, once everything outside it is fixed.

use crate::solve::{Budget, SolveError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct LocalRule {
    pub head: usize,
    pub pos: Vec<usize>,
    pub neg: Vec<usize>,
}

pub(crate) struct LocalProgram {
    atoms: usize,
    rules: Vec<LocalRule>,
    by_head: Vec<Vec<usize>>,
    forced: Vec<usize>,
    branch_order: Vec<usize>,
}

impl LocalProgram {
    pub fn new(atoms: usize, rules: Vec<LocalRule>, forced: Vec<usize>) -> Self {
        let mut by_head = vec![Vec::new(); atoms];
        let mut weight = vec![0usize; atoms];
        for (i, r) in rules.iter().enumerate() {
            by_head[r.head].push(i);
            for &n in &r.neg {
                weight[n] += 2;
            }
            weight[r.head] += 1;
        }
        // Atoms under many negations are the ones that split worlds; branch on them first.
        let mut branch_order: Vec<usize> = (0..atoms).collect();
        branch_order.sort_by(|&a, &b| weight[b].cmp(&weight[a]).then(a.cmp(&b)));
        LocalProgram {
            atoms,
            rules,
            by_head,
            forced,
            branch_order,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.rules.iter().all(|r| r.neg.is_empty())
    }

    /// Least model, for programs without negation.
    pub fn least_model(&self) -> Vec<bool> {
        let mut model = vec![false; self.atoms];
        for &f in &self.forced {
            model[f] = true;
        }
        loop {
            let mut changed = false;
            for r in &self.rules {
                if !model[r.head]
                    && r.pos.iter().all(|&p| model[p])
                    && r.neg.iter().all(|&n| !model[n])
                {
                    model[r.head] = true;
                    changed = true;
                }
            }
            if !changed {
                return model;
            }
        }
    }

    /// Every stable model, in branch order (true before false).
    pub fn stable_models(&self, budget: &mut Budget) -> Result<Vec<Vec<bool>>, SolveError> {
        let mut values = vec![None; self.atoms];
        for &f in &self.forced {
            values[f] = Some(true);
        }
        let mut out = Vec::new();
        self.search(values, &mut out, budget)?;
        Ok(out)
    }

    fn search(
        &self,
        mut values: Vec<Option<bool>>,
        out: &mut Vec<Vec<bool>>,
        budget: &mut Budget,
    ) -> Result<(), SolveError> {
        budget.tick()?;
        if !self.propagate(&mut values) {
            return Ok(());
        }
        let Some(&atom) = self.branch_order.iter().find(|&&a| values[a].is_none()) else {
            let model: Vec<bool> = values.iter().map(|v| v.unwrap()).collect();
            if self.is_stable(&model) {
                out.push(model);
            }
            return Ok(());
        };
        for choice in [true, false] {
            let mut next = values.clone();
            next[atom] = Some(choice);
            self.search(next, out, budget)?;
        }
        Ok(())
    }

    fn blocked(&self, r: &LocalRule, values: &[Option<bool>]) -> bool {
        r.pos.iter().any(|&p| values[p] == Some(false))
            || r.neg.iter().any(|&n| values[n] == Some(true))
    }

    fn set(values: &mut [Option<bool>], atom: usize, value: bool, changed: &mut bool) -> bool {
        match values[atom] {
            Some(v) => v == value,
            None => {
                values[atom] = Some(value);
                *changed = true;
                true
            }
        }
    }

    /// Unit propagation plus unfounded-set elimination. Returns false on conflict.
    fn propagate(&self, values: &mut [Option<bool>]) -> bool {
        loop {
            let mut changed = false;
            for r in &self.rules {
                let pos_true = r.pos.iter().all(|&p| values[p] == Some(true));
                let neg_false = r.neg.iter().all(|&n| values[n] == Some(false));
                if pos_true && neg_false && !Self::set(values, r.head, true, &mut changed) {
                    return false;
                }
                // A false head forbids the last undecided literal of an otherwise satisfied body.
                if values[r.head] == Some(false) && !self.blocked(r, values) {
                    let open: Vec<(usize, bool)> = r
                        .pos
                        .iter()
                        .filter(|&&p| values[p].is_none())
                        .map(|&p| (p, false))
                        .chain(
                            r.neg
                                .iter()
                                .filter(|&&n| values[n].is_none())
                                .map(|&n| (n, true)),
                        )
                        .collect();
                    match open.as_slice() {
                        [] => return false,
                        [(atom, value)] if !Self::set(values, *atom, *value, &mut changed) => {
                            return false;
                        }
                        _ => {}
                    }
                }
            }
            // Atoms outside the possibly-derivable set are false.
            let reachable = self.upper_bound(values);
            for atom in 0..self.atoms {
                if !reachable[atom] && !Self::set(values, atom, false, &mut changed) {
                    return false;
                }
            }
            // A true atom with a single remaining support needs that body.
            for atom in 0..self.atoms {
                if values[atom] != Some(true) || self.forced.contains(&atom) {
                    continue;
                }
                let mut live = self.by_head[atom]
                    .iter()
                    .map(|&i| &self.rules[i])
                    .filter(|r| !self.blocked(r, values));
                let (Some(only), None) = (live.next(), live.next()) else {
                    continue;
                };
                for &p in &only.pos {
                    if !Self::set(values, p, true, &mut changed) {
                        return false;
                    }
                }
                for &n in &only.neg {
                    if !Self::set(values, n, false, &mut changed) {
                        return false;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// Least fixpoint of the rules not blocked by a true negative literal,
    /// i.e. every atom that could still receive well-founded support.
    fn upper_bound(&self, values: &[Option<bool>]) -> Vec<bool> {
        let mut derivable = vec![false; self.atoms];
        for &f in &self.forced {
            derivable[f] = true;
        }
        loop {
            let mut changed = false;
            for r in &self.rules {
                if derivable[r.head] || r.neg.iter().any(|&n| values[n] == Some(true)) {
                    continue;
                }
                if r.pos
                    .iter()
                    .all(|&p| derivable[p] && values[p] != Some(false))
                {
                    derivable[r.head] = true;
                    changed = true;
                }
            }
            if !changed {
                return derivable;
            }
        }
    }

    fn is_stable(&self, model: &[bool]) -> bool {
        let mut derived = vec![false; self.atoms];
        for &f in &self.forced {
            derived[f] = true;
        }
        loop {
            let mut changed = false;
            for r in &self.rules {
                if derived[r.head] || r.neg.iter().any(|&n| model[n]) {
                    continue;
                }
                if r.pos.iter().all(|&p| derived[p]) {
                    derived[r.head] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        derived == model
    }
}
