//! Top-down solving: start from the constraint nodes and trace backwards
//! through the dependency graph until every hypothesis rests on facts or on
//! a loop through negation.
//!
//! A node presumed `True` needs at least one effective in-edge (a disjunction
//! over its in-edges). A node presumed `False` needs every in-edge to be
//! non-effective (a conjunction). Partial models are threaded through the
//! proof, so a conjunction is the sequential merge of its parts.
//!
//! Loop hypotheses are accepted coinductively and everything the search
//! emits is checked against the reduct, so the result is exactly the set of
//! stable models.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::cycles::CycleKind;
use crate::graph::{build_dg, DepGraph, Edge, NodeIx, NodeKind, Sign, TruthValue};
use crate::model::{normalize, AnswerSet};
use crate::oracle;
use crate::program::{Atom, BodyLiteral, Program};
use crate::solve::{Budget, SolveError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Presumed,
    Propagated,
    Fact,
}

/// A consistent partial assignment over graph nodes. Equality ignores provenance.
#[derive(Debug, Clone, Default)]
pub struct PartialModel {
    values: BTreeMap<NodeIx, bool>,
    provenance: BTreeMap<NodeIx, Provenance>,
}

impl PartialEq for PartialModel {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values
    }
}

impl Eq for PartialModel {}

impl PartialModel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_values(values: impl IntoIterator<Item = (NodeIx, bool)>) -> Self {
        let mut m = Self::new();
        for (n, v) in values {
            m.insert(n, v, Provenance::Presumed);
        }
        m
    }

    pub fn get(&self, n: NodeIx) -> Option<bool> {
        self.values.get(&n).copied()
    }

    pub fn provenance(&self, n: NodeIx) -> Option<Provenance> {
        self.provenance.get(&n).copied()
    }

    /// Records `n = v`. Returns false (and changes nothing) on a conflict.
    pub fn insert(&mut self, n: NodeIx, v: bool, provenance: Provenance) -> bool {
        match self.values.get(&n) {
            Some(&old) => old == v,
            None => {
                self.values.insert(n, v);
                self.provenance.insert(n, provenance);
                true
            }
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (NodeIx, bool)> + '_ {
        self.values.iter().map(|(&n, &v)| (n, v))
    }

    pub fn is_compatible(&self, other: &PartialModel) -> bool {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .values
            .iter()
            .all(|(n, v)| large.values.get(n).is_none_or(|w| w == v))
    }

    /// Union of two compatible models; `None` on conflict.
    pub fn union(&self, other: &PartialModel) -> Option<PartialModel> {
        if !self.is_compatible(other) {
            return None;
        }
        let mut out = self.clone();
        for (&n, &v) in &other.values {
            out.insert(n, v, other.provenance[&n]);
        }
        Some(out)
    }

    /// True atoms; atoms never assigned count as `False`.
    pub fn answer_set(&self, g: &DepGraph) -> AnswerSet {
        self.values
            .iter()
            .filter(|(_, &v)| v)
            .filter_map(|(&n, _)| g.id(n).atom().cloned())
            .collect()
    }
}

/// The path of hypotheses from a constraint node down to the current node.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProofBranch {
    path: Vec<(NodeIx, bool)>,
}

impl ProofBranch {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn path(&self) -> &[(NodeIx, bool)] {
        &self.path
    }

    pub fn position(&self, n: NodeIx) -> Option<usize> {
        self.path.iter().position(|&(m, _)| m == n)
    }

    pub fn push(&mut self, n: NodeIx, v: bool) {
        debug_assert!(self.position(n).is_none());
        self.path.push((n, v));
    }

    pub fn pop(&mut self) {
        self.path.pop();
    }
}

/// Classifies a revisit of `n`: `Even` when the loop from the earlier
/// occurrence of `n` to the end of the branch passes a `False` node,
/// `Positive` otherwise. `None` if `n` is not on the branch.
pub fn detect_branch_cycle(branch: &ProofBranch, n: NodeIx) -> Option<CycleKind> {
    let start = branch.position(n)?;
    let any_false = branch.path[start..].iter().any(|&(_, v)| !v);
    Some(if any_false {
        CycleKind::Even
    } else {
        CycleKind::Positive
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct CausalRule {
    head: Option<NodeIx>,
    body: Vec<(NodeIx, bool)>,
}

/// Every way an atom value can be forced, taken from the program rules.
#[derive(Debug, Clone)]
pub struct CausalMap {
    rules: Vec<CausalRule>,
    by_head: HashMap<NodeIx, Vec<usize>>,
    atoms: Vec<NodeIx>,
}

impl CausalMap {
    pub fn new(g: &DepGraph, p: &Program) -> Self {
        let node = |a: &Atom| g.atom_node(a.name()).expect("program atom has a node");
        let rules: Vec<CausalRule> = p
            .rules()
            .iter()
            .map(|r| CausalRule {
                head: r.head.as_ref().map(node),
                body: r.body.iter().map(|l| (node(&l.atom), !l.negated)).collect(),
            })
            .collect();
        let mut by_head: HashMap<NodeIx, Vec<usize>> = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            if let Some(h) = r.head {
                by_head.entry(h).or_default().push(i);
            }
        }
        CausalMap {
            rules,
            by_head,
            atoms: g.atom_indices().collect(),
        }
    }

    /// Rules with head `n`, as lists of `(node, positive)` literals.
    pub fn causes(&self, n: NodeIx) -> impl Iterator<Item = &[(NodeIx, bool)]> + '_ {
        self.by_head
            .get(&n)
            .into_iter()
            .flatten()
            .map(|&i| self.rules[i].body.as_slice())
    }
}

fn literal(m: &PartialModel, (n, positive): (NodeIx, bool)) -> Option<bool> {
    m.get(n).map(|v| v == positive)
}

/// Closes `m` under the causal map: a rule whose body holds makes its head
/// `True`, an atom whose every rule is blocked is `False`, and a constraint
/// whose body holds kills the model (`None`).
pub fn forward_propagate(mut m: PartialModel, cmap: &CausalMap) -> Option<PartialModel> {
    loop {
        let mut changed = false;
        for r in &cmap.rules {
            if !r.body.iter().all(|&l| literal(&m, l) == Some(true)) {
                continue;
            }
            {
                let h = r.head?;
                match m.get(h) {
                    Some(true) => {}
                    Some(false) => return None,
                    None => {
                        m.insert(h, true, Provenance::Propagated);
                        changed = true;
                    }
                }
            }
        }
        for &a in &cmap.atoms {
            if m.get(a).is_some() {
                continue;
            }
            let unsupported = cmap
                .causes(a)
                .all(|body| body.iter().any(|&l| literal(&m, l) == Some(false)));
            if unsupported {
                m.insert(a, false, Provenance::Propagated);
                changed = true;
            }
        }
        if !changed {
            return Some(m);
        }
    }
}

/// Compatible unions of one model from each side.
pub fn merge_conjunctive(a: &[PartialModel], b: &[PartialModel]) -> Vec<PartialModel> {
    let merged = a
        .iter()
        .flat_map(|x| b.iter().filter_map(move |y| x.union(y)))
        .collect();
    dedup(merged)
}

/// Compatible unions plus every input model that merged with nothing.
pub fn merge_disjunctive(a: &[PartialModel], b: &[PartialModel]) -> Vec<PartialModel> {
    let mut out = Vec::new();
    let mut used_b = vec![false; b.len()];
    let mut unmerged_a = Vec::new();
    for x in a {
        let mut merged = false;
        for (j, y) in b.iter().enumerate() {
            if let Some(u) = x.union(y) {
                out.push(u);
                used_b[j] = true;
                merged = true;
            }
        }
        if !merged {
            unmerged_a.push(x.clone());
        }
    }
    out.extend(unmerged_a);
    out.extend(
        b.iter()
            .zip(&used_b)
            .filter(|(_, &u)| !u)
            .map(|(y, _)| y.clone()),
    );
    dedup(out)
}

/// Drops set-equal duplicates, keeping first occurrences.
fn dedup(models: Vec<PartialModel>) -> Vec<PartialModel> {
    let mut seen = HashSet::new();
    models
        .into_iter()
        .filter(|m| seen.insert(m.values.clone()))
        .collect()
}

/// Makes sure the search has somewhere to start.
///
/// Programs with constraints are returned unchanged. Otherwise every fact `f`
/// becomes `:- not f.`; without facts either, one anchor per weakly connected
/// component (the atom with the most in-edges, smallest name on ties) is
/// linked to a new constraint through a conjunction node with both signs,
/// a constraint that no assignment can violate.
pub fn ensure_constraints(g: &DepGraph, p: &Program) -> DepGraph {
    let mut out = g.clone();
    if p.has_constraints() {
        return out;
    }
    // Edges are added in dependency-graph polarity: conjunction-incident signs are flipped.
    let dg_sign = |g: &DepGraph, cnr: Sign| if g.is_transformed() { cnr.flip() } else { cnr };
    let facts: Vec<NodeIx> = g.atom_indices().filter(|&a| g.is_fact(a)).collect();
    if !facts.is_empty() {
        for f in facts {
            let c = out.add_constraint_node();
            out.add_edge(f, c, Sign::Negative);
        }
        return out;
    }
    for anchor in component_anchors(g) {
        let conj = out.add_conj_node();
        let c = out.add_constraint_node();
        for cnr in [Sign::Positive, Sign::Negative] {
            let sign = dg_sign(&out, cnr);
            out.add_edge(anchor, conj, sign);
        }
        let sign = dg_sign(&out, Sign::Positive);
        out.add_edge(conj, c, sign);
    }
    out
}

fn component_anchors(g: &DepGraph) -> Vec<NodeIx> {
    let mut component = vec![usize::MAX; g.node_count()];
    let mut anchors = Vec::new();
    for start in g.node_indices() {
        if component[start] != usize::MAX {
            continue;
        }
        let id = anchors.len();
        let mut best: Option<NodeIx> = None;
        let mut stack = vec![start];
        component[start] = id;
        while let Some(n) = stack.pop() {
            if g.kind(n) == NodeKind::Atom {
                // Atom indices follow name order, so the smaller index wins ties.
                let better = match best {
                    None => true,
                    Some(b) => {
                        (g.in_degree(n), std::cmp::Reverse(n))
                            > (g.in_degree(b), std::cmp::Reverse(b))
                    }
                };
                if better {
                    best = Some(n);
                }
            }
            for next in g
                .out_edges(n)
                .map(|e| e.to)
                .chain(g.in_edges(n).map(|e| e.from))
            {
                if component[next] == usize::MAX {
                    component[next] = id;
                    stack.push(next);
                }
            }
        }
        anchors.push(best.expect("every component contains an atom"));
    }
    anchors
}

struct Prover<'a> {
    g: &'a DepGraph,
    cmap: &'a CausalMap,
    budget: Budget,
}

impl Prover<'_> {
    fn prove(
        &mut self,
        n: NodeIx,
        v: bool,
        branch: &mut ProofBranch,
        ctx: PartialModel,
    ) -> Result<Vec<PartialModel>, SolveError> {
        self.budget.tick()?;
        if let Some(pos) = branch.position(n) {
            if branch.path[pos].1 != v {
                return Ok(Vec::new());
            }
            return Ok(match detect_branch_cycle(branch, n) {
                Some(CycleKind::Even) => vec![ctx],
                _ => Vec::new(),
            });
        }
        match ctx.get(n) {
            Some(w) if w == v => return Ok(vec![ctx]),
            Some(_) => return Ok(Vec::new()),
            None => {}
        }
        match (self.g.fixed(n), v) {
            (TruthValue::True, true) => {
                let mut ctx = ctx;
                ctx.insert(n, true, Provenance::Fact);
                return Ok(vec![ctx]);
            }
            (TruthValue::True, false) | (TruthValue::False, true) => return Ok(Vec::new()),
            _ => {}
        }

        let mut ctx = ctx;
        ctx.insert(n, v, Provenance::Presumed);
        branch.push(n, v);
        let in_edges: Vec<Edge> = self.g.in_edges(n).copied().collect();
        let result = if v {
            self.prove_some_effective(&in_edges, branch, ctx)
        } else {
            self.prove_none_effective(&in_edges, branch, ctx)
        };
        branch.pop();
        let models = result?;
        Ok(dedup(
            models
                .into_iter()
                .filter_map(|m| forward_propagate(m, self.cmap))
                .collect(),
        ))
    }

    fn prove_some_effective(
        &mut self,
        in_edges: &[Edge],
        branch: &mut ProofBranch,
        ctx: PartialModel,
    ) -> Result<Vec<PartialModel>, SolveError> {
        let mut out = Vec::new();
        for e in in_edges {
            out.extend(self.prove(e.from, e.sign.effective_source_value(), branch, ctx.clone())?);
        }
        Ok(dedup(out))
    }

    fn prove_none_effective(
        &mut self,
        in_edges: &[Edge],
        branch: &mut ProofBranch,
        ctx: PartialModel,
    ) -> Result<Vec<PartialModel>, SolveError> {
        let mut models = vec![ctx];
        for e in in_edges {
            let mut next = Vec::new();
            for m in models {
                next.extend(self.prove(e.from, !e.sign.effective_source_value(), branch, m)?);
            }
            models = dedup(next);
            if models.is_empty() {
                break;
            }
        }
        Ok(models)
    }
}

/// Every partial model under which node `n` has value `v`, extending `ctx`.
pub fn prove(
    g: &DepGraph,
    cmap: &CausalMap,
    n: NodeIx,
    v: bool,
    branch: &mut ProofBranch,
    ctx: PartialModel,
) -> Vec<PartialModel> {
    let mut prover = Prover {
        g,
        cmap,
        budget: Budget::unlimited(),
    };
    prover
        .prove(n, v, branch, ctx)
        .expect("an unlimited budget never times out")
}

pub fn solve_igasp(p: &Program) -> Vec<AnswerSet> {
    solve_igasp_with(p, Budget::unlimited()).expect("an unlimited budget never times out")
}

/// Stable models of `p`, sorted.
///
/// Constraints are proved `False` in source order. Atoms the constraints
/// never reached are then tried both ways, and each finished candidate is
/// checked against the reduct before it is reported.
pub fn solve_igasp_with(p: &Program, budget: Budget) -> Result<Vec<AnswerSet>, SolveError> {
    let g = ensure_constraints(&build_dg(p), p);
    let cmap = CausalMap::new(&g, p);
    let mut seed = PartialModel::new();
    for f in g.atom_indices().filter(|&a| g.is_fact(a)) {
        seed.insert(f, true, Provenance::Fact);
    }
    let Some(seed) = forward_propagate(seed, &cmap) else {
        return Ok(Vec::new());
    };
    let mut prover = Prover {
        g: &g,
        cmap: &cmap,
        budget,
    };
    let mut branch = ProofBranch::new();

    let mut models = vec![seed];
    for c in g.constraint_indices() {
        let mut next = Vec::new();
        for m in models {
            next.extend(prover.prove(c, false, &mut branch, m)?);
        }
        models = dedup(next);
        if models.is_empty() {
            return Ok(Vec::new());
        }
    }
    for a in g.atom_indices() {
        let mut next = Vec::new();
        for m in models {
            if m.get(a).is_some() {
                next.push(m);
                continue;
            }
            next.extend(prover.prove(a, true, &mut branch, m.clone())?);
            next.extend(prover.prove(a, false, &mut branch, m)?);
        }
        models = dedup(next);
    }

    let answers = models
        .iter()
        .map(|m| m.answer_set(&g))
        .filter(|a| oracle::is_stable(p, a.atoms()))
        .collect();
    Ok(normalize(answers))
}

/// Models in which `atom` has the value `positive`.
pub fn solve_query(p: &Program, atom: &str, positive: bool) -> Result<Vec<AnswerSet>, SolveError> {
    solve_query_with(p, atom, positive, Budget::unlimited())
}

pub fn solve_query_with(
    p: &Program,
    atom: &str,
    positive: bool,
    budget: Budget,
) -> Result<Vec<AnswerSet>, SolveError> {
    if !p.contains_atom(atom) {
        return Err(SolveError::QueryAtomUnknown(atom.to_string()));
    }
    let mut with_query = p.clone();
    let literal = if positive {
        BodyLiteral::neg(atom)
    } else {
        BodyLiteral::pos(atom)
    };
    with_query.push(None, vec![literal]);
    solve_igasp_with(&with_query, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_program;

    fn prog(text: &str) -> Program {
        parse_program(text).unwrap()
    }

    fn sets(list: &[&[&str]]) -> Vec<AnswerSet> {
        list.iter().map(|s| s.iter().copied().collect()).collect()
    }

    fn pm(pairs: &[(NodeIx, bool)]) -> PartialModel {
        PartialModel::from_values(pairs.iter().copied())
    }

    #[test]
    fn program_five() {
        assert_eq!(
            solve_igasp(&prog("m :- p. m :- not q. m :- r. :- not m. :- n.")),
            sets(&[&["m"]])
        );
    }

    #[test]
    fn constraint_proof_needs_m_true() {
        let p = prog("m :- p. m :- not q. m :- r. :- not m. :- n.");
        let g = build_dg(&p);
        let cmap = CausalMap::new(&g, &p);
        let m = g.atom_node("m").unwrap();
        let q = g.atom_node("q").unwrap();
        // three ways for m to be True; only "q is False" survives
        assert_eq!(g.in_degree(m), 3);
        let c = g.lookup_name("__constraint_0").unwrap();
        let models = prove(
            &g,
            &cmap,
            c,
            false,
            &mut ProofBranch::new(),
            PartialModel::new(),
        );
        assert_eq!(models.len(), 1);
        assert_eq!(models[0].get(m), Some(true));
        assert_eq!(models[0].get(q), Some(false));
    }

    #[test]
    fn golden_programs() {
        assert_eq!(
            solve_igasp(&prog("p :- not q. q :- not p. :- p, q.")),
            sets(&[&["p"], &["q"]])
        );
        assert_eq!(solve_igasp(&prog("p :- q. q :- p.")), sets(&[&[]]));
        assert!(solve_igasp(&prog("p :- not q. q :- not r. r :- not p.")).is_empty());
        assert_eq!(solve_igasp(&prog("q. p :- q.")), sets(&[&["p", "q"]]));
        assert_eq!(solve_igasp(&Program::new()), sets(&[&[]]));
    }

    #[test]
    fn fact_and_rule_leaves() {
        let p = prog("q. p :- r.");
        let g = build_dg(&p);
        let cmap = CausalMap::new(&g, &p);
        let q = g.atom_node("q").unwrap();
        let r = g.atom_node("r").unwrap();
        let fact = prove(
            &g,
            &cmap,
            q,
            true,
            &mut ProofBranch::new(),
            PartialModel::new(),
        );
        assert_eq!(fact, vec![pm(&[(q, true)])]);
        assert!(prove(
            &g,
            &cmap,
            r,
            true,
            &mut ProofBranch::new(),
            PartialModel::new()
        )
        .is_empty());
    }

    #[test]
    fn branch_cycles() {
        let mut b = ProofBranch::new();
        b.push(0, true);
        b.push(1, false);
        assert_eq!(detect_branch_cycle(&b, 0), Some(CycleKind::Even));
        assert_eq!(detect_branch_cycle(&b, 2), None);
        let mut b = ProofBranch::new();
        b.push(0, true);
        b.push(1, true);
        assert_eq!(detect_branch_cycle(&b, 0), Some(CycleKind::Positive));
        assert_eq!(detect_branch_cycle(&b, 1), Some(CycleKind::Positive));
    }

    #[test]
    fn even_loop_hypothesis_is_accepted() {
        let p = prog("p :- not q. q :- not p.");
        let g = build_dg(&p);
        let cmap = CausalMap::new(&g, &p);
        let (pi, qi) = (g.atom_node("p").unwrap(), g.atom_node("q").unwrap());
        let models = prove(
            &g,
            &cmap,
            pi,
            true,
            &mut ProofBranch::new(),
            PartialModel::new(),
        );
        assert_eq!(models, vec![pm(&[(pi, true), (qi, false)])]);
    }

    #[test]
    fn positive_loop_hypothesis_is_rejected() {
        let p = prog("p :- q. q :- p.");
        let g = build_dg(&p);
        let cmap = CausalMap::new(&g, &p);
        let (pi, qi) = (g.atom_node("p").unwrap(), g.atom_node("q").unwrap());
        assert!(prove(
            &g,
            &cmap,
            pi,
            true,
            &mut ProofBranch::new(),
            PartialModel::new()
        )
        .is_empty());
        let models = prove(
            &g,
            &cmap,
            pi,
            false,
            &mut ProofBranch::new(),
            PartialModel::new(),
        );
        assert_eq!(models, vec![pm(&[(pi, false), (qi, false)])]);

        let p = prog("p :- p.");
        let g = build_dg(&p);
        let cmap = CausalMap::new(&g, &p);
        assert!(prove(
            &g,
            &cmap,
            0,
            true,
            &mut ProofBranch::new(),
            PartialModel::new()
        )
        .is_empty());
        assert_eq!(solve_igasp(&p), sets(&[&[]]));
    }

    #[test]
    fn merging() {
        let (a, b, c, d) = (0, 1, 2, 3);
        let p1 = pm(&[(a, true), (d, true), (b, false)]);
        let p2 = pm(&[(a, false), (b, true)]);
        let q1 = pm(&[(a, true), (c, true), (b, false)]);
        let both = pm(&[(a, true), (c, true), (d, true), (b, false)]);
        let left = [p1, p2.clone()];
        assert_eq!(
            merge_conjunctive(&left, std::slice::from_ref(&q1)),
            vec![both.clone()]
        );
        assert_eq!(
            merge_disjunctive(&left, std::slice::from_ref(&q1)),
            vec![both, p2]
        );

        let x = pm(&[(a, true)]);
        assert_eq!(
            merge_conjunctive(&[PartialModel::new()], std::slice::from_ref(&q1)),
            vec![q1.clone()]
        );
        assert!(merge_conjunctive(std::slice::from_ref(&x), &[pm(&[(a, false)])]).is_empty());
        assert_eq!(merge_disjunctive(&[], std::slice::from_ref(&q1)), vec![q1]);
        assert_eq!(
            merge_disjunctive(std::slice::from_ref(&x), std::slice::from_ref(&x)),
            vec![x]
        );
    }

    #[test]
    fn forward_propagation() {
        let p = prog("c :- a. d :- not b. a :- not b. b :- not a.");
        let g = build_dg(&p);
        let cmap = CausalMap::new(&g, &p);
        let ix = |n: &str| g.atom_node(n).unwrap();
        let m = pm(&[(ix("a"), true), (ix("b"), false)]);
        let out = forward_propagate(m, &cmap).unwrap();
        assert_eq!(out.get(ix("c")), Some(true));
        assert_eq!(out.get(ix("d")), Some(true));
        assert_eq!(out.provenance(ix("c")), Some(Provenance::Propagated));
        assert_eq!(forward_propagate(out.clone(), &cmap), Some(out));

        let p = prog(":- x. x :- a. a.");
        let g = build_dg(&p);
        let cmap = CausalMap::new(&g, &p);
        assert_eq!(
            forward_propagate(pm(&[(g.atom_node("a").unwrap(), true)]), &cmap),
            None
        );
        assert!(solve_igasp(&p).is_empty());
    }

    #[test]
    fn synthesized_constraints() {
        let p = prog("q. p :- q.");
        let g = ensure_constraints(&build_dg(&p), &p);
        let c: Vec<NodeIx> = g.constraint_indices().collect();
        assert_eq!(c.len(), 1);
        let q = g.atom_node("q").unwrap();
        assert!(g.in_edges(c[0]).eq([&Edge {
            from: q,
            to: c[0],
            sign: Sign::Negative
        }]));

        let p = prog("p :- not q. q :- not p.");
        let g = ensure_constraints(&build_dg(&p), &p);
        let c: Vec<NodeIx> = g.constraint_indices().collect();
        assert_eq!(c.len(), 1);
        let conj = g.in_edges(c[0]).next().unwrap().from;
        let signs: Vec<Sign> = g.in_edges(conj).map(|e| g.cnr_sign(e)).collect();
        assert_eq!(signs, vec![Sign::Positive, Sign::Negative]);
        assert!(g
            .in_edges(conj)
            .all(|e| e.from == g.atom_node("p").unwrap()));

        let p = prog("a :- not b. b :- not a. c :- d. d :- c.");
        let g = ensure_constraints(&build_dg(&p), &p);
        assert_eq!(g.constraint_indices().count(), 2);

        let p = prog(":- a. a :- b.");
        assert_eq!(
            ensure_constraints(&build_dg(&p), &p).node_count(),
            build_dg(&p).node_count()
        );
    }

    #[test]
    fn queries() {
        let p = prog("p :- not q. q :- not p. :- p, q.");
        assert_eq!(solve_query(&p, "p", true).unwrap(), sets(&[&["p"]]));
        assert_eq!(solve_query(&p, "q", true).unwrap(), sets(&[&["q"]]));
        assert_eq!(solve_query(&p, "p", false).unwrap(), sets(&[&["q"]]));
        assert_eq!(
            solve_query(&p, "r", true),
            Err(SolveError::QueryAtomUnknown("r".into()))
        );
    }
}
