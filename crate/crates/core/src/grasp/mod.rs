//! Bottom-up solving over the dependency graph.
//!
//! Each iteration takes the root nodes of the remaining graph (nodes with no
//! incoming edges once every strongly connected component is wrapped into a
//! virtual node), fixes their values, propagates along out-going edges and
//! removes them. Regular roots without a value default to `False`. Virtual
//! roots are broken into every stable labeling of their members, and the
//! per-root outcomes are merged into a product of worlds. The remaining graph
//! is then solved recursively for each world.
//!
//! Propagation follows two rules: a `True` node makes the targets of its
//! positive out-edges `True`, a `False` node makes the targets of its negative
//! out-edges `True`. Making a node `True` that is already `False` (a constraint
//! node, typically) kills the world.

mod local;

use std::collections::BTreeSet;

use crate::cycles::{strongly_connected_components, VirtualNode};
use crate::graph::{build_dg, DepGraph, EdgeIx, NodeIx, NodeKind, Sign, TruthValue};
use crate::model::{normalize, AnswerSet};
use crate::program::Program;
use crate::solve::{Budget, SolveError};

use local::{LocalProgram, LocalRule};

/// A (possibly partial) assignment over every graph node.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct World {
    values: Vec<TruthValue>,
    consistent: bool,
}

impl World {
    /// Facts `True`, constraint nodes `False`, everything else unfixed.
    pub fn initial(g: &DepGraph) -> Self {
        World {
            values: g.nodes().map(|(_, n)| n.fixed).collect(),
            consistent: true,
        }
    }

    pub fn get(&self, ix: NodeIx) -> TruthValue {
        self.values[ix]
    }

    pub fn value(&self, ix: NodeIx) -> Option<bool> {
        self.values[ix].as_bool()
    }

    /// Assigns a value. A conflicting assignment marks the world inconsistent
    /// and leaves the old value in place.
    pub fn set(&mut self, ix: NodeIx, value: bool) -> bool {
        match self.values[ix].as_bool() {
            Some(v) if v != value => {
                self.consistent = false;
                false
            }
            Some(_) => true,
            None => {
                self.values[ix] = TruthValue::from_bool(value);
                true
            }
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    pub fn is_complete(&self) -> bool {
        self.values.iter().all(|v| v.is_fixed())
    }

    pub fn values(&self) -> &[TruthValue] {
        &self.values
    }

    /// Union of two worlds over the same graph; `None` if they disagree anywhere.
    pub fn merge(&self, other: &World) -> Option<World> {
        if !self.consistent || !other.consistent || self.values.len() != other.values.len() {
            return None;
        }
        let mut values = self.values.clone();
        for (slot, &theirs) in values.iter_mut().zip(&other.values) {
            match (*slot, theirs) {
                (_, TruthValue::Unfixed) => {}
                (TruthValue::Unfixed, v) => *slot = v,
                (a, b) if a == b => {}
                _ => return None,
            }
        }
        Some(World {
            values,
            consistent: true,
        })
    }

    /// True atoms, with helper nodes projected away.
    pub fn answer_set(&self, g: &DepGraph) -> AnswerSet {
        g.atom_indices()
            .filter(|&ix| self.values[ix] == TruthValue::True)
            .filter_map(|ix| g.id(ix).atom().cloned())
            .collect()
    }

    /// Completes an answer set into a world over the dependency graph:
    /// atoms from the set, helper nodes by their incoming effective edges.
    pub fn from_answer_set(g: &DepGraph, answer: &AnswerSet) -> World {
        let mut w = World::initial(g);
        for ix in g.atom_indices() {
            let name = g.id(ix).atom().unwrap();
            w.values[ix] = TruthValue::from_bool(answer.atoms().contains(name));
        }
        for ix in g.node_indices().filter(|&ix| g.kind(ix) == NodeKind::Conj) {
            let supported = g
                .in_edges(ix)
                .any(|e| w.value(e.from).is_some_and(|v| e.is_effective(v)));
            w.values[ix] = TruthValue::from_bool(supported);
        }
        w
    }
}

/// The part of the graph still to be solved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphView {
    nodes: Vec<bool>,
    edges: Vec<bool>,
    remaining: usize,
}

impl GraphView {
    pub fn full(g: &DepGraph) -> Self {
        GraphView {
            nodes: vec![true; g.node_count()],
            edges: vec![true; g.edge_count()],
            remaining: g.node_count(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.remaining == 0
    }

    pub fn len(&self) -> usize {
        self.remaining
    }

    pub fn contains(&self, ix: NodeIx) -> bool {
        self.nodes[ix]
    }

    pub fn has_edge(&self, g: &DepGraph, e: EdgeIx) -> bool {
        let edge = g.edge(e);
        self.edges[e] && self.nodes[edge.from] && self.nodes[edge.to]
    }

    pub fn remove_node(&mut self, ix: NodeIx) {
        if std::mem::replace(&mut self.nodes[ix], false) {
            self.remaining -= 1;
        }
    }

    pub fn remove_edge(&mut self, e: EdgeIx) {
        self.edges[e] = false;
    }

    fn active_nodes(&self) -> impl Iterator<Item = NodeIx> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, on)| **on)
            .map(|(ix, _)| ix)
    }

    /// Drops edges that can no longer carry information once values are fixed:
    /// in-edges and negative out-edges of `True` nodes, positive out-edges of
    /// `False` nodes. In-edges of `False` nodes stay, so a later attempt to make
    /// them `True` is still detected.
    pub fn prune_settled_edges(&mut self, g: &DepGraph, w: &World) {
        for ix in 0..self.nodes.len() {
            if !self.nodes[ix] {
                continue;
            }
            match w.value(ix) {
                Some(true) => {
                    for &e in g.in_edge_ids(ix) {
                        self.edges[e] = false;
                    }
                    for &e in g.out_edge_ids(ix) {
                        if g.edge(e).sign == Sign::Negative {
                            self.edges[e] = false;
                        }
                    }
                }
                Some(false) => {
                    for &e in g.out_edge_ids(ix) {
                        if g.edge(e).sign == Sign::Positive {
                            self.edges[e] = false;
                        }
                    }
                }
                None => {}
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Root {
    Regular(NodeIx),
    Virtual(VirtualNode),
}

impl Root {
    pub fn members(&self) -> Vec<NodeIx> {
        match self {
            Root::Regular(n) => vec![*n],
            Root::Virtual(v) => v.members.iter().copied().collect(),
        }
    }
}

/// Roots of the view after wrapping each cycle-carrying SCC into a virtual node.
///
/// Panics if a non-empty view has no root, which would mean the wrapping
/// left a cycle behind.
pub fn find_roots(g: &DepGraph, view: &GraphView) -> Vec<Root> {
    let active: Vec<NodeIx> = view.active_nodes().collect();
    if active.is_empty() {
        return Vec::new();
    }
    let mut local = vec![usize::MAX; g.node_count()];
    for (i, &ix) in active.iter().enumerate() {
        local[ix] = i;
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); active.len()];
    let mut self_loop = vec![false; active.len()];
    for (i, &ix) in active.iter().enumerate() {
        for &e in g.out_edge_ids(ix) {
            if view.has_edge(g, e) {
                let to = local[g.edge(e).to];
                if to == i {
                    self_loop[i] = true;
                }
                adj[i].push(to);
            }
        }
    }
    let components = strongly_connected_components(&adj);
    let mut component_of = vec![0usize; active.len()];
    for (c, members) in components.iter().enumerate() {
        for &m in members {
            component_of[m] = c;
        }
    }
    let mut has_input = vec![false; components.len()];
    for (i, succ) in adj.iter().enumerate() {
        for &j in succ {
            if component_of[i] != component_of[j] {
                has_input[component_of[j]] = true;
            }
        }
    }
    let mut roots: Vec<Root> = components
        .iter()
        .enumerate()
        .filter(|(c, _)| !has_input[*c])
        .map(|(_, members)| {
            if members.len() == 1 && !self_loop[members[0]] {
                Root::Regular(active[members[0]])
            } else {
                let members: BTreeSet<NodeIx> = members.iter().map(|&m| active[m]).collect();
                Root::Virtual(VirtualNode::new(g, members))
            }
        })
        .collect();
    assert!(!roots.is_empty(), "non-empty view without a root node");
    roots.sort_by_key(|r| r.members()[0]);
    roots
}

/// Keeps a fixed root value, otherwise assigns `False`.
pub fn fix_root(n: NodeIx, w: &World) -> World {
    let mut out = w.clone();
    if out.value(n).is_none() {
        out.set(n, false);
    }
    out
}

/// Sets `n` to `value` and applies the propagation rules transitively along
/// the edges of the view. Conflicts mark the world inconsistent.
pub fn propagate(g: &DepGraph, view: &GraphView, n: NodeIx, value: bool, w: World) -> World {
    propagate_from(g, view, &[(n, value)], &BTreeSet::new(), w)
}

fn propagate_from(
    g: &DepGraph,
    view: &GraphView,
    sources: &[(NodeIx, bool)],
    settled: &BTreeSet<NodeIx>,
    mut w: World,
) -> World {
    let mut queue: Vec<(NodeIx, bool)> = Vec::new();
    for &(n, v) in sources {
        if !w.set(n, v) {
            return w;
        }
        queue.push((n, v));
    }
    while let Some((n, v)) = queue.pop() {
        for &e in g.out_edge_ids(n) {
            if !view.has_edge(g, e) {
                continue;
            }
            let edge = g.edge(e);
            if settled.contains(&edge.to) || !edge.is_effective(v) {
                continue;
            }
            match w.value(edge.to) {
                Some(true) => {}
                Some(false) => {
                    w.consistent = false;
                    return w;
                }
                None => {
                    w.set(edge.to, true);
                    queue.push((edge.to, true));
                }
            }
        }
    }
    w
}

/// Every labeling of a virtual root's members that is stable given the values
/// already fixed outside it. Zero worlds means the component kills the world.
///
/// Members without a negative edge between them form a purely positive
/// component: its only labeling is the least model of its external support
/// (all `False` when there is none). Otherwise candidate labelings come from
/// a branching search over the member atoms (propagation plus unfounded-set
/// elimination) and each is checked against the component's own rules.
pub fn break_cycles(
    g: &DepGraph,
    v: &VirtualNode,
    w: &World,
    budget: &mut Budget,
) -> Result<Vec<World>, SolveError> {
    let atoms: Vec<NodeIx> = v
        .members
        .iter()
        .copied()
        .filter(|&m| g.kind(m) == NodeKind::Atom)
        .collect();
    let local_of = |ix: NodeIx| atoms.binary_search(&ix).ok();

    let mut rules = Vec::new();
    let mut forced = Vec::new();
    for (i, &h) in atoms.iter().enumerate() {
        if g.is_fact(h) || w.value(h) == Some(true) {
            forced.push(i);
        }
        'support: for support in g.bodies_of(h) {
            if let Some(conj) = support.via {
                if !v.members.contains(&conj) {
                    // Settled outside: the rule fires iff the conjunction node is False.
                    match w.value(conj) {
                        Some(false) => {
                            rules.push(LocalRule {
                                head: i,
                                pos: vec![],
                                neg: vec![],
                            });
                        }
                        Some(true) => {}
                        // Edge pruned because the head is already True; the rule adds nothing.
                        None => debug_assert_eq!(w.value(h), Some(true)),
                    }
                    continue;
                }
            }
            let mut rule = LocalRule {
                head: i,
                pos: Vec::new(),
                neg: Vec::new(),
            };
            for &(u, positive) in &support.literals {
                if let Some(lu) = local_of(u) {
                    if positive {
                        rule.pos.push(lu);
                    } else {
                        rule.neg.push(lu);
                    }
                    continue;
                }
                match w.value(u) {
                    Some(value) if value == positive => {}
                    Some(_) => continue 'support,
                    None => {
                        // Only reachable through pruned edges: the head is already True
                        // or the conjunction is (which blocks the rule).
                        debug_assert!(
                            w.value(h) == Some(true)
                                || support.via.is_some_and(|c| w.value(c) == Some(true))
                        );
                        continue 'support;
                    }
                }
            }
            rules.push(rule);
        }
    }

    let program = LocalProgram::new(atoms.len(), rules, forced);
    let labelings = if program.is_positive() && !has_internal_negative_edge(g, v) {
        vec![program.least_model()]
    } else {
        program.stable_models(budget)?
    };

    let mut worlds = Vec::with_capacity(labelings.len());
    'labeling: for labeling in labelings {
        let mut out = w.clone();
        for (i, &value) in labeling.iter().enumerate() {
            if !out.set(atoms[i], value) {
                continue 'labeling;
            }
        }
        // Conjunction members are determined by their (now fixed) inputs.
        for &m in v.members.iter().filter(|&&m| g.kind(m) == NodeKind::Conj) {
            let supported = g
                .in_edges(m)
                .any(|e| out.value(e.from).is_some_and(|value| e.is_effective(value)));
            if !out.set(m, supported) {
                continue 'labeling;
            }
        }
        worlds.push(out);
    }
    Ok(worlds)
}

fn has_internal_negative_edge(g: &DepGraph, v: &VirtualNode) -> bool {
    v.members.iter().any(|&m| {
        g.out_edges(m)
            .any(|e| e.sign == Sign::Negative && v.members.contains(&e.to))
    })
}

/// Cartesian product of the per-root world lists, dropping conflicting combinations.
pub fn merge_root_worlds(per_root: &[Vec<World>]) -> Vec<World> {
    let Some((first, rest)) = per_root.split_first() else {
        return Vec::new();
    };
    let mut merged: Vec<World> = first
        .iter()
        .filter(|w| w.is_consistent())
        .cloned()
        .collect();
    for worlds in rest {
        merged = merged
            .iter()
            .flat_map(|a| worlds.iter().filter_map(move |b| a.merge(b)))
            .collect();
        if merged.is_empty() {
            break;
        }
    }
    merged
}

#[derive(Debug, Clone)]
pub struct GraspOptions {
    /// Remove edges made irrelevant by fixed values before recursing.
    pub prune_edges: bool,
    pub budget: Budget,
}

impl Default for GraspOptions {
    fn default() -> Self {
        GraspOptions {
            prune_edges: true,
            budget: Budget::unlimited(),
        }
    }
}

/// Stable models of `p`, sorted.
pub fn solve_grasp(p: &Program) -> Result<Vec<AnswerSet>, SolveError> {
    solve_grasp_with(p, &GraspOptions::default())
}

pub fn solve_grasp_with(p: &Program, options: &GraspOptions) -> Result<Vec<AnswerSet>, SolveError> {
    let g = build_dg(p);
    let worlds = solve_graph(&g, options)?;
    Ok(normalize(worlds.iter().map(|w| w.answer_set(&g)).collect()))
}

/// Complete, consistent worlds of a transformed dependency graph.
pub fn solve_graph(g: &DepGraph, options: &GraspOptions) -> Result<Vec<World>, SolveError> {
    let mut budget = options.budget.clone();
    let mut done = Vec::new();
    let mut initial_view = GraphView::full(g);
    let initial = World::initial(g);
    if options.prune_edges {
        initial_view.prune_settled_edges(g, &initial);
    }
    let mut pending = vec![(initial, initial_view)];

    while let Some((world, view)) = pending.pop() {
        budget.tick()?;
        if view.is_empty() {
            debug_assert!(world.is_complete());
            done.push(world);
            continue;
        }
        let roots = find_roots(g, &view);
        let mut per_root = Vec::with_capacity(roots.len());
        for root in &roots {
            let worlds = match root {
                Root::Regular(n) => vec![fix_root(*n, &world)],
                Root::Virtual(v) => break_cycles(g, v, &world, &mut budget)?,
            };
            if worlds.is_empty() {
                per_root.clear();
                break;
            }
            per_root.push(worlds);
        }
        if per_root.len() < roots.len() {
            continue;
        }
        let settled: BTreeSet<NodeIx> = roots.iter().flat_map(Root::members).collect();
        for merged in merge_root_worlds(&per_root) {
            let sources: Vec<(NodeIx, bool)> = settled
                .iter()
                .map(|&n| (n, merged.value(n).expect("roots are fixed")))
                .collect();
            let next = propagate_from(g, &view, &sources, &settled, merged);
            if !next.is_consistent() {
                continue;
            }
            let mut rest = view.clone();
            for &n in &settled {
                rest.remove_node(n);
            }
            if options.prune_edges {
                rest.prune_settled_edges(g, &next);
            }
            pending.push((next, rest));
        }
    }
    Ok(done)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_dg;
    use crate::parser::parse_program;

    fn dg(text: &str) -> DepGraph {
        build_dg(&parse_program(text).unwrap())
    }

    fn solve(text: &str) -> Vec<AnswerSet> {
        solve_grasp(&parse_program(text).unwrap()).unwrap()
    }

    fn sets(list: &[&[&str]]) -> Vec<AnswerSet> {
        list.iter().map(|s| s.iter().copied().collect()).collect()
    }

    #[test]
    fn even_loop_gives_two_worlds() {
        assert_eq!(solve("p :- not q. q :- not p."), sets(&[&["p"], &["q"]]));
    }

    #[test]
    fn odd_loop_kills_every_world() {
        assert!(solve("p :- not q. q :- not r. r :- not p.").is_empty());
    }

    #[test]
    fn fact_and_rule() {
        assert_eq!(solve("q. p :- q, not r."), sets(&[&["p", "q"]]));
    }

    #[test]
    fn program_one_has_the_empty_model() {
        assert_eq!(solve("p :- q, not r, not p."), sets(&[&[]]));
    }

    #[test]
    fn roots_of_conjunction_graph() {
        let g = dg("p :- q, not r.");
        let roots = find_roots(&g, &GraphView::full(&g));
        let q = g.atom_node("q").unwrap();
        let r = g.atom_node("r").unwrap();
        assert_eq!(roots, vec![Root::Regular(q), Root::Regular(r)]);
    }

    #[test]
    fn whole_even_loop_is_the_only_root() {
        let g = dg("p :- not q. q :- not p.");
        let roots = find_roots(&g, &GraphView::full(&g));
        assert_eq!(roots.len(), 1);
        assert!(matches!(&roots[0], Root::Virtual(v) if v.members.len() == 2));
        let mut empty = GraphView::full(&g);
        empty.remove_node(0);
        empty.remove_node(1);
        assert!(find_roots(&g, &empty).is_empty());
    }

    #[test]
    fn fix_root_defaults_to_false() {
        let g = dg("q. p :- r.");
        let w = World::initial(&g);
        let r = g.atom_node("r").unwrap();
        let q = g.atom_node("q").unwrap();
        assert_eq!(fix_root(r, &w).get(r), TruthValue::False);
        assert_eq!(fix_root(q, &w).get(q), TruthValue::True);
    }

    #[test]
    fn violated_constraint_marks_world_inconsistent() {
        let g = dg(":- not q.");
        let view = GraphView::full(&g);
        let q = g.atom_node("q").unwrap();
        let w = fix_root(q, &World::initial(&g));
        let w = propagate(&g, &view, q, false, w);
        assert!(!w.is_consistent());
        assert!(solve(":- not q.").is_empty());
    }

    #[test]
    fn propagation_rules() {
        let g = dg("p :- q, not r.");
        let view = GraphView::full(&g);
        let q = g.atom_node("q").unwrap();
        let p = g.atom_node("p").unwrap();
        let conj = g.lookup_name("__conj_0").unwrap();
        // rule (ii): q False over a negative edge makes the conjunction True
        let w = propagate(&g, &view, q, false, World::initial(&g));
        assert_eq!(w.get(conj), TruthValue::True);
        // rule (i) only fires on positive edges: conj -> p is negative
        assert_eq!(w.get(p), TruthValue::Unfixed);
    }

    #[test]
    fn program_four_constraint_fires() {
        let g = dg(":- not q, not r.");
        let view = GraphView::full(&g);
        let q = g.atom_node("q").unwrap();
        let r = g.atom_node("r").unwrap();
        let conj = g.lookup_name("__conj_0").unwrap();
        let mut w = World::initial(&g);
        w.set(q, false);
        w.set(r, false);
        // both inputs False: no effective edge into the conjunction, so it roots as False
        let w = fix_root(conj, &w);
        let w = propagate(&g, &view, conj, false, w);
        assert!(!w.is_consistent());
        assert!(solve(":- not q, not r.").is_empty());
    }

    #[test]
    fn break_even_cycle() {
        let g = dg("p :- not q. q :- not p.");
        let roots = find_roots(&g, &GraphView::full(&g));
        let Root::Virtual(v) = &roots[0] else {
            panic!()
        };
        let worlds = break_cycles(&g, v, &World::initial(&g), &mut Budget::unlimited()).unwrap();
        let labels: Vec<(TruthValue, TruthValue)> =
            worlds.iter().map(|w| (w.get(0), w.get(1))).collect();
        assert_eq!(
            labels,
            vec![
                (TruthValue::True, TruthValue::False),
                (TruthValue::False, TruthValue::True)
            ]
        );
    }

    #[test]
    fn break_odd_and_positive_cycles() {
        let g = dg("p :- not q. q :- not r. r :- not p.");
        let Root::Virtual(v) = &find_roots(&g, &GraphView::full(&g))[0] else {
            panic!()
        };
        assert!(
            break_cycles(&g, v, &World::initial(&g), &mut Budget::unlimited())
                .unwrap()
                .is_empty()
        );

        let g = dg("p :- q. q :- p.");
        let Root::Virtual(v) = &find_roots(&g, &GraphView::full(&g))[0] else {
            panic!()
        };
        let worlds = break_cycles(&g, v, &World::initial(&g), &mut Budget::unlimited()).unwrap();
        assert_eq!(worlds.len(), 1);
        assert_eq!(worlds[0].get(0), TruthValue::False);
        assert_eq!(worlds[0].get(1), TruthValue::False);
    }

    #[test]
    fn overlapping_cycles_keep_only_stable_labelings() {
        assert_eq!(
            solve("p :- not q. q :- not p. q :- not r. r :- not q."),
            sets(&[&["p", "r"], &["q"]])
        );
        // odd loop p -> q -> r -> p rescued by the even loop on p
        assert_eq!(
            solve("p :- not q. q :- not r. r :- not p. p :- not s. s :- not p."),
            sets(&[&["p", "q"]])
        );
    }

    #[test]
    fn fact_inside_odd_loop_satisfies_it() {
        assert_eq!(
            solve("p :- not q. q :- not r. r :- not p. q."),
            sets(&[&["q", "r"]])
        );
    }

    #[test]
    fn merge_products_and_conflicts() {
        let g = dg("a. b :- not c. c :- not b. d :- not e. e :- not d.");
        let base = World::initial(&g);
        let with = |pairs: &[(&str, bool)]| {
            let mut w = base.clone();
            for &(n, v) in pairs {
                w.set(g.atom_node(n).unwrap(), v);
            }
            w
        };
        let one = vec![with(&[("a", true)])];
        let first = vec![
            with(&[("b", true), ("c", false)]),
            with(&[("b", false), ("c", true)]),
        ];
        let second = vec![
            with(&[("d", true), ("e", false)]),
            with(&[("d", false), ("e", true)]),
        ];
        assert_eq!(
            merge_root_worlds(&[one.clone(), first.clone(), second]).len(),
            4
        );
        assert!(merge_root_worlds(&[one, vec![], first.clone()]).is_empty());

        let clashing = vec![with(&[("b", false), ("c", false)])];
        let other = vec![with(&[("b", true)]), with(&[("c", true)])];
        assert!(merge_root_worlds(&[clashing, other]).is_empty());
    }

    #[test]
    fn positive_loop_with_external_support() {
        assert_eq!(
            solve("a. p :- a. p :- q. q :- p."),
            sets(&[&["a", "p", "q"]])
        );
        assert_eq!(solve("p :- q. q :- p."), sets(&[&[]]));
    }

    #[test]
    fn positive_loop_through_conjunction_is_unfounded() {
        assert_eq!(solve("s. p :- q, s. q :- p."), sets(&[&["s"]]));
    }

    #[test]
    fn edge_pruning_does_not_change_answers() {
        let text = "a :- not b. b :- not a. c :- a, not d. d :- b. d :- c, e. e :- not c. :- e, a.";
        let p = parse_program(text).unwrap();
        let pruned = solve_grasp(&p).unwrap();
        let kept = solve_grasp_with(
            &p,
            &GraspOptions {
                prune_edges: false,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(pruned, kept);
        assert_eq!(pruned, crate::oracle::enumerate_stable(&p).unwrap());
    }
}
