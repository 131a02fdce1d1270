//! Conjunction-node (CNR) dependency graphs.
//!
//! [`build_cnr`] gives every rule body with two or more literals its own
//! conjunction node and every headless constraint a constraint node fixed to
//! `False`. [`cnr_to_dg`] then negates every edge touching a conjunction node,
//! which turns the conjunction into a disjunction (De Morgan) so the result
//! can be read as an ordinary signed dependency graph.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::program::{Atom, Program, Rule};

pub type NodeIx = usize;
pub type EdgeIx = usize;

pub const CONJ_PREFIX: &str = "__conj_";
pub const CONSTRAINT_PREFIX: &str = "__constraint_";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Atom,
    Conj,
    Constraint,
}

/// Node identity. The derived order sorts by kind, then by name or ordinal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeId {
    Atom(Atom),
    Conj(usize),
    Constraint(usize),
}

impl NodeId {
    pub fn kind(&self) -> NodeKind {
        match self {
            NodeId::Atom(_) => NodeKind::Atom,
            NodeId::Conj(_) => NodeKind::Conj,
            NodeId::Constraint(_) => NodeKind::Constraint,
        }
    }

    pub fn atom(&self) -> Option<&Atom> {
        match self {
            NodeId::Atom(a) => Some(a),
            _ => None,
        }
    }

    /// Inverse of `Display`.
    pub fn parse(name: &str) -> Option<NodeId> {
        if let Some(k) = name.strip_prefix(CONJ_PREFIX) {
            return k.parse().ok().map(NodeId::Conj);
        }
        if let Some(k) = name.strip_prefix(CONSTRAINT_PREFIX) {
            return k.parse().ok().map(NodeId::Constraint);
        }
        Atom::parse(name).map(NodeId::Atom)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeId::Atom(a) => write!(f, "{a}"),
            NodeId::Conj(k) => write!(f, "{CONJ_PREFIX}{k}"),
            NodeId::Constraint(k) => write!(f, "{CONSTRAINT_PREFIX}{k}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn from_negated(negated: bool) -> Self {
        if negated {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }

    /// The source value under which an edge of this sign propagates `True`.
    pub fn effective_source_value(self) -> bool {
        self.is_positive()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub enum TruthValue {
    True,
    False,
    #[default]
    Unfixed,
}

impl TruthValue {
    pub fn from_bool(b: bool) -> Self {
        if b {
            TruthValue::True
        } else {
            TruthValue::False
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            TruthValue::True => Some(true),
            TruthValue::False => Some(false),
            TruthValue::Unfixed => None,
        }
    }

    pub fn is_fixed(self) -> bool {
        self != TruthValue::Unfixed
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruthValue::True => "True",
            TruthValue::False => "False",
            TruthValue::Unfixed => "Unfixed",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: NodeIx,
    pub to: NodeIx,
    pub sign: Sign,
}

impl Edge {
    /// An edge is effective when it propagates `True` to its target.
    pub fn is_effective(&self, source_value: bool) -> bool {
        self.sign.effective_source_value() == source_value
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub id: NodeId,
    pub fixed: TruthValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has already been converted to a dependency graph")]
    DoubleTransform,
}

/// Signed dependency graph over atoms and helper nodes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DepGraph {
    nodes: Vec<Node>,
    index: HashMap<NodeId, NodeIx>,
    edges: Vec<Edge>,
    edge_index: HashMap<Edge, EdgeIx>,
    out_adj: Vec<Vec<EdgeIx>>,
    in_adj: Vec<Vec<EdgeIx>>,
    origin: BTreeMap<NodeIx, Vec<usize>>,
    next_conj: usize,
    next_constraint: usize,
    transformed: bool,
}

impl DepGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn is_transformed(&self) -> bool {
        self.transformed
    }

    pub fn node(&self, ix: NodeIx) -> &Node {
        &self.nodes[ix]
    }

    pub fn id(&self, ix: NodeIx) -> &NodeId {
        &self.nodes[ix].id
    }

    pub fn kind(&self, ix: NodeIx) -> NodeKind {
        self.nodes[ix].id.kind()
    }

    pub fn fixed(&self, ix: NodeIx) -> TruthValue {
        self.nodes[ix].fixed
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = (NodeIx, &Node)> {
        self.nodes.iter().enumerate()
    }

    pub fn node_indices(&self) -> std::ops::Range<NodeIx> {
        0..self.nodes.len()
    }

    pub fn lookup(&self, id: &NodeId) -> Option<NodeIx> {
        self.index.get(id).copied()
    }

    /// Looks up a node by its printed name (atoms and helper nodes alike).
    pub fn lookup_name(&self, name: &str) -> Option<NodeIx> {
        NodeId::parse(name).and_then(|id| self.lookup(&id))
    }

    pub fn atom_node(&self, name: &str) -> Option<NodeIx> {
        self.lookup(&NodeId::Atom(Atom::new(name)))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeIx) -> &Edge {
        &self.edges[e]
    }

    pub fn in_edges(&self, ix: NodeIx) -> impl Iterator<Item = &Edge> + '_ {
        self.in_adj[ix].iter().map(move |&e| &self.edges[e])
    }

    pub fn out_edges(&self, ix: NodeIx) -> impl Iterator<Item = &Edge> + '_ {
        self.out_adj[ix].iter().map(move |&e| &self.edges[e])
    }

    pub fn in_edge_ids(&self, ix: NodeIx) -> &[EdgeIx] {
        &self.in_adj[ix]
    }

    pub fn out_edge_ids(&self, ix: NodeIx) -> &[EdgeIx] {
        &self.out_adj[ix]
    }

    pub fn in_degree(&self, ix: NodeIx) -> usize {
        self.in_adj[ix].len()
    }

    pub fn has_edge(&self, from: NodeIx, to: NodeIx, sign: Sign) -> bool {
        self.edge_index.contains_key(&Edge { from, to, sign })
    }

    /// Source rules (by `source_index`) of a conjunction or constraint node.
    pub fn origin(&self, ix: NodeIx) -> &[usize] {
        self.origin.get(&ix).map_or(&[], Vec::as_slice)
    }

    pub fn is_fact(&self, ix: NodeIx) -> bool {
        self.kind(ix) == NodeKind::Atom && self.fixed(ix) == TruthValue::True
    }

    /// The sign an edge had in the CNR graph, before any conjunction flip.
    pub fn cnr_sign(&self, edge: &Edge) -> Sign {
        if self.transformed && self.touches_conj(edge) {
            edge.sign.flip()
        } else {
            edge.sign
        }
    }

    fn touches_conj(&self, edge: &Edge) -> bool {
        self.kind(edge.from) == NodeKind::Conj || self.kind(edge.to) == NodeKind::Conj
    }

    /// The rule bodies deriving `ix`, reconstructed from the graph structure.
    ///
    /// Each body is a list of `(node, positive)` pairs in CNR polarity. A direct
    /// edge gives a one-literal body, a conjunction node gives the literals of its
    /// rule. Fact and constraint nodes report only their edges; their fixed value
    /// is not represented here.
    pub fn bodies_of(&self, ix: NodeIx) -> Vec<Support> {
        self.in_edges(ix)
            .map(|e| {
                if self.kind(e.from) == NodeKind::Conj && self.kind(ix) != NodeKind::Conj {
                    Support {
                        via: Some(e.from),
                        literals: self.conj_literals(e.from),
                    }
                } else {
                    Support {
                        via: None,
                        literals: vec![(e.from, self.cnr_sign(e).is_positive())],
                    }
                }
            })
            .collect()
    }

    /// Body literals of a conjunction node in CNR polarity.
    pub fn conj_literals(&self, conj: NodeIx) -> Vec<(NodeIx, bool)> {
        debug_assert_eq!(self.kind(conj), NodeKind::Conj);
        self.in_edges(conj)
            .map(|e| (e.from, self.cnr_sign(e).is_positive()))
            .collect()
    }

    pub(crate) fn add_node(&mut self, id: NodeId, fixed: TruthValue) -> NodeIx {
        if let Some(&ix) = self.index.get(&id) {
            return ix;
        }
        let ix = self.nodes.len();
        self.index.insert(id.clone(), ix);
        self.nodes.push(Node { id, fixed });
        self.out_adj.push(Vec::new());
        self.in_adj.push(Vec::new());
        ix
    }

    pub(crate) fn add_conj_node(&mut self) -> NodeIx {
        let k = self.next_conj;
        self.next_conj += 1;
        self.add_node(NodeId::Conj(k), TruthValue::Unfixed)
    }

    pub(crate) fn add_constraint_node(&mut self) -> NodeIx {
        let k = self.next_constraint;
        self.next_constraint += 1;
        self.add_node(NodeId::Constraint(k), TruthValue::False)
    }

    pub(crate) fn add_edge(&mut self, from: NodeIx, to: NodeIx, sign: Sign) -> EdgeIx {
        let edge = Edge { from, to, sign };
        if let Some(&e) = self.edge_index.get(&edge) {
            return e;
        }
        let e = self.edges.len();
        self.edges.push(edge);
        self.edge_index.insert(edge, e);
        self.out_adj[from].push(e);
        self.in_adj[to].push(e);
        e
    }

    pub(crate) fn record_origin(&mut self, ix: NodeIx, source_index: usize) {
        self.origin.entry(ix).or_default().push(source_index);
    }

    /// Flips the sign of every conjunction-incident edge and toggles the
    /// transformed flag. Applying it twice gives back the original graph.
    pub fn flip_conjunction_signs(&self) -> DepGraph {
        let mut out = DepGraph {
            edges: Vec::with_capacity(self.edges.len()),
            edge_index: HashMap::with_capacity(self.edges.len()),
            transformed: !self.transformed,
            ..self.clone()
        };
        for edge in &self.edges {
            let sign = if self.touches_conj(edge) {
                edge.sign.flip()
            } else {
                edge.sign
            };
            let flipped = Edge { sign, ..*edge };
            out.edge_index.insert(flipped, out.edges.len());
            out.edges.push(flipped);
        }
        out
    }

    /// Atom names only; helper nodes are never part of an answer.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        self.nodes
            .iter()
            .filter_map(|n| n.id.atom().cloned())
            .collect()
    }

    pub fn atom_indices(&self) -> impl Iterator<Item = NodeIx> + '_ {
        self.node_indices()
            .filter(|&ix| self.kind(ix) == NodeKind::Atom)
    }

    pub fn constraint_indices(&self) -> impl Iterator<Item = NodeIx> + '_ {
        self.node_indices()
            .filter(|&ix| self.kind(ix) == NodeKind::Constraint)
    }

    pub fn to_document(&self) -> GraphDocument {
        let mut nodes: Vec<&Node> = self.nodes.iter().collect();
        nodes.sort_by(|a, b| a.id.cmp(&b.id));
        let mut edges: Vec<&Edge> = self.edges.iter().collect();
        edges.sort_by(|a, b| self.edge_order(a, b));
        GraphDocument {
            nodes: nodes
                .into_iter()
                .map(|n| NodeDocument {
                    id: n.id.to_string(),
                    kind: n.id.kind(),
                    fixed: n.fixed.as_bool(),
                })
                .collect(),
            edges: edges
                .into_iter()
                .map(|e| EdgeDocument {
                    from: self.id(e.from).to_string(),
                    to: self.id(e.to).to_string(),
                    sign: e.sign,
                })
                .collect(),
        }
    }

    fn edge_order(&self, a: &Edge, b: &Edge) -> std::cmp::Ordering {
        (self.id(a.from), self.id(a.to), a.sign).cmp(&(self.id(b.from), self.id(b.to), b.sign))
    }
}

/// A body supporting a node: either a direct one-literal edge or a conjunction node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Support {
    pub via: Option<NodeIx>,
    pub literals: Vec<(NodeIx, bool)>,
}

/// JSON shape `{nodes:[{id,kind,fixed}], edges:[{from,to,sign}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub nodes: Vec<NodeDocument>,
    pub edges: Vec<EdgeDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeDocument {
    pub id: String,
    pub kind: NodeKind,
    pub fixed: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDocument {
    pub from: String,
    pub to: String,
    pub sign: Sign,
}

/// Builds the CNR graph of a program.
///
/// Atom nodes come first in name order, followed by helper nodes in rule
/// order. Rules identical up to body order share one set of nodes and edges.
pub fn build_cnr(program: &Program) -> DepGraph {
    let mut g = DepGraph::default();
    for atom in program.atoms() {
        g.add_node(NodeId::Atom(atom.clone()), TruthValue::Unfixed);
    }
    let mut seen: HashMap<_, Option<NodeIx>> = HashMap::new();
    for rule in program.rules() {
        if let Some(&helper) = seen.get(&rule.identity()) {
            if let Some(helper) = helper {
                g.record_origin(helper, rule.source_index);
            }
            continue;
        }
        let helper = add_rule(&mut g, rule);
        seen.insert(rule.identity(), helper);
    }
    g
}

/// Adds one rule, returning the helper node that records its origin, if any.
fn add_rule(g: &mut DepGraph, rule: &Rule) -> Option<NodeIx> {
    let atom_ix = |g: &DepGraph, a: &Atom| g.lookup(&NodeId::Atom(a.clone())).unwrap();
    let mut helper = None;
    let target = match &rule.head {
        Some(head) => {
            let h = atom_ix(g, head);
            if rule.body.is_empty() {
                g.nodes[h].fixed = TruthValue::True;
                return None;
            }
            h
        }
        None => {
            let c = g.add_constraint_node();
            g.record_origin(c, rule.source_index);
            helper = Some(c);
            c
        }
    };
    if let [lit] = rule.body.as_slice() {
        let from = atom_ix(g, &lit.atom);
        g.add_edge(from, target, Sign::from_negated(lit.negated));
        return helper;
    }
    let conj = g.add_conj_node();
    g.record_origin(conj, rule.source_index);
    for lit in &rule.body {
        let from = atom_ix(g, &lit.atom);
        g.add_edge(from, conj, Sign::from_negated(lit.negated));
    }
    g.add_edge(conj, target, Sign::Positive);
    helper.or(Some(conj))
}

/// Converts a CNR graph into a dependency graph by negating every
/// conjunction-incident edge.
pub fn cnr_to_dg(g: &DepGraph) -> Result<DepGraph, GraphError> {
    if g.transformed {
        return Err(GraphError::DoubleTransform);
    }
    Ok(g.flip_conjunction_signs())
}

/// `cnr_to_dg(build_cnr(program))`.
pub fn build_dg(program: &Program) -> DepGraph {
    build_cnr(program).flip_conjunction_signs()
}

pub fn atoms_of(g: &DepGraph) -> BTreeSet<Atom> {
    g.atoms()
}

/// Graphviz rendering. Negative edges are dashed and labelled `not`,
/// conjunction nodes are filled black, constraint nodes double-circled.
pub fn export_dot(g: &DepGraph) -> String {
    export_dot_with(g, |_| None, |_| false)
}

/// DOT export with optional per-node value annotations and highlighted edges.
pub fn export_dot_with(
    g: &DepGraph,
    value: impl Fn(NodeIx) -> Option<bool>,
    highlight: impl Fn(&Edge) -> bool,
) -> String {
    if g.is_empty() {
        return "digraph g {}\n".to_string();
    }
    let mut order: Vec<NodeIx> = g.node_indices().collect();
    order.sort_by(|&a, &b| g.id(a).cmp(g.id(b)));
    let mut out = String::from("digraph g {\n");
    for ix in order {
        let node = g.node(ix);
        let mut attrs: Vec<String> = Vec::new();
        match node.id.kind() {
            NodeKind::Atom => attrs.push("shape=circle".into()),
            NodeKind::Conj => attrs.extend(
                [
                    "shape=circle",
                    "style=filled",
                    "fillcolor=black",
                    "fontcolor=white",
                    "width=0.25",
                    "label=\"\"",
                ]
                .map(String::from),
            ),
            NodeKind::Constraint => {
                attrs.push("shape=doublecircle".into());
                attrs.push("label=\"False\"".into());
            }
        }
        if node.id.kind() == NodeKind::Atom && node.fixed == TruthValue::True {
            attrs.push("penwidth=2".into());
        }
        if let Some(v) = value(ix) {
            attrs.push(format!("xlabel=\"{}\"", if v { "T" } else { "F" }));
        }
        let _ = writeln!(out, "  \"{}\" [{}];", node.id, attrs.join(", "));
    }
    let mut edges: Vec<&Edge> = g.edges().iter().collect();
    edges.sort_by(|a, b| g.edge_order(a, b));
    for e in edges {
        let mut attrs: Vec<&str> = Vec::new();
        if e.sign == Sign::Negative {
            attrs.push("label=\"not\"");
            attrs.push("style=dashed");
        }
        if highlight(e) {
            attrs.push("color=red");
            attrs.push("penwidth=2");
        }
        let _ = write!(out, "  \"{}\" -> \"{}\"", g.id(e.from), g.id(e.to));
        if attrs.is_empty() {
            out.push_str(";\n");
        } else {
            let _ = writeln!(out, " [{}];", attrs.join(", "));
        }
    }
    out.push_str("}\n");
    out
}
