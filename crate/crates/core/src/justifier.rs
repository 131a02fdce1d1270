//! Justification trees: why an atom has its value in a solved world.
//!
//! A `True` node is explained by its effective in-edges (a positive edge from
//! a `True` node or a negative edge from a `False` node); a `False` node by
//! listing every in-edge and why it is not effective. Each node is expanded
//! once per tree; later occurrences become `LoopBack` (an ancestor) or
//! `SeeAbove` (expanded elsewhere) markers, so the tree has at most one node
//! per graph edge plus the root.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{export_dot_with, DepGraph, NodeId, NodeIx, NodeKind, Sign, TruthValue};
use crate::grasp::World;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JustifyError {
    #[error("atom `{0}` does not occur in the program")]
    AtomUnknown(String),
    #[error("node `{0}` has no value in the world")]
    WorldIncomplete(NodeId),
    #[error("node `{0}` is True without an effective in-edge")]
    Unsupported(NodeId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    /// True by a fact.
    Fact,
    /// False because nothing can derive it.
    NoRules,
    /// True through the effective in-edges listed as children.
    Supported,
    /// False: no in-edge listed as a child is effective.
    Unsupported,
    /// Already on the path above; the loop passes a `False` node when
    /// `coinductive` is set (a loop through negation).
    LoopBack { coinductive: bool },
    /// Expanded elsewhere in the tree.
    SeeAbove,
}

impl Reason {
    pub fn is_leaf_marker(self) -> bool {
        matches!(self, Reason::LoopBack { .. } | Reason::SeeAbove)
    }

    pub fn describe(self) -> &'static str {
        match self {
            Reason::Fact => "fact",
            Reason::NoRules => "no rules",
            Reason::Supported => "supported",
            Reason::Unsupported => "unsupported",
            Reason::LoopBack { coinductive: true } => "loop-back, coinductive assumption",
            Reason::LoopBack { coinductive: false } => "loop-back",
            Reason::SeeAbove => "see above",
        }
    }
}

/// The edge linking a child to its parent, from the child's side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Link {
    pub sign: Sign,
    pub effective: bool,
    /// The first effective edge of a `True` parent (smallest source).
    pub primary: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JustificationTree {
    pub node: NodeId,
    pub value: bool,
    pub reason: Reason,
    pub link: Option<Link>,
    /// Source rule indices, for conjunction nodes.
    pub rules: Vec<usize>,
    pub children: Vec<JustificationTree>,
}

impl JustificationTree {
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Self::size).sum::<usize>()
    }

    pub fn leaves(&self) -> Vec<&JustificationTree> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            if t.children.is_empty() {
                out.push(t);
            }
            stack.extend(t.children.iter().rev());
        }
        out
    }

    /// Indented text, one node per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out, 0);
        out
    }

    fn write_text(&self, out: &mut String, depth: usize) {
        let indent = "  ".repeat(depth);
        let edge = match self.link {
            None => String::new(),
            Some(l) => format!(
                "<-{}{} ",
                if l.sign == Sign::Negative { "not" } else { "" },
                if l.primary { "*" } else { "" }
            ),
        };
        let value = if self.value { "True" } else { "False" };
        let _ = write!(
            out,
            "{indent}{edge}{} = {value} [{}]",
            self.node,
            self.reason.describe()
        );
        if !self.rules.is_empty() {
            let rules: Vec<String> = self.rules.iter().map(|r| format!("#{r}")).collect();
            let _ = write!(out, " rule {}", rules.join(", "));
        }
        out.push('\n');
        for c in &self.children {
            c.write_text(out, depth + 1);
        }
    }

    pub fn to_document(&self) -> TreeDocument {
        TreeDocument {
            node: self.node.to_string(),
            value: self.value,
            reason: self.reason.describe().to_string(),
            edge: self.link,
            rules: self.rules.clone(),
            children: self.children.iter().map(Self::to_document).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("tree serializes")
    }
}

/// JSON shape `{node, value, reason, children}` (plus the linking edge).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDocument {
    pub node: String,
    pub value: bool,
    pub reason: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub edge: Option<Link>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub rules: Vec<usize>,
    pub children: Vec<TreeDocument>,
}

fn value_of(w: &World, g: &DepGraph, n: NodeIx) -> Result<bool, JustifyError> {
    w.value(n)
        .ok_or_else(|| JustifyError::WorldIncomplete(g.id(n).clone()))
}

/// Justification tree for atom `a` in the complete world `w`.
pub fn justify(g: &DepGraph, w: &World, a: &str) -> Result<JustificationTree, JustifyError> {
    let root = g
        .atom_node(a)
        .ok_or_else(|| JustifyError::AtomUnknown(a.to_string()))?;
    if let Some(n) = g.node_indices().find(|&n| w.value(n).is_none()) {
        return Err(JustifyError::WorldIncomplete(g.id(n).clone()));
    }
    let mut builder = Builder {
        g,
        w,
        expanded: HashSet::new(),
        path: Vec::new(),
    };
    builder.build(root, None)
}

struct Builder<'a> {
    g: &'a DepGraph,
    w: &'a World,
    expanded: HashSet<NodeIx>,
    path: Vec<NodeIx>,
}

impl Builder<'_> {
    fn build(&mut self, n: NodeIx, link: Option<Link>) -> Result<JustificationTree, JustifyError> {
        let g = self.g;
        let value = value_of(self.w, g, n)?;
        let rules = if g.kind(n) == NodeKind::Conj {
            g.origin(n).to_vec()
        } else {
            Vec::new()
        };
        let leaf = |reason| JustificationTree {
            node: g.id(n).clone(),
            value,
            reason,
            link,
            rules: rules.clone(),
            children: Vec::new(),
        };
        if let Some(pos) = self.path.iter().position(|&m| m == n) {
            let coinductive = self.path[pos..]
                .iter()
                .any(|&m| self.w.value(m) == Some(false));
            return Ok(leaf(Reason::LoopBack { coinductive }));
        }
        if self.expanded.contains(&n) {
            return Ok(leaf(Reason::SeeAbove));
        }
        if g.is_fact(n) {
            self.expanded.insert(n);
            return Ok(leaf(Reason::Fact));
        }
        if g.in_degree(n) == 0 {
            if value {
                return Err(JustifyError::Unsupported(g.id(n).clone()));
            }
            self.expanded.insert(n);
            return Ok(leaf(Reason::NoRules));
        }

        let mut edges: Vec<(bool, &crate::graph::Edge)> = Vec::new();
        for e in g.in_edges(n) {
            let effective = e.is_effective(value_of(self.w, g, e.from)?);
            if !value || effective {
                edges.push((effective, e));
            }
        }
        if value && edges.is_empty() {
            return Err(JustifyError::Unsupported(g.id(n).clone()));
        }
        edges.sort_by(|a, b| (g.id(a.1.from), a.1.sign).cmp(&(g.id(b.1.from), b.1.sign)));

        self.expanded.insert(n);
        self.path.push(n);
        let mut children = Vec::with_capacity(edges.len());
        for (i, (effective, e)) in edges.into_iter().enumerate() {
            let link = Link {
                sign: e.sign,
                effective,
                primary: value && i == 0,
            };
            children.push(self.build(e.from, Some(link))?);
        }
        self.path.pop();
        Ok(JustificationTree {
            node: g.id(n).clone(),
            value,
            reason: if value {
                Reason::Supported
            } else {
                Reason::Unsupported
            },
            link,
            rules,
            children,
        })
    }
}

/// True iff `w` is complete, respects fixed values, gives every node the
/// disjunction of its effective in-edges, and derives every `True` atom
/// without leaning on itself (no positive loop as the only support).
///
/// Together these hold exactly when the `True` atoms form a stable model.
pub fn check_justified(g: &DepGraph, w: &World) -> bool {
    if w.values().len() != g.node_count() || !w.is_complete() || !w.is_consistent() {
        return false;
    }
    for n in g.node_indices() {
        let value = w.value(n).unwrap();
        let supported = g
            .in_edges(n)
            .any(|e| e.is_effective(w.value(e.from).unwrap()));
        let ok = match g.fixed(n) {
            TruthValue::True => value,
            TruthValue::False => !value && !supported,
            TruthValue::Unfixed => value == supported,
        };
        if !ok {
            return false;
        }
    }
    well_founded(g, w)
}

/// Least fixpoint over the program's rules, reading negative literals from `w`.
fn well_founded(g: &DepGraph, w: &World) -> bool {
    let atoms: Vec<NodeIx> = g.atom_indices().collect();
    let bodies: Vec<Vec<Vec<(NodeIx, bool)>>> = atoms
        .iter()
        .map(|&a| g.bodies_of(a).into_iter().map(|s| s.literals).collect())
        .collect();
    let mut derived = vec![false; g.node_count()];
    for &a in &atoms {
        derived[a] = g.is_fact(a);
    }
    loop {
        let mut changed = false;
        for (i, &a) in atoms.iter().enumerate() {
            if derived[a] {
                continue;
            }
            let fires = bodies[i].iter().any(|body| {
                body.iter().all(|&(u, positive)| {
                    if positive {
                        derived[u]
                    } else {
                        w.value(u) == Some(false)
                    }
                })
            });
            if fires {
                derived[a] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    atoms
        .iter()
        .all(|&a| derived[a] == (w.value(a) == Some(true)))
}

/// The graph with the world's values and every effective edge highlighted.
pub fn export_dot_justified(g: &DepGraph, w: &World) -> String {
    export_dot_with(
        g,
        |n| w.value(n),
        |e| w.value(e.from).is_some_and(|v| e.is_effective(v)),
    )
}
