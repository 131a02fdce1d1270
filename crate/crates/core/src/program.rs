//! Ground program data model and its canonical text form.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A propositional atom, named by an identifier `[a-z][a-zA-Z0-9_]*`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Atom(String);

impl Atom {
    /// Wraps a name without validating it. Use [`Atom::parse`] for untrusted input.
    pub fn new(name: impl Into<String>) -> Self {
        Atom(name.into())
    }

    /// Validates `name` against the identifier grammar.
    pub fn parse(name: &str) -> Option<Self> {
        is_identifier(name).then(|| Atom(name.to_string()))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Atom {
    fn from(s: &str) -> Self {
        Atom::new(s)
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// One literal of a rule body. `negated` means negation as failure.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BodyLiteral {
    pub atom: Atom,
    pub negated: bool,
}

impl BodyLiteral {
    pub fn pos(atom: impl Into<Atom>) -> Self {
        BodyLiteral {
            atom: atom.into(),
            negated: false,
        }
    }

    pub fn neg(atom: impl Into<Atom>) -> Self {
        BodyLiteral {
            atom: atom.into(),
            negated: true,
        }
    }

    /// Whether the literal holds under the given set of true atoms.
    pub fn holds_in(&self, true_atoms: &BTreeSet<Atom>) -> bool {
        true_atoms.contains(&self.atom) != self.negated
    }
}

impl fmt::Display for BodyLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "not {}", self.atom)
        } else {
            write!(f, "{}", self.atom)
        }
    }
}

/// A ground rule: fact (`p.`), normal rule (`p :- body.`) or headless constraint (`:- body.`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rule {
    pub head: Option<Atom>,
    pub body: Vec<BodyLiteral>,
    pub source_index: usize,
}

impl Rule {
    pub fn is_fact(&self) -> bool {
        self.head.is_some() && self.body.is_empty()
    }

    pub fn is_constraint(&self) -> bool {
        self.head.is_none()
    }

    pub fn body_holds_in(&self, true_atoms: &BTreeSet<Atom>) -> bool {
        self.body.iter().all(|l| l.holds_in(true_atoms))
    }

    /// Head plus body literal set, ignoring literal order and source position.
    pub(crate) fn identity(&self) -> (Option<&Atom>, BTreeSet<&BodyLiteral>) {
        (self.head.as_ref(), self.body.iter().collect())
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(head) = &self.head {
            write!(f, "{head}")?;
            if self.body.is_empty() {
                return f.write_str(".");
            }
            f.write_str(" ")?;
        }
        f.write_str(":- ")?;
        for (i, lit) in self.body.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{lit}")?;
        }
        f.write_str(".")
    }
}

/// An ordered list of ground rules together with the set of atoms they mention.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Program {
    rules: Vec<Rule>,
    atoms: BTreeSet<Atom>,
}

impl Program {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a program from rules, renumbering `source_index` to list order.
    pub fn from_rules(rules: impl IntoIterator<Item = Rule>) -> Self {
        let mut program = Program::new();
        for rule in rules {
            program.push(rule.head, rule.body);
        }
        program
    }

    /// Appends a rule. Duplicate body literals are dropped, keeping first occurrences.
    ///
    /// Panics on a headless rule with an empty body.
    pub fn push(&mut self, head: Option<Atom>, body: Vec<BodyLiteral>) -> &Rule {
        assert!(
            head.is_some() || !body.is_empty(),
            "a constraint needs a non-empty body"
        );
        let mut seen = BTreeSet::new();
        let body: Vec<BodyLiteral> = body
            .into_iter()
            .filter(|l| seen.insert(l.clone()))
            .collect();
        if let Some(h) = &head {
            self.atoms.insert(h.clone());
        }
        for lit in &body {
            self.atoms.insert(lit.atom.clone());
        }
        let source_index = self.rules.len();
        self.rules.push(Rule {
            head,
            body,
            source_index,
        });
        self.rules.last().unwrap()
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn atoms(&self) -> &BTreeSet<Atom> {
        &self.atoms
    }

    pub fn contains_atom(&self, name: &str) -> bool {
        self.atoms.contains(&Atom::new(name))
    }

    pub fn facts(&self) -> impl Iterator<Item = &Atom> {
        self.rules
            .iter()
            .filter(|r| r.is_fact())
            .filter_map(|r| r.head.as_ref())
    }

    pub fn has_constraints(&self) -> bool {
        self.rules.iter().any(Rule::is_constraint)
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, rule) in self.rules.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{rule}")?;
        }
        Ok(())
    }
}

/// Canonical text of a program, one rule per line.
pub fn print_program(program: &Program) -> String {
    program.to_string()
}
