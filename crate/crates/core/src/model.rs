use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::program::Atom;

/// The true atoms of a stable model. Orders lexicographically as a sorted name list.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AnswerSet {
    atoms: BTreeSet<Atom>,
}

impl AnswerSet {
    pub fn new(atoms: BTreeSet<Atom>) -> Self {
        AnswerSet { atoms }
    }

    pub fn atoms(&self) -> &BTreeSet<Atom> {
        &self.atoms
    }

    pub fn contains(&self, name: &str) -> bool {
        self.atoms.contains(&Atom::new(name))
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn names(&self) -> Vec<&str> {
        self.atoms.iter().map(Atom::name).collect()
    }
}

impl<'a> FromIterator<&'a str> for AnswerSet {
    fn from_iter<T: IntoIterator<Item = &'a str>>(iter: T) -> Self {
        AnswerSet::new(iter.into_iter().map(Atom::new).collect())
    }
}

impl FromIterator<Atom> for AnswerSet {
    fn from_iter<T: IntoIterator<Item = Atom>>(iter: T) -> Self {
        AnswerSet::new(iter.into_iter().collect())
    }
}

impl fmt::Display for AnswerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

/// Sorts and removes duplicates.
pub(crate) fn normalize(mut sets: Vec<AnswerSet>) -> Vec<AnswerSet> {
    sets.sort();
    sets.dedup();
    sets
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_order() {
        let a: AnswerSet = ["q", "p"].into_iter().collect();
        assert_eq!(a.to_string(), "{p, q}");
        assert_eq!(AnswerSet::default().to_string(), "{}");
        let b: AnswerSet = ["q"].into_iter().collect();
        let e = AnswerSet::default();
        assert_eq!(
            normalize(vec![b.clone(), a.clone(), e.clone(), b.clone()]),
            vec![e, a, b]
        );
    }
}
