//! Interned variable names and ordered variable universes.

use std::fmt;
use std::sync::Arc;

/// A variable name. Cheap to clone, compared by content.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

/// An ordered list of variables. The declaration order fixes the term order
/// (graded lex, index 0 most significant) and the printing order.
#[derive(Clone, PartialEq, Eq)]
pub struct Vars(Arc<[Symbol]>);

impl Vars {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<Symbol>,
    {
        let v: Vec<Symbol> = names.into_iter().map(Into::into).collect();
        debug_assert!(
            v.iter().enumerate().all(|(i, s)| !v[..i].contains(s)),
            "duplicate variable in universe"
        );
        Vars(Arc::from(v))
    }

    pub fn empty() -> Self {
        Vars(Arc::from(Vec::new()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Symbol> {
        self.0.iter()
    }

    pub fn index_of(&self, s: &Symbol) -> Option<usize> {
        self.0.iter().position(|t| t == s)
    }

    pub fn get(&self, i: usize) -> &Symbol {
        &self.0[i]
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.index_of(s).is_some()
    }

    /// Union keeping `self`'s order, then unseen variables of `other` in
    /// their own order.
    pub fn merge(&self, other: &Vars) -> Vars {
        if self == other {
            return self.clone();
        }
        let mut v: Vec<Symbol> = self.0.to_vec();
        for s in other.0.iter() {
            if !v.contains(s) {
                v.push(s.clone());
            }
        }
        Vars(Arc::from(v))
    }

    /// Extend with a single symbol if absent.
    pub fn with(&self, s: &Symbol) -> Vars {
        if self.contains(s) {
            self.clone()
        } else {
            let mut v: Vec<Symbol> = self.0.to_vec();
            v.push(s.clone());
            Vars(Arc::from(v))
        }
    }
}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "]")
    }
}

impl<const N: usize> From<[&str; N]> for Vars {
    fn from(names: [&str; N]) -> Self {
        Vars::new(names)
    }
}
