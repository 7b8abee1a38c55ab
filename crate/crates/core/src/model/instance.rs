use std::collections::BTreeSet;

use super::{Atom, Substitution, Term};
use crate::error::{Error, Result};

/// Whether a generalized instance stands for a database instance or a frozen query body.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObjectKind {
    Instance,
    Query,
}

impl ObjectKind {
    /// Instances hold constants and nulls; frozen queries hold constants and variables.
    pub fn admits(self, t: &Term) -> bool {
        match self {
            ObjectKind::Instance => matches!(t, Term::Const(_) | Term::Null(_)),
            ObjectKind::Query => !matches!(t, Term::Null(_)),
        }
    }

    fn context(self) -> &'static str {
        match self {
            ObjectKind::Instance => "an instance",
            ObjectKind::Query => "a query",
        }
    }
}

/// A set of atoms that is either an instance or a frozen query body.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneralizedInstance {
    kind: ObjectKind,
    atoms: BTreeSet<Atom>,
}

impl GeneralizedInstance {
    pub fn empty(kind: ObjectKind) -> Self {
        GeneralizedInstance {
            kind,
            atoms: BTreeSet::new(),
        }
    }

    pub fn new(kind: ObjectKind, atoms: impl IntoIterator<Item = Atom>) -> Result<Self> {
        let mut i = Self::empty(kind);
        for a in atoms {
            i.insert(a)?;
        }
        Ok(i)
    }

    pub fn kind(&self) -> ObjectKind {
        self.kind
    }

    /// Adds an atom; returns whether it was new.
    pub fn insert(&mut self, atom: Atom) -> Result<bool> {
        if let Some(bad) = atom.terms.iter().find(|t| !self.kind.admits(t)) {
            return Err(Error::IllegalTerm {
                term: bad.clone(),
                context: self.kind.context(),
            });
        }
        Ok(self.atoms.insert(atom))
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.atoms.contains(atom)
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Atoms in canonical (derived `Ord`) order.
    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.atoms.iter()
    }

    pub fn atoms_of<'a>(&'a self, relation: &'a str) -> impl Iterator<Item = &'a Atom> + 'a {
        self.atoms.iter().filter(move |a| a.relation == relation)
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.atoms.iter().flat_map(|a| a.terms.iter())
    }

    /// Atoms sorted by relation name and rendered terms.
    pub fn sorted_for_display(&self) -> Vec<Atom> {
        let mut atoms: Vec<Atom> = self.atoms.iter().cloned().collect();
        super::sort_for_display(&mut atoms);
        atoms
    }

    /// Applies `s` to every atom. Atoms that become equal are merged.
    pub fn substitute(&self, s: &Substitution) -> Result<Self> {
        let mut out = Self::empty(self.kind);
        for a in &self.atoms {
            out.insert(s.apply(a)?)?;
        }
        Ok(out)
    }
}
