use std::collections::BTreeSet;
use std::fmt;

use super::atom::write_terms;
use super::{Atom, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DependencyKind {
    Tgd,
    Egd,
}

/// Right-hand side of a dependency.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Head {
    /// Conjunction of atoms (tgd).
    Atoms(Vec<Atom>),
    /// Equality of two terms (egd).
    Equality(Term, Term),
}

/// A tgd, s-t tgd or egd.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dependency {
    pub id: String,
    pub body: Vec<Atom>,
    pub head: Head,
    pub source_target: bool,
}

impl Dependency {
    pub fn tgd(id: impl Into<String>, body: Vec<Atom>, head: Vec<Atom>) -> Self {
        Dependency {
            id: id.into(),
            body,
            head: Head::Atoms(head),
            source_target: false,
        }
    }

    pub fn st_tgd(id: impl Into<String>, body: Vec<Atom>, head: Vec<Atom>) -> Self {
        Dependency {
            source_target: true,
            ..Self::tgd(id, body, head)
        }
    }

    pub fn egd(id: impl Into<String>, body: Vec<Atom>, left: Term, right: Term) -> Self {
        Dependency {
            id: id.into(),
            body,
            head: Head::Equality(left, right),
            source_target: false,
        }
    }

    pub fn kind(&self) -> DependencyKind {
        match self.head {
            Head::Atoms(_) => DependencyKind::Tgd,
            Head::Equality(..) => DependencyKind::Egd,
        }
    }

    pub fn is_tgd(&self) -> bool {
        self.kind() == DependencyKind::Tgd
    }

    /// Head atoms of a tgd; empty for an egd.
    pub fn head_atoms(&self) -> &[Atom] {
        match &self.head {
            Head::Atoms(atoms) => atoms,
            Head::Equality(..) => &[],
        }
    }

    pub fn body_terms(&self) -> impl Iterator<Item = &Term> {
        self.body.iter().flat_map(|a| a.terms.iter())
    }

    pub fn head_terms(&self) -> Box<dyn Iterator<Item = &Term> + '_> {
        match &self.head {
            Head::Atoms(atoms) => Box::new(atoms.iter().flat_map(|a| a.terms.iter())),
            Head::Equality(l, r) => Box::new([l, r].into_iter()),
        }
    }

    /// ∃-variables of the head, in order of first occurrence.
    pub fn existential_vars(&self) -> Vec<&Term> {
        let mut seen = BTreeSet::new();
        self.head_terms()
            .filter(|t| matches!(t, Term::Existential(_)) && seen.insert(*t))
            .collect()
    }

    /// Checks the schema-independent invariants; one message per violation.
    pub fn diagnostics(&self) -> Vec<String> {
        let mut out = Vec::new();
        let id = &self.id;
        if self.body.is_empty() {
            out.push(format!("{id}: body is empty"));
        }
        for t in self.body_terms() {
            if !matches!(t, Term::Const(_) | Term::Universal(_)) {
                out.push(format!(
                    "{id}: body term {t} must be a constant or a universal variable"
                ));
            }
        }
        let body_vars: BTreeSet<&Term> = self.body_terms().filter(|t| t.is_variable()).collect();
        match &self.head {
            Head::Atoms(atoms) => {
                if atoms.is_empty() {
                    out.push(format!("{id}: head is empty"));
                }
                for t in self.head_terms() {
                    match t {
                        Term::Null(_) => {
                            out.push(format!("{id}: head term {t} must not be a null"))
                        }
                        Term::Universal(_) if !body_vars.contains(t) => out.push(format!(
                            "{id}: head variable {t} does not occur in the body"
                        )),
                        _ => {}
                    }
                }
                if self.source_target {
                    let body_rels: BTreeSet<&str> =
                        self.body.iter().map(|a| a.relation.as_str()).collect();
                    for rel in atoms.iter().map(|a| a.relation.as_str()) {
                        if body_rels.contains(rel) {
                            out.push(format!(
                                "{id}: s-t tgd uses relation {rel} in both body and head"
                            ));
                        }
                    }
                }
            }
            Head::Equality(l, r) => {
                for t in [l, r] {
                    match t {
                        Term::Const(_) => {}
                        Term::Universal(_) if body_vars.contains(t) => {}
                        Term::Universal(_) => out.push(format!(
                            "{id}: equated variable {t} does not occur in the body"
                        )),
                        _ => out.push(format!(
                            "{id}: equated term {t} must be a constant or a universal variable"
                        )),
                    }
                }
                if self.source_target {
                    out.push(format!("{id}: only tgds can be source-to-target"));
                }
            }
        }
        out.dedup();
        out
    }
}

pub(crate) fn write_atoms(f: &mut fmt::Formatter<'_>, atoms: &[Atom]) -> fmt::Result {
    for (i, a) in atoms.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

/// Renders in the problem-file syntax, without the id.
impl fmt::Display for Dependency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.source_target {
            f.write_str("st ")?;
        }
        write_atoms(f, &self.body)?;
        f.write_str(" -> ")?;
        match &self.head {
            Head::Atoms(atoms) => write_atoms(f, atoms),
            Head::Equality(l, r) => {
                write_terms(f, std::slice::from_ref(l))?;
                f.write_str(" = ")?;
                write_terms(f, std::slice::from_ref(r))
            }
        }
    }
}
