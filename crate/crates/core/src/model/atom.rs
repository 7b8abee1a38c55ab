use std::fmt;

use super::Term;

/// A relation name applied to an ordered list of terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub relation: String,
    pub terms: Vec<Term>,
}

impl Atom {
    pub fn new(relation: impl Into<String>, terms: Vec<Term>) -> Self {
        Atom {
            relation: relation.into(),
            terms,
        }
    }

    pub fn arity(&self) -> usize {
        self.terms.len()
    }

    /// Key for presentation order: relation name, then the rendered terms.
    pub fn display_key(&self) -> (String, Vec<String>) {
        (
            self.relation.clone(),
            self.terms.iter().map(Term::to_string).collect(),
        )
    }
}

pub(crate) fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[Term]) -> fmt::Result {
    for (i, t) in terms.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{t}")?;
    }
    Ok(())
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.relation)?;
        write_terms(f, &self.terms)?;
        f.write_str(")")
    }
}

/// Sorts atoms by [`Atom::display_key`].
pub fn sort_for_display(atoms: &mut [Atom]) {
    atoms.sort_by_cached_key(Atom::display_key);
}

/// Builds an atom from a relation and `Into<Term>`-free literals. Mostly for tests.
#[macro_export]
macro_rules! atom {
    ($rel:ident ( $($t:expr),* $(,)? )) => {
        $crate::model::Atom::new(
            stringify!($rel),
            vec![$($t.parse::<$crate::model::Term>().expect("term literal")),*],
        )
    };
}
