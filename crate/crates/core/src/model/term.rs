use std::fmt;
use std::str::FromStr;

/// A constant value. Integers and text never compare equal to each other.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Constant {
    Int(i64),
    Text(String),
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constant::Int(n) => write!(f, "{n}"),
            Constant::Text(s) => write!(f, "'{s}'"),
        }
    }
}

/// The four kinds of terms an atom can carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TermKind {
    Constant,
    Null,
    UniversalVar,
    ExistentialVar,
}

impl TermKind {
    /// Rendering prefix for labelled kinds (`#N_`, `#V_`, `#E_`).
    pub fn prefix(self) -> Option<&'static str> {
        match self {
            TermKind::Constant => None,
            TermKind::Null => Some("#N_"),
            TermKind::UniversalVar => Some("#V_"),
            TermKind::ExistentialVar => Some("#E_"),
        }
    }
}

/// Label and index of a null or variable, e.g. `semester` and `2` in `#N_semester_2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name {
    pub label: String,
    pub index: u32,
}

impl Name {
    pub fn new(label: impl Into<String>, index: u32) -> Self {
        Name {
            label: label.into(),
            index,
        }
    }
}

/// A term of a generalized atom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Const(Constant),
    Null(Name),
    Universal(Name),
    Existential(Name),
}

impl Term {
    pub fn int(n: i64) -> Self {
        Term::Const(Constant::Int(n))
    }

    pub fn text(s: impl Into<String>) -> Self {
        Term::Const(Constant::Text(s.into()))
    }

    pub fn null(label: impl Into<String>, index: u32) -> Self {
        Term::Null(Name::new(label, index))
    }

    pub fn universal(label: impl Into<String>, index: u32) -> Self {
        Term::Universal(Name::new(label, index))
    }

    pub fn existential(label: impl Into<String>, index: u32) -> Self {
        Term::Existential(Name::new(label, index))
    }

    /// Builds a labelled term of the given kind. Returns `None` for [`TermKind::Constant`].
    pub fn labelled(kind: TermKind, label: impl Into<String>, index: u32) -> Option<Self> {
        let name = Name::new(label, index);
        match kind {
            TermKind::Constant => None,
            TermKind::Null => Some(Term::Null(name)),
            TermKind::UniversalVar => Some(Term::Universal(name)),
            TermKind::ExistentialVar => Some(Term::Existential(name)),
        }
    }

    pub fn kind(&self) -> TermKind {
        match self {
            Term::Const(_) => TermKind::Constant,
            Term::Null(_) => TermKind::Null,
            Term::Universal(_) => TermKind::UniversalVar,
            Term::Existential(_) => TermKind::ExistentialVar,
        }
    }

    pub fn name(&self) -> Option<&Name> {
        match self {
            Term::Const(_) => None,
            Term::Null(n) | Term::Universal(n) | Term::Existential(n) => Some(n),
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, Term::Const(_))
    }

    pub fn is_variable(&self) -> bool {
        matches!(self, Term::Universal(_) | Term::Existential(_))
    }

    /// Rank used when an egd equates two terms: the higher rank survives.
    /// Constant > universal variable > existential variable > null.
    pub fn survivor_rank(&self) -> u8 {
        match self {
            Term::Const(_) => 3,
            Term::Universal(_) => 2,
            Term::Existential(_) => 1,
            Term::Null(_) => 0,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(c) => c.fmt(f),
            other => {
                let name = other.name().expect("labelled term");
                let prefix = other.kind().prefix().expect("labelled term");
                write!(f, "{prefix}{}_{}", name.label, name.index)
            }
        }
    }
}

/// Error returned by [`Term::from_str`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a term: {0:?}")]
pub struct TermParseError(pub String);

/// `[A-Za-z][A-Za-z0-9_]*`
pub fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits `label_index` at the last underscore.
pub(crate) fn split_name(body: &str) -> Option<Name> {
    let (label, index) = body.rsplit_once('_')?;
    if !is_ident(label) || index.is_empty() || !index.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let index: u32 = index.parse().ok()?;
    (index >= 1).then(|| Name::new(label, index))
}

impl FromStr for Term {
    type Err = TermParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || TermParseError(s.to_string());
        if let Some(inner) = s.strip_prefix('\'') {
            let text = inner.strip_suffix('\'').ok_or_else(err)?;
            if text.contains(['\'', '\n']) {
                return Err(err());
            }
            return Ok(Term::text(text));
        }
        for kind in [
            TermKind::Null,
            TermKind::UniversalVar,
            TermKind::ExistentialVar,
        ] {
            if let Some(body) = s.strip_prefix(kind.prefix().unwrap()) {
                let name = split_name(body).ok_or_else(err)?;
                return Ok(Term::labelled(kind, name.label, name.index).unwrap());
            }
        }
        let digits = s.strip_prefix('-').unwrap_or(s);
        if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
            return s.parse().map(Term::int).map_err(|_| err());
        }
        Err(err())
    }
}
