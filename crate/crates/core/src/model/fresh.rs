use std::collections::{BTreeMap, BTreeSet};

use super::{Term, TermKind};

/// Hands out nulls and ∃-variables whose (kind, label, index) has not been
/// seen in the problem or issued before.
#[derive(Debug, Clone, Default)]
pub struct FreshRegistry {
    used: BTreeMap<(TermKind, String), BTreeSet<u32>>,
}

impl FreshRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registry pre-loaded with every labelled term in `terms`.
    pub fn scanning<'a>(terms: impl IntoIterator<Item = &'a Term>) -> Self {
        let mut r = Self::new();
        r.observe(terms);
        r
    }

    pub fn observe<'a>(&mut self, terms: impl IntoIterator<Item = &'a Term>) {
        for t in terms {
            if let Some(name) = t.name() {
                self.used
                    .entry((t.kind(), name.label.clone()))
                    .or_default()
                    .insert(name.index);
            }
        }
    }

    /// Smallest unused index for `(kind, label)`, registered before returning.
    ///
    /// Panics if `kind` is [`TermKind::Constant`].
    pub fn fresh(&mut self, kind: TermKind, label: &str) -> Term {
        assert_ne!(kind, TermKind::Constant, "constants are never fresh");
        let used = self.used.entry((kind, label.to_string())).or_default();
        let index = (1..).find(|i| !used.contains(i)).expect("index space");
        used.insert(index);
        Term::labelled(kind, label, index).expect("labelled kind")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn continues_user_numbering() {
        let existing = [Term::null("semester", 1)];
        let mut r = FreshRegistry::scanning(&existing);
        assert_eq!(
            r.fresh(TermKind::Null, "semester"),
            Term::null("semester", 2)
        );
        assert_eq!(r.fresh(TermKind::Null, "score"), Term::null("score", 1));
    }

    #[test]
    fn consecutive_calls_differ() {
        let mut r = FreshRegistry::new();
        let a = r.fresh(TermKind::ExistentialVar, "x");
        let b = r.fresh(TermKind::ExistentialVar, "x");
        assert_ne!(a, b);
    }

    #[test]
    fn fills_gaps_and_separates_kinds() {
        let existing = [
            Term::null("a", 1),
            Term::null("a", 3),
            Term::existential("a", 1),
        ];
        let mut r = FreshRegistry::scanning(&existing);
        assert_eq!(r.fresh(TermKind::Null, "a"), Term::null("a", 2));
        assert_eq!(r.fresh(TermKind::Null, "a"), Term::null("a", 4));
        assert_eq!(
            r.fresh(TermKind::ExistentialVar, "a"),
            Term::existential("a", 2)
        );
    }
}
