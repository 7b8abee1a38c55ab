use std::collections::BTreeMap;
use std::fmt;

use super::{Atom, Term};
use crate::error::{Error, Result};

/// Which substitution rules a mapping must obey.
///
/// The rules, by source term kind:
///
/// | source    | `BodyHom`   | `HeadHom`          | `InstanceHom`          | `EqualityRewrite`      |
/// |-----------|-------------|--------------------|------------------------|------------------------|
/// | constant  | itself      | itself             | itself                 | itself                 |
/// | null      | -           | -                  | constant, null         | constant, null         |
/// | ∃-var     | -           | any term           | constant, ∃-var, ∀-var | constant, ∃-var, ∀-var |
/// | ∀-var     | any term    | any term           | constant, itself       | constant, ∀-var        |
///
/// `BodyHom` maps a dependency body into an object, `HeadHom` extends such a
/// mapping over a dependency head, and `InstanceHom` maps one object into
/// another. `EqualityRewrite` is the rule set of egd substitutions, which may
/// merge two ∀-variables of a query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleSet {
    BodyHom,
    HeadHom,
    InstanceHom,
    EqualityRewrite,
}

impl RuleSet {
    /// Whether the single replacement `from -> to` is permitted.
    pub fn allows(self, from: &Term, to: &Term) -> bool {
        use RuleSet::*;
        match from {
            Term::Const(_) => from == to,
            Term::Null(_) => {
                matches!(self, InstanceHom | EqualityRewrite)
                    && matches!(to, Term::Const(_) | Term::Null(_))
            }
            Term::Existential(_) => match self {
                BodyHom => false,
                HeadHom => true,
                InstanceHom | EqualityRewrite => !matches!(to, Term::Null(_)),
            },
            Term::Universal(_) => match self {
                BodyHom | HeadHom => true,
                InstanceHom => to.is_constant() || to == from,
                EqualityRewrite => matches!(to, Term::Const(_) | Term::Universal(_)),
            },
        }
    }
}

/// A finite term mapping, extended by the identity outside its domain.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Substitution {
    mapping: BTreeMap<Term, Term>,
    rule_set: RuleSet,
}

impl Substitution {
    pub fn identity(rule_set: RuleSet) -> Self {
        Substitution {
            mapping: BTreeMap::new(),
            rule_set,
        }
    }

    /// Builds a substitution, checking every pair against `rule_set`.
    pub fn new(rule_set: RuleSet, pairs: impl IntoIterator<Item = (Term, Term)>) -> Result<Self> {
        let mut s = Substitution::identity(rule_set);
        for (from, to) in pairs {
            s.insert(from, to)?;
        }
        Ok(s)
    }

    pub(crate) fn from_map_unchecked(rule_set: RuleSet, mapping: BTreeMap<Term, Term>) -> Self {
        Substitution { mapping, rule_set }
    }

    /// Adds `from -> to`, replacing any earlier image of `from`.
    pub fn insert(&mut self, from: Term, to: Term) -> Result<()> {
        if !self.rule_set.allows(&from, &to) {
            return Err(Error::RuleViolation {
                from,
                to,
                rule_set: self.rule_set,
            });
        }
        self.mapping.insert(from, to);
        Ok(())
    }

    pub fn rule_set(&self) -> RuleSet {
        self.rule_set
    }

    pub fn get(&self, t: &Term) -> Option<&Term> {
        self.mapping.get(t)
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Term, &Term)> {
        self.mapping.iter()
    }

    /// Image of `t`; terms outside the domain map to themselves.
    pub fn apply_term(&self, t: &Term) -> Result<Term> {
        let image = self.mapping.get(t).unwrap_or(t);
        if self.rule_set.allows(t, image) {
            Ok(image.clone())
        } else {
            Err(Error::RuleViolation {
                from: t.clone(),
                to: image.clone(),
                rule_set: self.rule_set,
            })
        }
    }

    /// Replaces every term of `atom` by its image.
    pub fn apply(&self, atom: &Atom) -> Result<Atom> {
        let terms = atom
            .terms
            .iter()
            .map(|t| self.apply_term(t))
            .collect::<Result<Vec<_>>>()?;
        Ok(Atom::new(atom.relation.clone(), terms))
    }

    /// `outer ∘ inner`: the result maps every `t` to `outer(inner(t))`.
    pub fn compose(outer: &Substitution, inner: &Substitution) -> Result<Substitution> {
        if outer.rule_set != inner.rule_set {
            return Err(Error::IncompatibleRuleSets {
                outer: outer.rule_set,
                inner: inner.rule_set,
            });
        }
        let mut composite = Substitution::identity(inner.rule_set);
        for (from, mid) in &inner.mapping {
            let to = outer.mapping.get(mid).unwrap_or(mid).clone();
            composite.insert(from.clone(), to)?;
        }
        for (from, to) in &outer.mapping {
            if !inner.mapping.contains_key(from) {
                composite.insert(from.clone(), to.clone())?;
            }
        }
        Ok(composite)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (from, to)) in self.mapping.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{from} -> {to}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom;
    use proptest::prelude::*;

    fn t(s: &str) -> Term {
        s.parse().unwrap()
    }

    fn sub(rule_set: RuleSet, pairs: &[(&str, &str)]) -> Substitution {
        Substitution::new(rule_set, pairs.iter().map(|(a, b)| (t(a), t(b)))).unwrap()
    }

    #[test]
    fn identity_leaves_ground_atom_alone() {
        let a = atom!(student("3", "'Max'", "'Math'"));
        for rs in [RuleSet::BodyHom, RuleSet::HeadHom, RuleSet::InstanceHom] {
            assert_eq!(Substitution::identity(rs).apply(&a).unwrap(), a);
        }
    }

    #[test]
    fn specializes_frozen_query_tuple() {
        let s = sub(
            RuleSet::BodyHom,
            &[("#V_id_1", "3"), ("#V_course_1", "'Math'")],
        );
        let a = atom!(student("#V_id_1", "'Max'", "#V_course_1"));
        assert_eq!(s.apply(&a).unwrap(), atom!(student("3", "'Max'", "'Math'")));
    }

    #[test]
    fn head_hom_cannot_rewrite_nulls() {
        let mut s = Substitution::identity(RuleSet::HeadHom);
        assert!(matches!(
            s.insert(t("#N_a_1"), t("2")),
            Err(Error::RuleViolation { .. })
        ));
        // Unmapped nulls are outside the head rule set as well.
        assert!(matches!(
            s.apply(&atom!(R("#N_a_1"))),
            Err(Error::RuleViolation { .. })
        ));
    }

    #[test]
    fn constants_are_fixed_in_every_rule_set() {
        for rs in [
            RuleSet::BodyHom,
            RuleSet::HeadHom,
            RuleSet::InstanceHom,
            RuleSet::EqualityRewrite,
        ] {
            assert!(rs.allows(&t("3"), &t("3")));
            assert!(!rs.allows(&t("3"), &t("4")));
            assert!(!rs.allows(&t("3"), &t("#N_a_1")));
        }
    }

    #[test]
    fn rule_table() {
        use RuleSet::*;
        let targets = ["1", "#N_b_1", "#V_b_1", "#E_b_1"];
        // Rows: source kind; columns: BodyHom, HeadHom, InstanceHom, EqualityRewrite.
        let expect = |from: &str, rs: RuleSet| -> Vec<bool> {
            targets
                .iter()
                .map(|to| rs.allows(&t(from), &t(to)))
                .collect()
        };
        assert_eq!(expect("#N_a_1", BodyHom), [false; 4]);
        assert_eq!(expect("#N_a_1", HeadHom), [false; 4]);
        assert_eq!(expect("#N_a_1", InstanceHom), [true, true, false, false]);
        assert_eq!(expect("#E_a_1", BodyHom), [false; 4]);
        assert_eq!(expect("#E_a_1", HeadHom), [true; 4]);
        assert_eq!(expect("#E_a_1", InstanceHom), [true, false, true, true]);
        assert_eq!(expect("#V_a_1", BodyHom), [true; 4]);
        assert_eq!(expect("#V_a_1", HeadHom), [true; 4]);
        assert_eq!(expect("#V_a_1", InstanceHom), [true, false, false, false]);
        assert!(InstanceHom.allows(&t("#V_a_1"), &t("#V_a_1")));
        assert_eq!(
            expect("#V_a_1", EqualityRewrite),
            [true, false, true, false]
        );
    }

    #[test]
    fn compose_with_identity() {
        let s = sub(
            RuleSet::InstanceHom,
            &[("#E_c_1", "#V_c_1"), ("#N_a_1", "5")],
        );
        let id = Substitution::identity(RuleSet::InstanceHom);
        assert_eq!(Substitution::compose(&id, &s).unwrap(), s);
    }

    #[test]
    fn compose_chains_existential_into_constant() {
        let inner = sub(RuleSet::InstanceHom, &[("#E_c_1", "#V_c_1")]);
        let outer = sub(RuleSet::InstanceHom, &[("#V_c_1", "'Math'")]);
        let c = Substitution::compose(&outer, &inner).unwrap();
        assert_eq!(
            c,
            sub(
                RuleSet::InstanceHom,
                &[("#E_c_1", "'Math'"), ("#V_c_1", "'Math'")]
            )
        );
    }

    #[test]
    fn compose_chains_nulls() {
        let inner = sub(RuleSet::InstanceHom, &[("#N_a_1", "#N_b_1")]);
        let outer = sub(RuleSet::InstanceHom, &[("#N_b_1", "5")]);
        let c = Substitution::compose(&outer, &inner).unwrap();
        assert_eq!(c.get(&t("#N_a_1")), Some(&t("5")));
    }

    #[test]
    fn compose_rejects_mixed_rule_sets() {
        let a = Substitution::identity(RuleSet::InstanceHom);
        let b = Substitution::identity(RuleSet::BodyHom);
        assert!(Substitution::compose(&a, &b).is_err());
    }

    #[test]
    fn renders_sorted_pairs() {
        let s = sub(RuleSet::BodyHom, &[("#V_b_1", "'x'"), ("#V_a_1", "3")]);
        assert_eq!(s.to_string(), "{#V_a_1 -> 3, #V_b_1 -> 'x'}");
    }

    fn arb_rewrite_pair() -> impl Strategy<Value = (Term, Term)> {
        let null = (0u32..3).prop_map(|i| Term::null("n", i + 1));
        let evar = (0u32..3).prop_map(|i| Term::existential("e", i + 1));
        let uvar = (0u32..3).prop_map(|i| Term::universal("v", i + 1));
        let konst = (0i64..3).prop_map(Term::int);
        prop_oneof![
            (null.clone(), prop_oneof![null, konst.clone()]),
            (evar.clone(), prop_oneof![evar, uvar.clone(), konst.clone()]),
            (uvar.clone(), prop_oneof![uvar, konst]),
        ]
    }

    proptest! {
        /// Pointwise oracle: (outer ∘ inner)(t) == outer(inner(t)).
        #[test]
        fn compose_is_pointwise(
            inner in proptest::collection::vec(arb_rewrite_pair(), 0..4),
            outer in proptest::collection::vec(arb_rewrite_pair(), 0..4),
        ) {
            let rs = RuleSet::EqualityRewrite;
            let inner = Substitution::new(rs, inner).unwrap();
            let outer = Substitution::new(rs, outer).unwrap();
            let c = Substitution::compose(&outer, &inner).unwrap();
            let probes = inner.iter().chain(outer.iter())
                .flat_map(|(a, b)| [a.clone(), b.clone()])
                .chain([Term::int(9), Term::universal("z", 1)]);
            for p in probes {
                let expected = outer.apply_term(&inner.apply_term(&p).unwrap()).unwrap();
                prop_assert_eq!(c.apply_term(&p).unwrap(), expected);
            }
        }

        #[test]
        fn instance_hom_never_moves_constants_or_renames_universals(
            pairs in proptest::collection::vec((super::super::term::tests::arb_term(), super::super::term::tests::arb_term()), 0..6)
        ) {
            let mut s = Substitution::identity(RuleSet::InstanceHom);
            for (from, to) in pairs {
                let _ = s.insert(from, to);
            }
            for (from, to) in s.iter() {
                match from {
                    Term::Const(_) => prop_assert_eq!(from, to),
                    Term::Universal(_) => prop_assert!(to.is_constant() || from == to),
                    _ => {}
                }
            }
        }
    }
}
