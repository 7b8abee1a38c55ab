use std::collections::BTreeSet;
use std::fmt;

use super::atom::write_terms;
use super::dependency::write_atoms;
use super::{Atom, GeneralizedInstance, ObjectKind, Schema, Substitution, Term};
use crate::error::{Error, Result};

/// Relation name carried by query head atoms. It is not a valid identifier,
/// so it never clashes with a schema relation.
pub const ANSWER_RELATION: &str = "_ans";

/// A conjunctive query `body -> (head terms)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Query {
    pub body: Vec<Atom>,
    pub head: Atom,
}

impl Query {
    pub fn new(body: Vec<Atom>, head_terms: Vec<Term>) -> Result<Self> {
        let q = Query {
            body,
            head: Atom::new(ANSWER_RELATION, head_terms),
        };
        q.check()?;
        Ok(q)
    }

    fn check(&self) -> Result<()> {
        if self.body.is_empty() {
            return Err(Error::InvalidQuery("query body is empty".into()));
        }
        if let Some(t) = self
            .body
            .iter()
            .flat_map(|a| &a.terms)
            .find(|t| matches!(t, Term::Null(_)))
        {
            return Err(Error::IllegalTerm {
                term: t.clone(),
                context: "a query",
            });
        }
        let body_vars: BTreeSet<&Term> = self.body.iter().flat_map(|a| &a.terms).collect();
        for t in &self.head.terms {
            match t {
                Term::Const(_) => {}
                Term::Universal(_) if body_vars.contains(t) => {}
                Term::Universal(_) => {
                    return Err(Error::InvalidQuery(format!(
                        "head variable {t} does not occur in the body"
                    )))
                }
                _ => {
                    return Err(Error::IllegalTerm {
                        term: t.clone(),
                        context: "a query head",
                    })
                }
            }
        }
        Ok(())
    }

    pub fn head_terms(&self) -> &[Term] {
        &self.head.terms
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_atoms(f, &self.body)?;
        f.write_str(" -> (")?;
        write_terms(f, &self.head.terms)?;
        f.write_str(")")
    }
}

/// Turns a query body into a frozen instance. Variables are kept as they are.
pub fn freeze_query(q: &Query, schema: &Schema) -> Result<(GeneralizedInstance, Atom)> {
    for a in &q.body {
        match schema.arity(&a.relation) {
            Some(n) if n == a.arity() => {}
            expected => {
                return Err(Error::SchemaMismatch {
                    relation: a.relation.clone(),
                    expected,
                    found: a.arity(),
                })
            }
        }
    }
    let frozen = GeneralizedInstance::new(ObjectKind::Query, q.body.iter().cloned())?;
    Ok((frozen, q.head.clone()))
}

/// Rebuilds a query from a chased frozen instance. The body is sorted by
/// relation name and rendered terms; the head is rewritten by `acc`.
pub fn unfreeze_query(i: &GeneralizedInstance, head: &Atom, acc: &Substitution) -> Result<Query> {
    if i.kind() != ObjectKind::Query {
        return Err(Error::InvalidQuery(
            "cannot unfreeze an instance object".into(),
        ));
    }
    let new_head = acc.apply(head)?;
    for (before, after) in head.terms.iter().zip(&new_head.terms) {
        if matches!(after, Term::Existential(_) | Term::Null(_)) {
            return Err(Error::RuleViolation {
                from: before.clone(),
                to: after.clone(),
                rule_set: acc.rule_set(),
            });
        }
    }
    Ok(Query {
        body: i.sorted_for_display(),
        head: new_head,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom;
    use crate::model::{RelationSchema, RuleSet};

    fn schema() -> Schema {
        Schema::new(vec![RelationSchema::new(
            "student",
            &["id", "name", "course"],
        )])
    }

    fn t(s: &str) -> Term {
        s.parse().unwrap()
    }

    #[test]
    fn freezes_single_student_query() {
        let q = Query::new(
            vec![atom!(student("#E_id_1", "#V_name_1", "'Math'"))],
            vec![t("#V_name_1")],
        )
        .unwrap();
        let (frozen, head) = freeze_query(&q, &schema()).unwrap();
        assert_eq!(frozen.kind(), ObjectKind::Query);
        assert_eq!(
            frozen.atoms().cloned().collect::<Vec<_>>(),
            vec![atom!(student("#E_id_1", "#V_name_1", "'Math'"))]
        );
        assert_eq!(head.terms, vec![t("#V_name_1")]);
    }

    #[test]
    fn ground_query_freezes_to_one_atom() {
        let q = Query::new(vec![atom!(student("1", "'A'", "'B'"))], vec![t("1")]).unwrap();
        let (frozen, _) = freeze_query(&q, &schema()).unwrap();
        assert_eq!(frozen.len(), 1);
    }

    #[test]
    fn freezes_two_atoms_sharing_a_variable() {
        let q = Query::new(
            vec![
                atom!(student("#V_id_1", "#V_name_1", "#E_course_1")),
                atom!(student("#E_id_1", "#V_name_1", "#V_course_1")),
            ],
            vec![t("#V_id_1"), t("#V_name_1"), t("#V_course_1")],
        )
        .unwrap();
        let (frozen, _) = freeze_query(&q, &schema()).unwrap();
        assert_eq!(frozen.len(), 2);
        assert!(frozen.atoms().all(|a| a.terms[1] == t("#V_name_1")));
    }

    #[test]
    fn arity_mismatch_is_reported() {
        let q = Query::new(vec![atom!(student("1", "2"))], vec![]).unwrap();
        assert!(matches!(
            freeze_query(&q, &schema()),
            Err(Error::SchemaMismatch { .. })
        ));
    }

    #[test]
    fn head_must_not_hold_existentials() {
        let r = Query::new(vec![atom!(student("#E_a_1", "1", "2"))], vec![t("#E_a_1")]);
        assert!(r.is_err());
        let r = Query::new(vec![atom!(student("1", "1", "2"))], vec![t("#V_a_1")]);
        assert!(r.is_err());
    }

    #[test]
    fn unfreeze_with_identity() {
        let i = GeneralizedInstance::new(
            ObjectKind::Query,
            [atom!(student("#V_id_1", "#V_name_1", "'Math'"))],
        )
        .unwrap();
        let head = Atom::new(ANSWER_RELATION, vec![t("#V_name_1")]);
        let q =
            unfreeze_query(&i, &head, &Substitution::identity(RuleSet::EqualityRewrite)).unwrap();
        assert_eq!(
            q.to_string(),
            "student(#V_id_1,#V_name_1,'Math') -> (#V_name_1)"
        );
    }

    #[test]
    fn unfreeze_rewrites_head_through_accumulator() {
        let i = GeneralizedInstance::new(
            ObjectKind::Query,
            [atom!(student("#V_id_1", "#V_name_1", "#V_c_1"))],
        )
        .unwrap();
        let head = Atom::new(ANSWER_RELATION, vec![t("#V_name_1")]);
        let acc =
            Substitution::new(RuleSet::EqualityRewrite, [(t("#E_c_1"), t("#V_c_1"))]).unwrap();
        let q = unfreeze_query(&i, &head, &acc).unwrap();
        assert_eq!(q.head, head);

        let acc =
            Substitution::new(RuleSet::EqualityRewrite, [(t("#V_name_1"), t("'Max'"))]).unwrap();
        let q = unfreeze_query(&i, &head, &acc).unwrap();
        assert_eq!(q.head_terms(), &[t("'Max'")]);
    }

    #[test]
    fn unfreeze_refuses_existential_in_head() {
        let i =
            GeneralizedInstance::new(ObjectKind::Query, [atom!(student("1", "2", "3"))]).unwrap();
        let head = Atom::new(ANSWER_RELATION, vec![t("#V_a_1")]);
        let acc = Substitution::new(RuleSet::HeadHom, [(t("#V_a_1"), t("#E_b_1"))]).unwrap();
        assert!(matches!(
            unfreeze_query(&i, &head, &acc),
            Err(Error::RuleViolation { .. })
        ));
    }
}
