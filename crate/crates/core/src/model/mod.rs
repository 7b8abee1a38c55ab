//! Terms, atoms, generalized instances, dependencies, queries and substitutions.
//!
//! A [`GeneralizedInstance`] is a set of atoms that stands either for a
//! database instance (constants and labelled nulls) or for the frozen body of
//! a conjunctive query (constants, ∀-variables and ∃-variables). The chase
//! treats both uniformly; only fresh-term generation and the egd failure
//! outcome depend on the [`ObjectKind`].

mod atom;
mod dependency;
mod fresh;
mod instance;
mod query;
mod schema;
mod substitution;
mod term;

pub use atom::{sort_for_display, Atom};
pub use dependency::{Dependency, DependencyKind, Head};
pub use fresh::FreshRegistry;
pub use instance::{GeneralizedInstance, ObjectKind};
pub use query::{freeze_query, unfreeze_query, Query, ANSWER_RELATION};
pub use schema::{RelationSchema, Schema};
pub use substitution::{RuleSet, Substitution};
pub use term::{is_ident, Constant, Name, Term, TermKind, TermParseError};
