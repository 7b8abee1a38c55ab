use thiserror::Error;

use crate::model::{RuleSet, Term};

/// Errors raised by the model, chase and parser.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("substitution {from} -> {to} is not allowed under {rule_set:?}")]
    RuleViolation {
        from: Term,
        to: Term,
        rule_set: RuleSet,
    },

    #[error("cannot compose substitutions with rule sets {outer:?} and {inner:?}")]
    IncompatibleRuleSets { outer: RuleSet, inner: RuleSet },

    #[error("relation {relation} {}", match .expected { Some(n) => format!("expects {n} terms, found {}", .found), None => "is not declared in the schema".to_string() })]
    SchemaMismatch {
        relation: String,
        expected: Option<usize>,
        found: usize,
    },

    #[error("syntax error: {0}")]
    Syntax(String),

    #[error("section {0} appears twice")]
    DuplicateSection(String),

    #[error("a problem holds either an [instance] or a [query], not both")]
    MixedObject,

    #[error("{line}:{column}: {source}")]
    Located {
        line: usize,
        column: usize,
        source: Box<Error>,
    },

    #[error("problem has neither an [instance] nor a [query] section")]
    MissingObject,

    #[error("term {term} is not allowed in {context}")]
    IllegalTerm { term: Term, context: &'static str },

    #[error("trigger for {dependency} is not active")]
    InactiveTrigger { dependency: String },

    #[error("invalid dependencies:\n{}", .0.join("\n"))]
    Validation(Vec<String>),

    #[error("invalid query: {0}")]
    InvalidQuery(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
