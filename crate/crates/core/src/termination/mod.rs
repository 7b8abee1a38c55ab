//! Constraint validation and sufficient conditions for chase termination.
//!
//! All criteria look for a cycle through a special edge in a graph over
//! relation positions:
//!
//! * `Weak`: edges from the body positions of every variable copied to the
//!   head; special edges lead into the positions of head ∃-variables.
//! * `Rich`: as `Weak`, but every body variable gets special edges, copied or not.
//! * `Safe`: the weak graph restricted to variables whose body positions are
//!   all *affected*, i.e. may hold a chase-generated null.
//! * `Rewriting`: safety of the adorned rewriting (see [`adornment`]).
//! * `RewritingEgd`: as `Rewriting`, plus edges between positions that an egd
//!   may equate.
//!
//! On every input `Rich ⟹ Weak ⟹ Safe ⟹ Rewriting`, since each graph is a
//! subgraph (up to the adorned renaming) of the one before.

pub mod adornment;
mod graph;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::model::{Dependency, Schema};

pub use graph::{
    affected_positions, build_position_graph, safety_graph, Edge, GraphVariant, Position,
    PositionGraph,
};

/// Printed when [`validate_constraints`] finds nothing.
pub const CONSTRAINTS_OK: &str = "Constraints are defined correctly.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Criterion {
    Rich,
    Weak,
    Safe,
    Rewriting,
    RewritingEgd,
}

impl Criterion {
    pub const ALL: [Criterion; 5] = [
        Criterion::Rich,
        Criterion::Weak,
        Criterion::Safe,
        Criterion::Rewriting,
        Criterion::RewritingEgd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Rich => "rich",
            Criterion::Weak => "weak",
            Criterion::Safe => "safe",
            Criterion::Rewriting => "rewriting",
            Criterion::RewritingEgd => "rewriting-egd",
        }
    }

    fn explanation(self, terminates: bool) -> String {
        let (subject, property, chase) = match self {
            Criterion::Rich => ("tgds are", "richly acyclic", "Standard Chase"),
            Criterion::Weak => ("tgds are", "weakly acyclic", "Standard Chase"),
            Criterion::Safe => ("tgds are", "safe", "Standard Chase"),
            Criterion::Rewriting => (
                "Constraint rewriting shows that tgds are",
                "acyclic",
                "Chase",
            ),
            Criterion::RewritingEgd => (
                "Constraint rewriting shows that tgds/egds are",
                "acyclic",
                "Chase",
            ),
        };
        if terminates {
            format!("{subject} {property} -> {chase} will definitely terminate.")
        } else {
            format!("{subject} not {property} -> {chase} might not terminate.")
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Criterion {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Criterion::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                format!("unknown criterion {s:?} (expected rich, weak, safe, rewriting or rewriting-egd)")
            })
    }
}

/// Outcome of one termination check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub criterion: Criterion,
    pub terminates: bool,
    pub explanation: String,
}

/// Runs one criterion. An empty dependency set is vacuously acyclic.
pub fn check_termination(sigma: &[Dependency], criterion: Criterion) -> Verdict {
    if sigma.is_empty() {
        return Verdict {
            criterion,
            terminates: true,
            explanation: format!(
                "no dependencies are vacuously acyclic ({criterion}) -> Chase will definitely terminate."
            ),
        };
    }
    let terminates = !match criterion {
        Criterion::Rich => build_position_graph(sigma, GraphVariant::Rich).has_special_cycle(),
        Criterion::Weak => build_position_graph(sigma, GraphVariant::Weak).has_special_cycle(),
        Criterion::Safe => safety_graph(sigma).has_special_cycle(),
        Criterion::Rewriting => rewriting_graph(sigma, false).has_special_cycle(),
        Criterion::RewritingEgd => rewriting_graph(sigma, true).has_special_cycle(),
    };
    Verdict {
        criterion,
        terminates,
        explanation: criterion.explanation(terminates),
    }
}

/// Safety graph of the adorned tgds, optionally with egd edges.
pub fn rewriting_graph(sigma: &[Dependency], with_egds: bool) -> PositionGraph {
    let program = adornment::adorn(sigma);
    let mut g = safety_graph(&program.tgds);
    if with_egds {
        let affected = affected_positions(&program.tgds);
        let extra = adornment::egd_edges(sigma, &program, &affected);
        g.nodes.extend(extra.nodes);
        g.regular.extend(extra.regular);
    }
    g
}

pub type Diagnostic = String;

/// Checks every dependency against its invariants and the schema.
/// An empty result means the constraints are well formed.
pub fn validate_constraints(sigma: &[Dependency], schema: &Schema) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut ids = BTreeSet::new();
    for d in sigma {
        if !ids.insert(d.id.as_str()) {
            out.push(format!("{}: duplicate dependency id", d.id));
        }
        out.extend(d.diagnostics());
        for a in d.body.iter().chain(d.head_atoms()) {
            match schema.arity(&a.relation) {
                None => out.push(format!(
                    "{}: relation {} is not declared in the schema",
                    d.id, a.relation
                )),
                Some(n) if n != a.arity() => out.push(format!(
                    "{}: {} has {} terms but relation {} has arity {}",
                    d.id,
                    a,
                    a.arity(),
                    a.relation,
                    n
                )),
                Some(_) => {}
            }
        }
    }
    out
}
