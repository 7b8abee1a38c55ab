//! The standard chase over generalized instances.
//!
//! Each iteration scans the dependencies in input order, enumerates their
//! triggers in [`find_triggers`] order and applies the first active one.
//! The run stops at a fixpoint (a full scan finds no active trigger), on an
//! egd conflict between two different constants, or after `max_steps` steps.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::homomorphism::{find_triggers, is_active_trigger, Trigger};
use crate::model::{
    freeze_query, unfreeze_query, Atom, Dependency, FreshRegistry, GeneralizedInstance, Head,
    ObjectKind, Query, RuleSet, Schema, Substitution, Term, TermKind,
};

/// Step budget used when the caller does not pick one.
pub const DEFAULT_MAX_STEPS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChaseStatus {
    Fixpoint,
    /// An egd equated two different constants of an instance.
    FailedBottom,
    /// An egd equated two different constants of a query.
    EmptyQuery,
    StepLimit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LogAction {
    AddedAtoms(Vec<Atom>),
    Substituted { from: Term, to: Term },
    Conflict { left: Term, right: Term },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogEntry {
    pub step: usize,
    pub dependency: String,
    pub binding: Substitution,
    pub action: LogAction,
}

/// Ordered record of the steps of one run. Step numbers start at 1.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StepLog {
    entries: Vec<LogEntry>,
}

impl StepLog {
    pub fn entries(&self) -> &[LogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn push(&mut self, dependency: &str, binding: &Substitution, action: LogAction) {
        self.entries.push(LogEntry {
            step: self.entries.len() + 1,
            dependency: dependency.to_string(),
            binding: binding.clone(),
            action,
        });
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChaseOutcome {
    pub status: ChaseStatus,
    /// The object when the run stopped (before the failing step on a conflict).
    pub instance: GeneralizedInstance,
    /// Rebuilt query, for a query object that reached a fixpoint.
    pub query: Option<Query>,
    /// Composition of all egd substitutions of the run.
    pub accumulated: Substitution,
    pub log: StepLog,
    /// Relations read by s-t tgds and written by no dependency.
    pub source_relations: BTreeSet<String>,
}

impl ChaseOutcome {
    pub fn steps(&self) -> usize {
        self.log.len()
    }

    /// The instance without its source relations: the solution of a
    /// data-exchange setting. Equal to `instance` when there are no s-t tgds.
    pub fn target(&self) -> GeneralizedInstance {
        let mut out = GeneralizedInstance::empty(self.instance.kind());
        for a in self.instance.atoms() {
            if !self.source_relations.contains(&a.relation) {
                out.insert(a.clone()).expect("same kind");
            }
        }
        out
    }
}

/// Relations occurring in s-t tgd bodies but in no dependency head.
pub fn source_relations(sigma: &[Dependency]) -> BTreeSet<String> {
    let written: BTreeSet<&str> = sigma
        .iter()
        .flat_map(|d| d.head_atoms())
        .map(|a| a.relation.as_str())
        .collect();
    sigma
        .iter()
        .filter(|d| d.source_target)
        .flat_map(|d| &d.body)
        .filter(|a| !written.contains(a.relation.as_str()))
        .map(|a| a.relation.clone())
        .collect()
}

/// Result of a single egd step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EgdStep {
    Rewritten(GeneralizedInstance, Substitution),
    Bottom,
    Empty,
}

fn inactive(d: &Dependency) -> Error {
    Error::InactiveTrigger {
        dependency: d.id.clone(),
    }
}

/// Fires a tgd: head ∃-variables get fresh nulls (instances) or fresh
/// ∃-variables (queries), then the instantiated head atoms are added.
pub fn apply_tgd_step(
    i: &GeneralizedInstance,
    d: &Dependency,
    t: &Trigger,
    registry: &mut FreshRegistry,
) -> Result<GeneralizedInstance> {
    tgd_step(i, d, t, registry).map(|(next, _)| next)
}

fn tgd_step(
    i: &GeneralizedInstance,
    d: &Dependency,
    t: &Trigger,
    registry: &mut FreshRegistry,
) -> Result<(GeneralizedInstance, Vec<Atom>)> {
    let Head::Atoms(head) = &d.head else {
        return Err(inactive(d));
    };
    if !is_active_trigger(t, d, i) {
        return Err(inactive(d));
    }
    let fresh_kind = match i.kind() {
        ObjectKind::Instance => TermKind::Null,
        ObjectKind::Query => TermKind::ExistentialVar,
    };
    let mut extension = Substitution::new(
        RuleSet::HeadHom,
        t.binding.iter().map(|(a, b)| (a.clone(), b.clone())),
    )?;
    for y in d.existential_vars() {
        let label = &y.name().expect("existential variable").label;
        extension.insert(y.clone(), registry.fresh(fresh_kind, label))?;
    }
    let mut next = i.clone();
    let mut added = Vec::with_capacity(head.len());
    for atom in head {
        let image = extension.apply(atom)?;
        next.insert(image.clone())?;
        added.push(image);
    }
    Ok((next, added))
}

/// Which of two distinct terms an egd keeps: constants over ∀-variables over
/// ∃-variables over nulls; within a kind the smaller label/index wins.
fn survivor<'t>(u: &'t Term, v: &'t Term) -> (&'t Term, &'t Term) {
    let u_wins = match u.survivor_rank().cmp(&v.survivor_rank()) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => u.name() <= v.name(),
    };
    if u_wins {
        (u, v)
    } else {
        (v, u)
    }
}

/// Fires an egd: replaces the losing term everywhere, or fails when both
/// images are different constants.
pub fn apply_egd_step(i: &GeneralizedInstance, d: &Dependency, t: &Trigger) -> Result<EgdStep> {
    let Head::Equality(l, r) = &d.head else {
        return Err(inactive(d));
    };
    let u = t.binding.get(l).unwrap_or(l);
    let v = t.binding.get(r).unwrap_or(r);
    if u == v {
        return Err(inactive(d));
    }
    if u.is_constant() && v.is_constant() {
        return Ok(match i.kind() {
            ObjectKind::Instance => EgdStep::Bottom,
            ObjectKind::Query => EgdStep::Empty,
        });
    }
    let (keep, drop) = survivor(u, v);
    let s = Substitution::new(RuleSet::EqualityRewrite, [(drop.clone(), keep.clone())])?;
    Ok(EgdStep::Rewritten(i.substitute(&s)?, s))
}

fn first_active(sigma: &[Dependency], i: &GeneralizedInstance) -> Option<(usize, Trigger)> {
    sigma.iter().enumerate().find_map(|(n, d)| {
        find_triggers(d, i)
            .into_iter()
            .find(|t| is_active_trigger(t, d, i))
            .map(|t| (n, t))
    })
}

fn validate(sigma: &[Dependency]) -> Result<()> {
    let problems: Vec<String> = sigma.iter().flat_map(Dependency::diagnostics).collect();
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Error::Validation(problems))
    }
}

/// Chases `i0` with `sigma`.
pub fn chase(
    sigma: &[Dependency],
    i0: &GeneralizedInstance,
    max_steps: usize,
) -> Result<ChaseOutcome> {
    run(sigma, i0, None, max_steps)
}

/// Freezes `q`, chases it and rebuilds the resulting query.
pub fn chase_query(
    sigma: &[Dependency],
    q: &Query,
    schema: &Schema,
    max_steps: usize,
) -> Result<ChaseOutcome> {
    let (frozen, head) = freeze_query(q, schema)?;
    run(sigma, &frozen, Some(&head), max_steps)
}

/// Chase loop. `head` is the stored query head when `i0` is a frozen query.
pub fn run(
    sigma: &[Dependency],
    i0: &GeneralizedInstance,
    head: Option<&Atom>,
    max_steps: usize,
) -> Result<ChaseOutcome> {
    validate(sigma)?;
    let mut registry = FreshRegistry::scanning(i0.terms());
    if let Some(h) = head {
        registry.observe(&h.terms);
    }
    let mut current = i0.clone();
    let mut accumulated = Substitution::identity(RuleSet::EqualityRewrite);
    let mut log = StepLog::default();

    let status = loop {
        let Some((n, trigger)) = first_active(sigma, &current) else {
            break ChaseStatus::Fixpoint;
        };
        if log.len() >= max_steps {
            break ChaseStatus::StepLimit;
        }
        let d = &sigma[n];
        match &d.head {
            Head::Atoms(_) => {
                let (next, added) = tgd_step(&current, d, &trigger, &mut registry)?;
                log.push(&d.id, &trigger.binding, LogAction::AddedAtoms(added));
                current = next;
            }
            Head::Equality(..) => match apply_egd_step(&current, d, &trigger)? {
                EgdStep::Rewritten(next, s) => {
                    let (from, to) = s.iter().next().expect("one pair");
                    log.push(
                        &d.id,
                        &trigger.binding,
                        LogAction::Substituted {
                            from: from.clone(),
                            to: to.clone(),
                        },
                    );
                    accumulated = Substitution::compose(&s, &accumulated)?;
                    current = next;
                }
                failed => {
                    let (l, r) = match &d.head {
                        Head::Equality(l, r) => (l, r),
                        Head::Atoms(_) => unreachable!(),
                    };
                    let image = |t: &Term| trigger.binding.get(t).unwrap_or(t).clone();
                    log.push(
                        &d.id,
                        &trigger.binding,
                        LogAction::Conflict {
                            left: image(l),
                            right: image(r),
                        },
                    );
                    break if failed == EgdStep::Bottom {
                        ChaseStatus::FailedBottom
                    } else {
                        ChaseStatus::EmptyQuery
                    };
                }
            },
        }
    };

    let query = match (status, head) {
        (ChaseStatus::Fixpoint, Some(h)) if current.kind() == ObjectKind::Query => {
            Some(unfreeze_query(&current, h, &accumulated)?)
        }
        _ => None,
    };
    Ok(ChaseOutcome {
        status,
        instance: current,
        query,
        accumulated,
        log,
        source_relations: source_relations(sigma),
    })
}

/// Re-applies the logged steps to `i0`. Stops at a conflict entry.
pub fn replay(i0: &GeneralizedInstance, log: &StepLog) -> Result<GeneralizedInstance> {
    let mut current = i0.clone();
    for entry in log.entries() {
        match &entry.action {
            LogAction::AddedAtoms(atoms) => {
                for a in atoms {
                    current.insert(a.clone())?;
                }
            }
            LogAction::Substituted { from, to } => {
                let s = Substitution::new(RuleSet::EqualityRewrite, [(from.clone(), to.clone())])?;
                current = current.substitute(&s)?;
            }
            LogAction::Conflict { .. } => break,
        }
    }
    Ok(current)
}
