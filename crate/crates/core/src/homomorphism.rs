//! Homomorphism search: triggers of a dependency, trigger activeness, and
//! homomorphisms between generalized instances.
//!
//! All searches share one backtracking matcher. Pattern atoms are matched in
//! order against target atoms with the same relation name; a pattern term is
//! either already bound (its image must coincide) or gets bound to the target
//! term when the active [`RuleSet`] allows that replacement.

use std::collections::{BTreeMap, HashMap};

use crate::model::{Atom, Dependency, GeneralizedInstance, Head, RuleSet, Substitution, Term};

/// A body homomorphism of a dependency into an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trigger {
    pub dependency: String,
    pub binding: Substitution,
    /// One instance atom per body atom, in body order.
    pub matched: Vec<Atom>,
}

type Binding = BTreeMap<Term, Term>;

struct Matcher<'a> {
    patterns: &'a [Atom],
    candidates: Vec<Vec<&'a Atom>>,
    rule_set: RuleSet,
}

impl<'a> Matcher<'a> {
    fn new(patterns: &'a [Atom], target: &'a GeneralizedInstance, rule_set: RuleSet) -> Self {
        let mut by_relation: HashMap<&str, Vec<&Atom>> = HashMap::new();
        for a in target.atoms() {
            by_relation.entry(a.relation.as_str()).or_default().push(a);
        }
        let candidates = patterns
            .iter()
            .map(|p| {
                by_relation
                    .get(p.relation.as_str())
                    .map(|atoms| {
                        atoms
                            .iter()
                            .copied()
                            .filter(|a| a.arity() == p.arity())
                            .collect()
                    })
                    .unwrap_or_default()
            })
            .collect();
        Matcher {
            patterns,
            candidates,
            rule_set,
        }
    }

    /// Calls `visit` for every complete match; stops early when it returns `true`.
    /// Returns whether the search was stopped.
    fn run(
        &self,
        binding: &mut Binding,
        matched: &mut Vec<&'a Atom>,
        visit: &mut dyn FnMut(&Binding, &[&'a Atom]) -> bool,
    ) -> bool {
        let depth = matched.len();
        if depth == self.patterns.len() {
            return visit(binding, matched);
        }
        let pattern = &self.patterns[depth];
        for &candidate in &self.candidates[depth] {
            let mut added = Vec::new();
            if self.unify(pattern, candidate, binding, &mut added) {
                matched.push(candidate);
                let stop = self.run(binding, matched, visit);
                matched.pop();
                if stop {
                    return true;
                }
            }
            for t in added {
                binding.remove(&t);
            }
        }
        false
    }

    fn unify(
        &self,
        pattern: &Atom,
        target: &Atom,
        binding: &mut Binding,
        added: &mut Vec<Term>,
    ) -> bool {
        for (p, v) in pattern.terms.iter().zip(&target.terms) {
            match binding.get(p) {
                Some(image) if image == v => {}
                Some(_) => return false,
                None if p.is_constant() => {
                    if p != v {
                        return false;
                    }
                }
                None => {
                    if !self.rule_set.allows(p, v) {
                        return false;
                    }
                    binding.insert(p.clone(), v.clone());
                    added.push(p.clone());
                }
            }
        }
        true
    }
}

/// All triggers of `d` on `i`, ordered by matched atoms (then binding).
pub fn find_triggers(d: &Dependency, i: &GeneralizedInstance) -> Vec<Trigger> {
    let matcher = Matcher::new(&d.body, i, RuleSet::BodyHom);
    let mut found: Vec<(Vec<Atom>, Binding)> = Vec::new();
    matcher.run(&mut Binding::new(), &mut Vec::new(), &mut |b, m| {
        found.push((m.iter().map(|a| (*a).clone()).collect(), b.clone()));
        false
    });
    found.sort();
    found.dedup();
    found
        .into_iter()
        .map(|(matched, binding)| Trigger {
            dependency: d.id.clone(),
            binding: Substitution::from_map_unchecked(RuleSet::BodyHom, binding),
            matched,
        })
        .collect()
}

fn image<'t>(binding: &'t Substitution, t: &'t Term) -> &'t Term {
    binding.get(t).unwrap_or(t)
}

/// A tgd trigger is active when no head homomorphism extends it; an egd
/// trigger is active when the two equated terms have different images.
pub fn is_active_trigger(t: &Trigger, d: &Dependency, i: &GeneralizedInstance) -> bool {
    match &d.head {
        Head::Equality(l, r) => image(&t.binding, l) != image(&t.binding, r),
        Head::Atoms(head) => !extension_exists(&t.binding, head, i),
    }
}

fn extension_exists(binding: &Substitution, head: &[Atom], i: &GeneralizedInstance) -> bool {
    let matcher = Matcher::new(head, i, RuleSet::HeadHom);
    let mut initial: Binding = binding
        .iter()
        .map(|(a, b)| (a.clone(), b.clone()))
        .collect();
    matcher.run(&mut initial, &mut Vec::new(), &mut |_, _| true)
}

/// Active triggers of `d` on `i`, in trigger order.
pub fn active_triggers(d: &Dependency, i: &GeneralizedInstance) -> Vec<Trigger> {
    find_triggers(d, i)
        .into_iter()
        .filter(|t| is_active_trigger(t, d, i))
        .collect()
}

/// Whether some mapping obeying [`RuleSet::InstanceHom`] sends every atom of
/// `a` onto an atom of `b`.
pub fn instance_hom_exists(a: &GeneralizedInstance, b: &GeneralizedInstance) -> bool {
    find_instance_hom(a, b).is_some()
}

/// A witness for [`instance_hom_exists`].
pub fn find_instance_hom(a: &GeneralizedInstance, b: &GeneralizedInstance) -> Option<Substitution> {
    let mut patterns: Vec<Atom> = a.atoms().cloned().collect();
    // Ground atoms first: they either match exactly or fail fast.
    patterns.sort_by_key(|p| p.terms.iter().filter(|t| !t.is_constant()).count());
    let matcher = Matcher::new(&patterns, b, RuleSet::InstanceHom);
    let mut witness = None;
    matcher.run(&mut Binding::new(), &mut Vec::new(), &mut |binding, _| {
        witness = Some(binding.clone());
        true
    });
    witness.map(|w| Substitution::from_map_unchecked(RuleSet::InstanceHom, w))
}
