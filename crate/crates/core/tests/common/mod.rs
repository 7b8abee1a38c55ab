//! Seeded generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use genchase::model::{Atom, Dependency, GeneralizedInstance, Head, ObjectKind, Term};
use genchase::termination::{check_termination, Criterion};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Assignment = BTreeMap<Term, Term>;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub const RELATIONS: [(&str, usize); 4] = [("R", 2), ("S", 2), ("T", 1), ("U", 3)];

fn v(name: &str) -> Term {
    Term::universal(name, 1)
}

fn image(a: &Assignment, t: &Term) -> Term {
    a.get(t).cloned().unwrap_or_else(|| t.clone())
}

fn image_atom(a: &Assignment, atom: &Atom) -> Atom {
    Atom::new(
        atom.relation.clone(),
        atom.terms.iter().map(|t| image(a, t)).collect(),
    )
}

/// Every total map from `vars` into `domain`.
pub fn assignments(vars: &[Term], domain: &[Term]) -> Vec<Assignment> {
    let mut out = vec![Assignment::new()];
    for x in vars {
        out = out
            .into_iter()
            .flat_map(|a| {
                domain.iter().map(move |d| {
                    let mut next = a.clone();
                    next.insert(x.clone(), d.clone());
                    next
                })
            })
            .collect();
    }
    out
}

fn distinct<'a>(terms: impl Iterator<Item = &'a Term>, keep: impl Fn(&Term) -> bool) -> Vec<Term> {
    terms
        .filter(|t| keep(t))
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Bindings of the body variables that send every body atom into `i`,
/// found by trying every assignment over the active domain.
pub fn brute_triggers(body: &[Atom], i: &GeneralizedInstance) -> BTreeSet<Assignment> {
    let vars = distinct(body.iter().flat_map(|a| &a.terms), |t| {
        matches!(t, Term::Universal(_))
    });
    let domain = distinct(i.terms(), |_| true);
    assignments(&vars, &domain)
        .into_iter()
        .filter(|a| body.iter().all(|atom| i.contains(&image_atom(a, atom))))
        .collect()
}

/// Whether `i` satisfies `d`, checked by enumeration.
pub fn brute_satisfies(d: &Dependency, i: &GeneralizedInstance) -> bool {
    let domain = distinct(i.terms(), |_| true);
    brute_triggers(&d.body, i)
        .into_iter()
        .all(|a| match &d.head {
            Head::Equality(l, r) => image(&a, l) == image(&a, r),
            Head::Atoms(head) => {
                let ex = distinct(head.iter().flat_map(|h| &h.terms), |t| {
                    matches!(t, Term::Existential(_))
                });
                assignments(&ex, &domain).into_iter().any(|e| {
                    let mut full = a.clone();
                    full.extend(e);
                    head.iter().all(|h| i.contains(&image_atom(&full, h)))
                })
            }
        })
}

fn random_atom(rng: &mut ChaCha8Rng, pick: &mut dyn FnMut(&mut ChaCha8Rng) -> Term) -> Atom {
    let (rel, arity) = RELATIONS[rng.gen_range(0..RELATIONS.len())];
    Atom::new(rel, (0..arity).map(|_| pick(rng)).collect())
}

/// Up to `max_atoms` atoms. Query objects use variables where instances use nulls.
pub fn random_object(
    rng: &mut ChaCha8Rng,
    kind: ObjectKind,
    max_atoms: usize,
) -> GeneralizedInstance {
    let n = rng.gen_range(0..=max_atoms);
    let mut pick = |rng: &mut ChaCha8Rng| match (rng.gen_range(0..5), kind) {
        (0..=2, _) => Term::int(rng.gen_range(1..=3)),
        (3, ObjectKind::Instance) => Term::null("n", rng.gen_range(1..=2)),
        (_, ObjectKind::Instance) => Term::null("m", 1),
        (3, ObjectKind::Query) => Term::universal("a", rng.gen_range(1..=2)),
        (_, ObjectKind::Query) => Term::existential("b", 1),
    };
    let atoms: Vec<Atom> = (0..n).map(|_| random_atom(rng, &mut pick)).collect();
    GeneralizedInstance::new(kind, atoms).expect("generated terms fit the kind")
}

/// A body of 1..=`max_atoms` atoms over variables x, y, z and the odd constant.
pub fn random_body(rng: &mut ChaCha8Rng, max_atoms: usize) -> Vec<Atom> {
    let n = rng.gen_range(1..=max_atoms);
    let mut pick = |rng: &mut ChaCha8Rng| match rng.gen_range(0..7) {
        0 => Term::int(rng.gen_range(1..=3)),
        k => v(["x", "y", "z"][k % 3]),
    };
    (0..n).map(|_| random_atom(rng, &mut pick)).collect()
}

fn body_vars(body: &[Atom]) -> Vec<Term> {
    distinct(body.iter().flat_map(|a| &a.terms), |t| t.is_variable())
}

/// A tgd whose head reuses body variables and sometimes invents `#E_w_1`.
pub fn random_tgd(
    rng: &mut ChaCha8Rng,
    id: String,
    max_body: usize,
    max_head: usize,
) -> Dependency {
    let body = random_body(rng, max_body);
    let vars = body_vars(&body);
    let n = rng.gen_range(1..=max_head);
    let mut pick = |rng: &mut ChaCha8Rng| {
        if vars.is_empty() || rng.gen_bool(0.25) {
            Term::existential("w", 1)
        } else {
            vars.choose(rng).unwrap().clone()
        }
    };
    let head = (0..n).map(|_| random_atom(rng, &mut pick)).collect();
    Dependency::tgd(id, body, head)
}

/// An egd equating two body variables, or a variable with a constant.
pub fn random_egd(rng: &mut ChaCha8Rng, id: String) -> Dependency {
    loop {
        let body = random_body(rng, 2);
        let vars = body_vars(&body);
        if vars.is_empty() {
            continue;
        }
        let l = vars.choose(rng).unwrap().clone();
        let r = if rng.gen_bool(0.2) {
            Term::int(rng.gen_range(1..=3))
        } else {
            vars.choose(rng).unwrap().clone()
        };
        if l != r {
            return Dependency::egd(id, body, l, r);
        }
    }
}

/// A weakly acyclic set of 1..=3 tgds and at most one egd.
pub fn random_terminating_sigma(rng: &mut ChaCha8Rng) -> Vec<Dependency> {
    loop {
        let n = rng.gen_range(1..=3);
        let mut sigma: Vec<Dependency> = (0..n)
            .map(|k| random_tgd(rng, format!("t{}", k + 1), 2, 2))
            .collect();
        if rng.gen_bool(0.4) {
            sigma.push(random_egd(rng, "e1".into()));
        }
        if check_termination(&sigma, Criterion::Weak).terminates {
            return sigma;
        }
    }
}
