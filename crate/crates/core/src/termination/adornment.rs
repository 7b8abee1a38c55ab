//! Adornment-based rewriting of tgds.
//!
//! Every relation position is adorned `b` (bound: only constants from the
//! input can reach it) or `f` (free: may hold a null made up by the chase).
//! Starting from all-bound adornments of the body relations, each tgd is
//! instantiated for every combination of known adornments of its body atoms;
//! head positions get `b` when their term is a constant or a variable bound in
//! that combination, and `f` otherwise. Each instantiation becomes an adorned
//! copy of the tgd over relations named `R^bf..`. Splitting relations this
//! way can break cycles that exist only between positions which never carry
//! nulls at the same time.

use std::collections::{BTreeMap, BTreeSet};

use super::graph::{Position, PositionGraph, TgdPositions};
use crate::model::{Atom, Dependency, Head, Term};

pub type Adornment = String;

/// Adorned tgds plus the adornments reached for each relation.
#[derive(Debug, Clone, Default)]
pub struct AdornedProgram {
    pub tgds: Vec<Dependency>,
    pub adornments: BTreeMap<String, BTreeSet<Adornment>>,
}

pub fn adorned_name(relation: &str, adornment: &str) -> String {
    format!("{relation}^{adornment}")
}

fn rename(atom: &Atom, adornment: &str) -> Atom {
    Atom::new(adorned_name(&atom.relation, adornment), atom.terms.clone())
}

/// Variables occurring in at least one `b` position of the body combination.
fn bound_vars<'a>(body: &'a [Atom], combo: &[&Adornment]) -> BTreeSet<&'a Term> {
    body.iter()
        .zip(combo)
        .flat_map(|(a, ad)| a.terms.iter().zip(ad.chars()))
        .filter(|(t, c)| *c == 'b' && t.is_variable())
        .map(|(t, _)| t)
        .collect()
}

fn head_adornment(atom: &Atom, bound: &BTreeSet<&Term>) -> Adornment {
    atom.terms
        .iter()
        .map(|t| {
            if t.is_constant() || bound.contains(t) {
                'b'
            } else {
                'f'
            }
        })
        .collect()
}

/// Every combination of known adornments for the atoms of `body`.
fn combinations<'a>(
    body: &[Atom],
    known: &'a BTreeMap<String, BTreeSet<Adornment>>,
) -> Vec<Vec<&'a Adornment>> {
    let mut combos: Vec<Vec<&Adornment>> = vec![Vec::new()];
    for atom in body {
        let Some(options) = known.get(&atom.relation) else {
            return Vec::new();
        };
        let options: Vec<&Adornment> = options
            .iter()
            .filter(|ad| ad.len() == atom.arity())
            .collect();
        combos = combos
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |ad| {
                    let mut next = prefix.clone();
                    next.push(*ad);
                    next
                })
            })
            .collect();
    }
    combos
}

/// Computes the adorned copies of the tgds in `sigma` (egds are skipped).
pub fn adorn(sigma: &[Dependency]) -> AdornedProgram {
    let tgds: Vec<&Dependency> = sigma.iter().filter(|d| d.is_tgd()).collect();
    let mut known: BTreeMap<String, BTreeSet<Adornment>> = BTreeMap::new();
    for d in &tgds {
        for a in &d.body {
            known
                .entry(a.relation.clone())
                .or_default()
                .insert("b".repeat(a.arity()));
        }
    }
    let mut done: BTreeSet<(usize, Vec<Adornment>)> = BTreeSet::new();
    let mut out = Vec::new();
    loop {
        let mut discovered: Vec<(String, Adornment)> = Vec::new();
        for (n, d) in tgds.iter().enumerate() {
            for combo in combinations(&d.body, &known) {
                let key = (n, combo.iter().map(|s| (*s).clone()).collect::<Vec<_>>());
                if done.contains(&key) {
                    continue;
                }
                let bound = bound_vars(&d.body, &combo);
                let body: Vec<Atom> = d
                    .body
                    .iter()
                    .zip(&combo)
                    .map(|(a, ad)| rename(a, ad))
                    .collect();
                let head: Vec<Atom> = d
                    .head_atoms()
                    .iter()
                    .map(|a| {
                        let ad = head_adornment(a, &bound);
                        discovered.push((a.relation.clone(), ad.clone()));
                        rename(a, &ad)
                    })
                    .collect();
                out.push(Dependency {
                    id: format!("{}^{}", d.id, key.1.join(".")),
                    body,
                    head: Head::Atoms(head),
                    source_target: d.source_target,
                });
                done.insert(key);
            }
        }
        let mut grew = false;
        for (rel, ad) in discovered {
            grew |= known.entry(rel).or_default().insert(ad);
        }
        if !grew {
            return AdornedProgram {
                tgds: out,
                adornments: known,
            };
        }
    }
}

/// Regular edges induced by egds over the adorned relations: whenever both
/// equated variables are free in some adornment of the egd body, values may
/// move between their positions in either direction.
pub fn egd_edges(
    sigma: &[Dependency],
    program: &AdornedProgram,
    affected: &BTreeSet<Position>,
) -> PositionGraph {
    let mut g = PositionGraph::default();
    for d in sigma {
        let Head::Equality(l, r) = &d.head else {
            continue;
        };
        if !(l.is_variable() && r.is_variable()) {
            continue;
        }
        for combo in combinations(&d.body, &program.adornments) {
            let bound = bound_vars(&d.body, &combo);
            if bound.contains(l) || bound.contains(r) {
                continue;
            }
            let renamed = Dependency {
                id: d.id.clone(),
                body: d
                    .body
                    .iter()
                    .zip(&combo)
                    .map(|(a, ad)| rename(a, ad))
                    .collect(),
                head: Head::Atoms(Vec::new()),
                source_target: false,
            };
            let p = TgdPositions::of(&renamed);
            let (Some(left), Some(right)) = (p.body.get(l), p.body.get(r)) else {
                continue;
            };
            if !left.iter().chain(right).all(|q| affected.contains(q)) {
                continue;
            }
            for a in left {
                for b in right {
                    g.nodes.insert(a.clone());
                    g.nodes.insert(b.clone());
                    g.regular.insert((a.clone(), b.clone()));
                    g.regular.insert((b.clone(), a.clone()));
                }
            }
        }
    }
    g
}
