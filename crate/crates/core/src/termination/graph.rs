use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::model::{Atom, Dependency, Term};

/// A relation attribute, numbered from 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub relation: String,
    pub index: usize,
}

impl Position {
    pub fn new(relation: impl Into<String>, index: usize) -> Self {
        Position {
            relation: relation.into(),
            index,
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.relation, self.index)
    }
}

pub type Edge = (Position, Position);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphVariant {
    Weak,
    Rich,
}

/// Dependency graph over positions with regular and special (null-creating) edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PositionGraph {
    pub nodes: BTreeSet<Position>,
    pub regular: BTreeSet<Edge>,
    pub special: BTreeSet<Edge>,
}

/// Where each variable of a tgd sits.
pub(crate) struct TgdPositions {
    pub body: BTreeMap<Term, Vec<Position>>,
    pub head: BTreeMap<Term, Vec<Position>>,
    pub existential: Vec<Position>,
    pub all: Vec<Position>,
}

fn positions_of(atoms: &[Atom]) -> impl Iterator<Item = (&Term, Position)> {
    atoms.iter().flat_map(|a| {
        a.terms
            .iter()
            .enumerate()
            .map(move |(k, t)| (t, Position::new(a.relation.clone(), k + 1)))
    })
}

impl TgdPositions {
    pub(crate) fn of(d: &Dependency) -> Self {
        let mut p = TgdPositions {
            body: BTreeMap::new(),
            head: BTreeMap::new(),
            existential: Vec::new(),
            all: Vec::new(),
        };
        for (t, pos) in positions_of(&d.body) {
            if matches!(t, Term::Universal(_)) {
                p.body.entry(t.clone()).or_default().push(pos.clone());
            }
            p.all.push(pos);
        }
        for (t, pos) in positions_of(d.head_atoms()) {
            match t {
                Term::Universal(_) => p.head.entry(t.clone()).or_default().push(pos.clone()),
                Term::Existential(_) => p.existential.push(pos.clone()),
                _ => {}
            }
            p.all.push(pos);
        }
        p
    }
}

impl PositionGraph {
    fn add_nodes(&mut self, positions: &[Position]) {
        self.nodes.extend(positions.iter().cloned());
    }

    /// Adds the weak-acyclicity edges of one tgd for the variables accepted by `keep`.
    pub(crate) fn add_weak_edges(&mut self, p: &TgdPositions, keep: &dyn Fn(&[Position]) -> bool) {
        for (x, body_pos) in &p.body {
            let Some(head_pos) = p.head.get(x) else {
                continue;
            };
            if !keep(body_pos) {
                continue;
            }
            for from in body_pos {
                for to in head_pos {
                    self.regular.insert((from.clone(), to.clone()));
                }
                for to in &p.existential {
                    self.special.insert((from.clone(), to.clone()));
                }
            }
        }
    }

    fn add_rich_special_edges(&mut self, p: &TgdPositions) {
        for from in p.body.values().flatten() {
            for to in &p.existential {
                self.special.insert((from.clone(), to.clone()));
            }
        }
    }

    fn to_petgraph(&self) -> (DiGraph<Position, ()>, HashMap<&Position, NodeIndex>) {
        let mut g = DiGraph::new();
        let mut index = HashMap::new();
        for n in &self.nodes {
            index.insert(n, g.add_node(n.clone()));
        }
        for (a, b) in self.regular.iter().chain(&self.special) {
            g.add_edge(index[a], index[b], ());
        }
        (g, index)
    }

    /// Special edges lying on some cycle (both ends in one strongly connected component).
    pub fn cyclic_special_edges(&self) -> Vec<Edge> {
        let (g, index) = self.to_petgraph();
        let mut component = vec![0usize; g.node_count()];
        for (c, scc) in tarjan_scc(&g).into_iter().enumerate() {
            for n in scc {
                component[n.index()] = c;
            }
        }
        self.special
            .iter()
            .filter(|(a, b)| component[index[a].index()] == component[index[b].index()])
            .cloned()
            .collect()
    }

    pub fn has_special_cycle(&self) -> bool {
        !self.cyclic_special_edges().is_empty()
    }

    /// A cycle through a special edge, as a closed walk `[p0, p1, ..., p0]`.
    pub fn special_cycle_witness(&self) -> Option<Vec<Position>> {
        let (from, to) = self.cyclic_special_edges().into_iter().next()?;
        let mut succ: BTreeMap<&Position, Vec<&Position>> = BTreeMap::new();
        for (a, b) in self.regular.iter().chain(&self.special) {
            succ.entry(a).or_default().push(b);
        }
        // Shortest path to -> from.
        let mut parent: BTreeMap<&Position, &Position> = BTreeMap::new();
        let mut queue = VecDeque::from([&to]);
        let mut seen = BTreeSet::from([&to]);
        while let Some(n) = queue.pop_front() {
            if n == &from {
                break;
            }
            for &m in succ.get(n).into_iter().flatten() {
                if seen.insert(m) {
                    parent.insert(m, n);
                    queue.push_back(m);
                }
            }
        }
        let mut path = vec![from.clone()];
        let mut cur = &from;
        while cur != &to {
            cur = parent[cur];
            path.push(cur.clone());
        }
        path.reverse();
        path.insert(0, from.clone());
        Some(path)
    }
}

/// Position graph of the tgds in `sigma`; egds contribute nothing.
pub fn build_position_graph(sigma: &[Dependency], variant: GraphVariant) -> PositionGraph {
    let mut g = PositionGraph::default();
    for d in sigma.iter().filter(|d| d.is_tgd()) {
        let p = TgdPositions::of(d);
        g.add_nodes(&p.all);
        g.add_weak_edges(&p, &|_| true);
        if variant == GraphVariant::Rich {
            g.add_rich_special_edges(&p);
        }
    }
    g
}

/// Positions that may hold a null created by the chase (least fixpoint).
pub fn affected_positions(sigma: &[Dependency]) -> BTreeSet<Position> {
    let tgds: Vec<TgdPositions> = sigma
        .iter()
        .filter(|d| d.is_tgd())
        .map(TgdPositions::of)
        .collect();
    let mut affected: BTreeSet<Position> = tgds
        .iter()
        .flat_map(|p| p.existential.iter().cloned())
        .collect();
    loop {
        let before = affected.len();
        for p in &tgds {
            for (x, head_pos) in &p.head {
                let Some(body_pos) = p.body.get(x) else {
                    continue;
                };
                if body_pos.iter().all(|q| affected.contains(q)) {
                    affected.extend(head_pos.iter().cloned());
                }
            }
        }
        if affected.len() == before {
            return affected;
        }
    }
}

/// The weak graph restricted to variables whose body positions are all affected.
pub fn safety_graph(sigma: &[Dependency]) -> PositionGraph {
    let affected = affected_positions(sigma);
    let mut g = PositionGraph::default();
    for d in sigma.iter().filter(|d| d.is_tgd()) {
        let p = TgdPositions::of(d);
        g.add_nodes(&p.all);
        g.add_weak_edges(&p, &|body_pos| {
            body_pos.iter().all(|q| affected.contains(q))
        });
    }
    g
}
