//! Vertices, edges, matchings and indexed color families.
//!
//! Vertices are dense integer ids. Edges are stored canonically as
//! `(min, max)` so that structural equality is set equality.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vertex(pub u32);

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Undirected edge between two distinct vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[u32; 2]", into = "[u32; 2]")]
pub struct Edge {
    lo: Vertex,
    hi: Vertex,
}

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Result<Edge> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Edge { lo: a, hi: b }),
            std::cmp::Ordering::Greater => Ok(Edge { lo: b, hi: a }),
            std::cmp::Ordering::Equal => Err(Error::Loop(a.0)),
        }
    }

    /// Shorthand for tests and fixtures. Panics on a loop.
    pub fn of(a: u32, b: u32) -> Edge {
        Edge::new(Vertex(a), Vertex(b)).expect("edge endpoints must differ")
    }

    pub fn lo(self) -> Vertex {
        self.lo
    }

    pub fn hi(self) -> Vertex {
        self.hi
    }

    pub fn ends(self) -> [Vertex; 2] {
        [self.lo, self.hi]
    }

    pub fn touches(self, v: Vertex) -> bool {
        self.lo == v || self.hi == v
    }

    /// The endpoint opposite to `v`, if `v` is an endpoint.
    pub fn other(self, v: Vertex) -> Option<Vertex> {
        if self.lo == v {
            Some(self.hi)
        } else if self.hi == v {
            Some(self.lo)
        } else {
            None
        }
    }

    pub fn meets(self, other: Edge) -> bool {
        self.touches(other.lo) || self.touches(other.hi)
    }
}

impl TryFrom<[u32; 2]> for Edge {
    type Error = Error;

    fn try_from(value: [u32; 2]) -> Result<Self> {
        Edge::new(Vertex(value[0]), Vertex(value[1]))
    }
}

impl From<Edge> for [u32; 2] {
    fn from(e: Edge) -> Self {
        [e.lo.0, e.hi.0]
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

pub type EdgeSet = BTreeSet<Edge>;

/// Builds an edge set from `(a, b)` pairs. Panics on loops.
pub fn edge_set(pairs: &[(u32, u32)]) -> EdgeSet {
    pairs.iter().map(|&(a, b)| Edge::of(a, b)).collect()
}

pub fn vertices_of<'a>(edges: impl IntoIterator<Item = &'a Edge>) -> BTreeSet<Vertex> {
    edges.into_iter().flat_map(|e| e.ends()).collect()
}

pub fn validate_matching(edges: &EdgeSet) -> bool {
    let mut seen = BTreeSet::new();
    edges.iter().all(|e| seen.insert(e.lo) && seen.insert(e.hi))
}

/// A set of pairwise vertex-disjoint edges with a partner lookup.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "EdgeSet", into = "EdgeSet")]
pub struct Matching {
    edges: EdgeSet,
    partner: BTreeMap<Vertex, Vertex>,
}

impl TryFrom<EdgeSet> for Matching {
    type Error = Error;

    fn try_from(edges: EdgeSet) -> Result<Matching> {
        Matching::new(edges)
    }
}

impl From<Matching> for EdgeSet {
    fn from(m: Matching) -> EdgeSet {
        m.edges
    }
}

impl Matching {
    pub fn new(edges: EdgeSet) -> Result<Matching> {
        let mut partner = BTreeMap::new();
        for e in &edges {
            if partner.insert(e.lo, e.hi).is_some() || partner.insert(e.hi, e.lo).is_some() {
                return Err(Error::NotAMatching(format!("edge {e} shares a vertex")));
            }
        }
        Ok(Matching { edges, partner })
    }

    pub fn empty() -> Matching {
        Matching::default()
    }

    pub fn from_pairs(pairs: &[(u32, u32)]) -> Result<Matching> {
        Matching::new(edge_set(pairs))
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn into_edges(self) -> EdgeSet {
        self.edges
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn partner(&self, v: Vertex) -> Option<Vertex> {
        self.partner.get(&v).copied()
    }

    /// Whether `v` lies in the union of the matching's edges.
    pub fn covers(&self, v: Vertex) -> bool {
        self.partner.contains_key(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.partner.keys().copied()
    }

    pub fn without(&self, drop: &EdgeSet) -> Matching {
        Matching::new(self.edges.difference(drop).copied().collect())
            .expect("subset of a matching is a matching")
    }
}

/// Indexed sequence of edge sets. Indices are 0-based and stable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColorFamily {
    colors: Vec<EdgeSet>,
}

impl ColorFamily {
    pub fn new(colors: Vec<EdgeSet>) -> ColorFamily {
        ColorFamily { colors }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, i: usize) -> &EdgeSet {
        &self.colors[i]
    }

    pub fn colors(&self) -> &[EdgeSet] {
        &self.colors
    }

    pub fn iter(&self) -> impl Iterator<Item = &EdgeSet> {
        self.colors.iter()
    }

    pub fn push(&mut self, s: EdgeSet) {
        self.colors.push(s);
    }

    pub fn vertices(&self) -> BTreeSet<Vertex> {
        vertices_of(self.colors.iter().flatten())
    }

    pub fn union(&self) -> EdgeSet {
        self.colors.iter().flatten().copied().collect()
    }

    /// Union of the colors at `indices`.
    pub fn union_of(&self, indices: &[usize]) -> EdgeSet {
        indices.iter().flat_map(|&i| self.colors[i].iter().copied()).collect()
    }

    /// Sub-family in the given index order.
    pub fn select(&self, indices: &[usize]) -> ColorFamily {
        ColorFamily::new(indices.iter().map(|&i| self.colors[i].clone()).collect())
    }
}

impl FromIterator<EdgeSet> for ColorFamily {
    fn from_iter<T: IntoIterator<Item = EdgeSet>>(iter: T) -> Self {
        ColorFamily::new(iter.into_iter().collect())
    }
}

/// A partial choice function: `(color index, edge)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowSelection {
    pub pairs: Vec<(usize, Edge)>,
}

impl RainbowSelection {
    pub fn new(pairs: Vec<(usize, Edge)>) -> RainbowSelection {
        RainbowSelection { pairs }
    }
}

pub fn is_rainbow_selection(family: &ColorFamily, sel: &RainbowSelection) -> bool {
    let mut used = BTreeSet::new();
    sel.pairs
        .iter()
        .all(|&(c, e)| c < family.len() && used.insert(c) && family.color(c).contains(&e))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    Path,
    Cycle,
}

/// One connected component of a symmetric difference of two matchings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub kind: ComponentKind,
    /// Vertex walk. For a path, from one end to the other. For a cycle the
    /// first vertex is not repeated at the end.
    pub vertices: Vec<Vertex>,
    pub first_count: usize,
    pub second_count: usize,
}

impl Component {
    pub fn edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = self
            .vertices
            .windows(2)
            .map(|w| Edge::new(w[0], w[1]).expect("walk has no loops"))
            .collect();
        if self.kind == ComponentKind::Cycle && self.vertices.len() > 2 {
            out.push(Edge::new(self.vertices[self.vertices.len() - 1], self.vertices[0]).unwrap());
        }
        out
    }
}

/// Connected components of `first △ second`, each a simple path or an even
/// cycle alternating between the two matchings. Components are returned in
/// order of their smallest vertex; paths start at their smaller endpoint.
pub fn symmetric_difference_components(first: &Matching, second: &Matching) -> Vec<Component> {
    let only_first: EdgeSet = first.edges.difference(&second.edges).copied().collect();
    let only_second: EdgeSet = second.edges.difference(&first.edges).copied().collect();
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for e in only_first.iter().chain(&only_second) {
        adj.entry(e.lo).or_default().push(e.hi);
        adj.entry(e.hi).or_default().push(e.lo);
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    // Paths first from degree-1 vertices, then the remaining cycles.
    let starts: Vec<Vertex> = adj
        .iter()
        .filter(|(_, n)| n.len() == 1)
        .map(|(v, _)| *v)
        .chain(adj.keys().copied())
        .collect();
    for start in starts {
        if seen.contains(&start) {
            continue;
        }
        let mut walk = vec![start];
        seen.insert(start);
        let mut prev: Option<Vertex> = None;
        let mut cur = start;
        let mut closed = false;
        loop {
            let next = adj[&cur].iter().copied().find(|&n| Some(n) != prev && !seen.contains(&n));
            match next {
                Some(n) => {
                    seen.insert(n);
                    walk.push(n);
                    prev = Some(cur);
                    cur = n;
                }
                None => {
                    if adj[&cur].len() == 2 && walk.len() > 2 {
                        closed = true;
                    }
                    break;
                }
            }
        }
        let kind = if closed { ComponentKind::Cycle } else { ComponentKind::Path };
        let mut comp = Component { kind, vertices: walk, first_count: 0, second_count: 0 };
        if kind == ComponentKind::Path && comp.vertices.last() < comp.vertices.first() {
            comp.vertices.reverse();
        }
        for e in comp.edges() {
            if only_first.contains(&e) {
                comp.first_count += 1;
            } else {
                comp.second_count += 1;
            }
        }
        out.push(comp);
    }
    out.sort_by_key(|c| c.vertices.iter().min().copied());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_validation() {
        assert!(validate_matching(&EdgeSet::new()));
        assert!(validate_matching(&edge_set(&[(1, 2), (3, 4)])));
        assert!(!validate_matching(&edge_set(&[(1, 2), (2, 3)])));
        // 3-origamistrip skeleton u1v1, u2v2, u3v3
        assert!(validate_matching(&edge_set(&[(2, 3), (4, 5), (6, 7)])));
    }

    #[test]
    fn edges_are_canonical() {
        assert_eq!(Edge::of(5, 2), Edge::of(2, 5));
        assert!(Edge::new(Vertex(3), Vertex(3)).is_err());
        assert_eq!(Edge::of(1, 4).other(Vertex(4)), Some(Vertex(1)));
        assert_eq!(Edge::of(1, 4).other(Vertex(2)), None);
    }

    #[test]
    fn symmetric_difference_small_cases() {
        let m = Matching::from_pairs(&[(1, 2)]).unwrap();
        assert!(symmetric_difference_components(&m, &m).is_empty());

        let m2 = Matching::from_pairs(&[(2, 3)]).unwrap();
        let comps = symmetric_difference_components(&m, &m2);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].kind, ComponentKind::Path);
        assert_eq!(comps[0].vertices, vec![Vertex(1), Vertex(2), Vertex(3)]);
        assert_eq!((comps[0].first_count, comps[0].second_count), (1, 1));
    }

    #[test]
    fn symmetric_difference_cycle() {
        let a = Matching::from_pairs(&[(0, 1), (2, 3)]).unwrap();
        let b = Matching::from_pairs(&[(1, 2), (3, 0)]).unwrap();
        let comps = symmetric_difference_components(&a, &b);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].kind, ComponentKind::Cycle);
        assert_eq!((comps[0].first_count, comps[0].second_count), (2, 2));
    }

    #[test]
    fn rainbow_selection_checks() {
        let fam = ColorFamily::new(vec![edge_set(&[(1, 2), (3, 4)]), edge_set(&[(1, 3), (2, 4)])]);
        assert!(is_rainbow_selection(&fam, &RainbowSelection::default()));
        let ok = RainbowSelection::new(vec![(0, Edge::of(1, 2)), (1, Edge::of(2, 4))]);
        assert!(is_rainbow_selection(&fam, &ok));
        let repeated = RainbowSelection::new(vec![(0, Edge::of(1, 2)), (0, Edge::of(3, 4))]);
        assert!(!is_rainbow_selection(&fam, &repeated));
        let missing = RainbowSelection::new(vec![(1, Edge::of(1, 2))]);
        assert!(!is_rainbow_selection(&fam, &missing));
    }

    #[test]
    fn matching_rejects_shared_vertex() {
        assert!(Matching::from_pairs(&[(1, 2), (2, 3)]).is_err());
        let m = Matching::from_pairs(&[(1, 2), (5, 6)]).unwrap();
        assert_eq!(m.partner(Vertex(6)), Some(Vertex(5)));
        assert!(!m.covers(Vertex(3)));
    }
}
