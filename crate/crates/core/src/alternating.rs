//! Alternating paths relative to a reference matching, augmenting paths, and
//! a branch-and-bound maximum matching for small graphs.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{symmetric_difference_components, ComponentKind, Edge, EdgeSet, Matching, Vertex};

/// Simple path whose edges alternate between the reference matching and
/// its complement.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlternatingPath {
    vertices: Vec<Vertex>,
    f_edges: BTreeSet<Edge>,
}

impl AlternatingPath {
    pub fn new(f: &Matching, vertices: Vec<Vertex>) -> Result<AlternatingPath> {
        if vertices.len() < 2 {
            return Err(Error::NotAnAap("a path needs at least two vertices".into()));
        }
        let distinct: BTreeSet<_> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::NotAnAap("repeated vertex".into()));
        }
        let mut f_edges = BTreeSet::new();
        let mut last_in_f = None;
        for w in vertices.windows(2) {
            let e = Edge::new(w[0], w[1])?;
            let in_f = f.contains(&e);
            if last_in_f == Some(in_f) {
                return Err(Error::NotAnAap(format!("edges do not alternate at {e}")));
            }
            last_in_f = Some(in_f);
            if in_f {
                f_edges.insert(e);
            }
        }
        Ok(AlternatingPath { vertices, f_edges })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn f_edges(&self) -> &BTreeSet<Edge> {
        &self.f_edges
    }

    pub fn edges(&self) -> Vec<Edge> {
        path_edges(&self.vertices)
    }

    pub fn non_f_edges(&self) -> Vec<Edge> {
        self.edges().into_iter().filter(|e| !self.f_edges.contains(e)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn ends(&self) -> (Vertex, Vertex) {
        (self.vertices[0], self.vertices[self.vertices.len() - 1])
    }
}

/// Augmenting alternating path: odd length, both endpoints uncovered.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Aap(AlternatingPath);

impl Aap {
    pub fn new(f: &Matching, vertices: Vec<Vertex>) -> Result<Aap> {
        let p = AlternatingPath::new(f, vertices)?;
        if p.edge_count() % 2 == 0 {
            return Err(Error::NotAnAap("even number of edges".into()));
        }
        let (s, t) = p.ends();
        if f.covers(s) || f.covers(t) {
            return Err(Error::NotAnAap("endpoint covered by the matching".into()));
        }
        // Odd length plus uncovered ends forces first and last edges off F.
        Ok(Aap(p))
    }

    pub fn path(&self) -> &AlternatingPath {
        &self.0
    }

    pub fn vertices(&self) -> &[Vertex] {
        self.0.vertices()
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.0.edges()
    }

    pub fn non_f_edges(&self) -> Vec<Edge> {
        self.0.non_f_edges()
    }

    pub fn f_edges(&self) -> &BTreeSet<Edge> {
        self.0.f_edges()
    }

    pub fn edge_count(&self) -> usize {
        self.0.edge_count()
    }

    pub fn ends(&self) -> (Vertex, Vertex) {
        self.0.ends()
    }

    pub fn reversed(&self) -> Aap {
        let mut v = self.0.vertices.clone();
        v.reverse();
        Aap(AlternatingPath { vertices: v, f_edges: self.0.f_edges.clone() })
    }
}

/// Odd cycle in which every other edge is in the matching except for the two
/// edges meeting at the apex, which are both outside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingOddCycle {
    /// Starts at the apex; the closing edge returns to it.
    vertices: Vec<Vertex>,
}

impl AlternatingOddCycle {
    pub fn new(f: &Matching, vertices: Vec<Vertex>) -> Result<AlternatingOddCycle> {
        let len = vertices.len();
        if len < 3 || len.is_multiple_of(2) {
            return Err(Error::NotAnAap("alternating cycle must have odd length ≥ 3".into()));
        }
        if vertices.iter().collect::<BTreeSet<_>>().len() != len {
            return Err(Error::NotAnAap("repeated vertex in cycle".into()));
        }
        let edge_at = |i: usize| Edge::new(vertices[i], vertices[(i + 1) % len]);
        let in_f: Vec<bool> = (0..len).map(|i| edge_at(i).map(|e| f.contains(&e))).collect::<Result<_>>()?;
        // Rotate so the two adjacent non-F edges meet at position 0.
        let apex = (0..len)
            .find(|&i| !in_f[i] && !in_f[(i + len - 1) % len])
            .ok_or_else(|| Error::NotAnAap("no apex with two non-matching edges".into()))?;
        let mut rotated = vertices[apex..].to_vec();
        rotated.extend_from_slice(&vertices[..apex]);
        for i in 0..len {
            let expected = i % 2 == 1 && i != len - 1;
            if in_f[(apex + i) % len] != expected {
                return Err(Error::NotAnAap("cycle does not alternate".into()));
            }
        }
        Ok(AlternatingOddCycle { vertices: rotated })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn apex(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut out = path_edges(&self.vertices);
        out.push(Edge::new(self.vertices[self.vertices.len() - 1], self.vertices[0]).unwrap());
        out
    }
}

/// An `F`-AAP together with a color index for each of its non-`F` edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RainbowAap {
    pub path: Aap,
    /// `(edge, color)` for every non-`F` edge, in path order.
    pub colors: Vec<(Edge, usize)>,
}

impl RainbowAap {
    /// Checks that the path is an `F`-AAP whose non-`F` edges are colored
    /// injectively by colors that contain them.
    pub fn check(&self, f: &Matching, family: &crate::graph::ColorFamily) -> Result<(), String> {
        let p = Aap::new(f, self.path.vertices().to_vec()).map_err(|e| e.to_string())?;
        let non_f = p.non_f_edges();
        if non_f.len() != self.colors.len() {
            return Err(format!("{} non-F edges but {} colored", non_f.len(), self.colors.len()));
        }
        let mut used = BTreeSet::new();
        for (e, &(ce, c)) in non_f.iter().zip(&self.colors) {
            if *e != ce {
                return Err(format!("color list out of order at {e}"));
            }
            if c >= family.len() || !family.color(c).contains(e) {
                return Err(format!("edge {e} not in color {c}"));
            }
            if !used.insert(c) {
                return Err(format!("color {c} used twice"));
            }
        }
        Ok(())
    }

    pub fn selection(&self) -> crate::graph::RainbowSelection {
        crate::graph::RainbowSelection::new(self.colors.iter().map(|&(e, c)| (c, e)).collect())
    }

    /// The matching `F △ path`.
    pub fn augmented(&self, f: &Matching) -> Result<Matching> {
        augment(f, &self.path)
    }
}

pub(crate) fn path_edges(vertices: &[Vertex]) -> Vec<Edge> {
    vertices.windows(2).map(|w| Edge::new(w[0], w[1]).expect("path has no loops")).collect()
}

/// Maximum-cardinality matching by exhaustive branch and bound.
///
/// Exponential in the worst case; intended for graphs of a few dozen
/// vertices. Vertices are processed in increasing id order and candidate
/// partners by increasing degree, so the result is deterministic.
pub fn max_matching(edges: &EdgeSet) -> Matching {
    let verts: Vec<Vertex> = crate::graph::vertices_of(edges).into_iter().collect();
    let index: BTreeMap<Vertex, usize> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let n = verts.len();
    let mut adj = vec![Vec::new(); n];
    for e in edges {
        let (a, b) = (index[&e.lo()], index[&e.hi()]);
        adj[a].push(b);
        adj[b].push(a);
    }
    for list in &mut adj {
        list.sort_by_key(|&u| u);
    }
    let degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    for list in &mut adj {
        list.sort_by_key(|&u| (degree[u], u));
    }

    let mut search = MatchingSearch {
        adj: &adj,
        used: vec![false; n],
        current: Vec::new(),
        best: greedy(&adj, n),
    };
    let cap = n / 2;
    if search.best.len() < cap {
        search.run(0, cap);
    }
    Matching::new(search.best.iter().map(|&(a, b)| Edge::new(verts[a], verts[b]).unwrap()).collect())
        .expect("search produces disjoint pairs")
}

fn greedy(adj: &[Vec<usize>], n: usize) -> Vec<(usize, usize)> {
    let mut used = vec![false; n];
    let mut out = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (adj[v].len(), v));
    for v in order {
        if used[v] {
            continue;
        }
        if let Some(&u) = adj[v].iter().find(|&&u| !used[u]) {
            used[v] = true;
            used[u] = true;
            out.push((v.min(u), v.max(u)));
        }
    }
    out
}

struct MatchingSearch<'a> {
    adj: &'a [Vec<usize>],
    used: Vec<bool>,
    current: Vec<(usize, usize)>,
    best: Vec<(usize, usize)>,
}

impl MatchingSearch<'_> {
    /// Returns true once a matching of size `cap` is found.
    fn run(&mut self, from: usize, cap: usize) -> bool {
        let n = self.used.len();
        // Skip vertices that are used or have no free neighbour.
        let mut v = from;
        while v < n && (self.used[v] || !self.adj[v].iter().any(|&u| !self.used[u])) {
            v += 1;
        }
        if v == n {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return self.best.len() >= cap;
        }
        let live = (v..n)
            .filter(|&u| !self.used[u] && self.adj[u].iter().any(|&w| !self.used[w]))
            .count();
        if self.current.len() + live / 2 <= self.best.len() {
            return false;
        }
        self.used[v] = true;
        for i in 0..self.adj[v].len() {
            let u = self.adj[v][i];
            if self.used[u] {
                continue;
            }
            self.used[u] = true;
            self.current.push((v.min(u), v.max(u)));
            let done = self.run(v + 1, cap);
            self.current.pop();
            self.used[u] = false;
            if done {
                self.used[v] = false;
                return true;
            }
        }
        // Leave v unmatched.
        let done = self.run(v + 1, cap);
        self.used[v] = false;
        done
    }
}

/// Finds an `F`-AAP inside `E ∪ F`, if one exists.
///
/// Computes a maximum matching of `E ∪ F`; if it beats `F`, the surplus
/// components of its symmetric difference with `F` are augmenting paths and
/// the one with the lexicographically smallest vertex sequence is returned.
pub fn find_f_aap(f: &Matching, e: &EdgeSet) -> Option<Aap> {
    let mut all = e.clone();
    all.extend(f.edges().iter().copied());
    let m = max_matching(&all);
    if m.len() <= f.len() {
        return None;
    }
    symmetric_difference_components(f, &m)
        .into_iter()
        .filter(|c| c.kind == ComponentKind::Path && c.second_count > c.first_count)
        .map(|c| {
            let mut fwd = c.vertices.clone();
            let mut rev = c.vertices;
            rev.reverse();
            if rev < fwd {
                std::mem::swap(&mut fwd, &mut rev);
            }
            fwd
        })
        .min()
        .map(|vs| Aap::new(f, vs).expect("surplus component is augmenting"))
}

/// Returns `F △ p`, one edge larger than `F`.
pub fn augment(f: &Matching, p: &Aap) -> Result<Matching> {
    // Re-validate against this particular F.
    let p = Aap::new(f, p.vertices().to_vec())?;
    let mut edges = f.edges().clone();
    for e in p.edges() {
        if !edges.remove(&e) {
            edges.insert(e);
        }
    }
    Matching::new(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::edge_set;

    fn vs(ids: &[u32]) -> Vec<Vertex> {
        ids.iter().map(|&i| Vertex(i)).collect()
    }

    #[test]
    fn max_matching_small() {
        assert!(max_matching(&EdgeSet::new()).is_empty());
        let k4 = edge_set(&[(1, 2), (3, 4), (1, 3), (2, 4), (1, 4), (2, 3)]);
        let m = max_matching(&k4);
        assert_eq!(m.len(), 2);
        assert!(m.edges().is_subset(&k4));
    }

    #[test]
    fn aap_on_single_edge() {
        let f = Matching::empty();
        let p = find_f_aap(&f, &edge_set(&[(1, 2)])).unwrap();
        assert_eq!(p.vertices(), &vs(&[1, 2])[..]);
        let g = augment(&f, &p).unwrap();
        assert_eq!(g.edges(), &edge_set(&[(1, 2)]));
    }

    #[test]
    fn aap_through_one_origamistrip() {
        // x=0, u1=1, v1=2, y=3; A = {x u1, v1 y}
        let f = Matching::from_pairs(&[(1, 2)]).unwrap();
        let p = find_f_aap(&f, &edge_set(&[(0, 1), (2, 3)])).unwrap();
        assert_eq!(p.vertices(), &vs(&[0, 1, 2, 3])[..]);
        let g = augment(&f, &p).unwrap();
        assert_eq!(g.edges(), &edge_set(&[(0, 1), (2, 3)]));
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn no_aap_when_matching_is_maximum() {
        let f = Matching::from_pairs(&[(1, 2)]).unwrap();
        assert!(find_f_aap(&f, &edge_set(&[(0, 1)])).is_none());
    }

    #[test]
    fn aap_validation_errors() {
        let f = Matching::from_pairs(&[(1, 2)]).unwrap();
        assert!(Aap::new(&f, vs(&[0, 1])).is_err()); // endpoint covered
        assert!(Aap::new(&f, vs(&[0, 1, 2])).is_err()); // even length
        assert!(Aap::new(&f, vs(&[0, 2, 1, 3])).is_ok());
        assert!(Aap::new(&f, vs(&[0, 3])).is_ok());
        assert!(AlternatingPath::new(&f, vs(&[0, 3, 0])).is_err());
        assert!(augment(&Matching::empty(), &Aap::new(&f, vs(&[0, 1, 2, 3])).unwrap()).is_err());
    }

    #[test]
    fn odd_cycle_rotation() {
        let f = Matching::from_pairs(&[(1, 2)]).unwrap();
        let c = AlternatingOddCycle::new(&f, vs(&[1, 2, 0])).unwrap();
        assert_eq!(c.apex(), Vertex(0));
        let f5 = Matching::from_pairs(&[(1, 2), (3, 4)]).unwrap();
        let c5 = AlternatingOddCycle::new(&f5, vs(&[0, 1, 2, 3, 4])).unwrap();
        assert_eq!(c5.apex(), Vertex(0));
        assert!(AlternatingOddCycle::new(&f5, vs(&[0, 1, 3, 2, 4])).is_err());
    }
}
