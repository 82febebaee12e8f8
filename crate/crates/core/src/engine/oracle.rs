//! Exhaustive rainbow-AAP oracle.
//!
//! Depth-first enumeration of simple `F`-alternating paths from uncovered
//! vertices. Colors are not branched on: the non-`F` edges of the current
//! path are kept matched to distinct colors by incremental bipartite
//! augmentation, so a prefix survives iff it still has a rainbow coloring.

use std::collections::BTreeMap;

use crate::alternating::{Aap, RainbowAap};
use crate::error::{Error, Result};
use crate::graph::{ColorFamily, Edge, Matching, Vertex};

/// Node budget used when none is given.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Returns a rainbow `F`-AAP over `family` if one exists. Exceeding `budget`
/// search nodes is reported as [`Error::BudgetExceeded`], never as absence.
pub fn rainbow_aap_oracle(f: &Matching, family: &ColorFamily, budget: u64) -> Result<Option<RainbowAap>> {
    let mut colors_of: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
    for (c, set) in family.iter().enumerate() {
        for e in set {
            if !f.contains(e) {
                colors_of.entry(*e).or_default().push(c);
            }
        }
    }
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for e in colors_of.keys() {
        adj.entry(e.lo()).or_default().push(e.hi());
        adj.entry(e.hi()).or_default().push(e.lo());
    }
    let starts: Vec<Vertex> = adj.keys().copied().filter(|v| !f.covers(*v)).collect();
    let mut s = OracleSearch {
        f,
        adj: &adj,
        colors_of: &colors_of,
        owner: vec![None; family.len()],
        slot_color: Vec::new(),
        slot_edge: Vec::new(),
        path: Vec::new(),
        on_path: BTreeMap::new(),
        nodes: 0,
        budget,
    };
    for start in starts {
        s.path.push(start);
        s.on_path.insert(start, ());
        let found = s.extend(start)?;
        if found {
            let aap = Aap::new(f, s.path.clone()).expect("search builds valid AAPs");
            let colors = s.slot_edge.iter().copied().zip(s.slot_color.iter().copied()).collect();
            return Ok(Some(RainbowAap { path: aap, colors }));
        }
        s.on_path.remove(&start);
        s.path.pop();
    }
    Ok(None)
}

struct OracleSearch<'a> {
    f: &'a Matching,
    adj: &'a BTreeMap<Vertex, Vec<Vertex>>,
    colors_of: &'a BTreeMap<Edge, Vec<usize>>,
    /// color -> slot currently holding it
    owner: Vec<Option<usize>>,
    slot_color: Vec<usize>,
    slot_edge: Vec<Edge>,
    path: Vec<Vertex>,
    on_path: BTreeMap<Vertex, ()>,
    nodes: u64,
    budget: u64,
}

impl OracleSearch<'_> {
    fn extend(&mut self, cur: Vertex) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        for &y in &self.adj[&cur] {
            if self.on_path.contains_key(&y) {
                continue;
            }
            let e = Edge::new(cur, y).expect("adjacency has no loops");
            if !self.push_slot(e) {
                continue;
            }
            match self.f.partner(y) {
                None => {
                    self.path.push(y);
                    return Ok(true);
                }
                Some(z) if !self.on_path.contains_key(&z) => {
                    self.path.extend([y, z]);
                    self.on_path.insert(y, ());
                    self.on_path.insert(z, ());
                    if self.extend(z)? {
                        return Ok(true);
                    }
                    self.on_path.remove(&y);
                    self.on_path.remove(&z);
                    self.path.truncate(self.path.len() - 2);
                }
                Some(_) => {}
            }
            self.pop_slot();
        }
        Ok(false)
    }

    /// Adds a non-`F` edge and tries to keep a color system of distinct
    /// representatives for all slots.
    fn push_slot(&mut self, e: Edge) -> bool {
        let slot = self.slot_edge.len();
        self.slot_edge.push(e);
        self.slot_color.push(usize::MAX);
        let mut seen = vec![false; self.owner.len()];
        if self.augment(slot, &mut seen) {
            true
        } else {
            self.slot_edge.pop();
            self.slot_color.pop();
            false
        }
    }

    fn pop_slot(&mut self) {
        let c = self.slot_color.pop().expect("slot to pop");
        self.slot_edge.pop();
        self.owner[c] = None;
    }

    fn augment(&mut self, slot: usize, seen: &mut [bool]) -> bool {
        let e = self.slot_edge[slot];
        for &c in &self.colors_of[&e] {
            if seen[c] {
                continue;
            }
            seen[c] = true;
            let free = match self.owner[c] {
                None => true,
                Some(other) => self.augment(other, seen),
            };
            if free {
                self.owner[c] = Some(slot);
                self.slot_color[slot] = c;
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::badge::{badge_paths, make_badge, Multigraph};
    use crate::graph::edge_set;

    #[test]
    fn single_edge_witness() {
        let fam = ColorFamily::new(vec![edge_set(&[(1, 2)])]);
        let w = rainbow_aap_oracle(&Matching::empty(), &fam, DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(w.path.vertices(), &[Vertex(1), Vertex(2)]);
        assert_eq!(w.colors, vec![(Edge::of(1, 2), 0)]);
    }

    #[test]
    fn two_badge_has_no_witness() {
        let host = Multigraph { vertices: vec![Vertex(0), Vertex(1)], edges: vec![(Vertex(0), Vertex(1))] };
        let b = make_badge(&host, &[2], None).unwrap();
        let fam = badge_paths(&b);
        assert!(rainbow_aap_oracle(&b.skeleton(), &fam, DEFAULT_BUDGET).unwrap().is_none());

        let mut plus = fam.clone();
        plus.push(edge_set(&[(0, 1)]));
        let w = rainbow_aap_oracle(&b.skeleton(), &plus, DEFAULT_BUDGET).unwrap().unwrap();
        w.check(&b.skeleton(), &plus).unwrap();
    }

    #[test]
    fn budget_is_reported() {
        let host = Multigraph { vertices: vec![Vertex(0), Vertex(1)], edges: vec![(Vertex(0), Vertex(1))] };
        let b = make_badge(&host, &[3], None).unwrap();
        let err = rainbow_aap_oracle(&b.skeleton(), &badge_paths(&b), 3).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded(3)));
    }
}
