//! Fallback search used when a constructive step cannot complete.
//!
//! Plain backtracking that branches on the color of every non-matching edge
//! as the path grows. It is deliberately a different procedure from the
//! oracle in [`super::oracle`], which tests and sweeps use as the reference.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{Edge, EdgeSet, Matching, Vertex};

use super::strand::Found;

pub(crate) struct SearchLimit {
    pub nodes: u64,
}

/// Finds a rainbow `F`-AAP over `(color, edges)` pairs, or `None` if the
/// search space is exhausted. `Err(())` means the node limit was hit.
pub(crate) fn rainbow_path(f: &Matching, colors: &[(usize, EdgeSet)], limit: SearchLimit) -> Result<Option<Found>, ()> {
    let mut by_edge: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
    for (c, set) in colors {
        for e in set {
            if !f.contains(e) {
                by_edge.entry(*e).or_default().push(*c);
            }
        }
    }
    let mut adj: BTreeMap<Vertex, Vec<(Vertex, Edge)>> = BTreeMap::new();
    for e in by_edge.keys() {
        adj.entry(e.lo()).or_default().push((e.hi(), *e));
        adj.entry(e.hi()).or_default().push((e.lo(), *e));
    }
    let mut st = State { f, adj: &adj, by_edge: &by_edge, used: BTreeSet::new(), verts: Vec::new(), colors: Vec::new(), nodes: 0, limit: limit.nodes };
    let starts: Vec<Vertex> = adj.keys().copied().filter(|v| !f.covers(*v)).collect();
    for s in starts {
        st.verts.push(s);
        if st.go(s)? {
            return Ok(Some(Found { verts: st.verts, colors: st.colors }));
        }
        st.verts.pop();
    }
    Ok(None)
}

struct State<'a> {
    f: &'a Matching,
    adj: &'a BTreeMap<Vertex, Vec<(Vertex, Edge)>>,
    by_edge: &'a BTreeMap<Edge, Vec<usize>>,
    used: BTreeSet<usize>,
    verts: Vec<Vertex>,
    colors: Vec<Option<usize>>,
    nodes: u64,
    limit: u64,
}

impl State<'_> {
    fn go(&mut self, cur: Vertex) -> Result<bool, ()> {
        for &(y, e) in &self.adj[&cur] {
            if self.verts.contains(&y) {
                continue;
            }
            for &c in &self.by_edge[&e] {
                if self.used.contains(&c) {
                    continue;
                }
                self.nodes += 1;
                if self.nodes > self.limit {
                    return Err(());
                }
                self.used.insert(c);
                self.verts.push(y);
                self.colors.push(Some(c));
                match self.f.partner(y) {
                    None => return Ok(true),
                    Some(z) if !self.verts.contains(&z) => {
                        self.verts.push(z);
                        self.colors.push(None);
                        if self.go(z)? {
                            return Ok(true);
                        }
                        self.verts.pop();
                        self.colors.pop();
                    }
                    Some(_) => {}
                }
                self.verts.pop();
                self.colors.pop();
                self.used.remove(&c);
            }
        }
        Ok(false)
    }
}
