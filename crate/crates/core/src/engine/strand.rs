//! Working representation for the path-family recursion: each color is a
//! vertex sequence whose edges remember the edge they came from one level
//! up, so witnesses found after a contraction can be carried back.

use std::collections::{BTreeMap, BTreeSet};

use crate::alternating::{path_edges, Aap, RainbowAap};
use crate::error::{Error, Result};
use crate::graph::{Edge, Matching, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Strand {
    pub color: usize,
    pub verts: Vec<Vertex>,
    /// `origin[i]` is the parent-level edge behind `verts[i]–verts[i+1]`.
    pub origin: Vec<Edge>,
}

impl Strand {
    pub fn new(color: usize, verts: Vec<Vertex>) -> Strand {
        let origin = path_edges(&verts);
        Strand { color, verts, origin }
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.verts.windows(2).any(|w| Edge::new(w[0], w[1]).ok() == Some(e))
    }

    pub fn origin_of(&self, e: Edge) -> Option<Edge> {
        self.verts
            .windows(2)
            .position(|w| Edge::new(w[0], w[1]).ok() == Some(e))
            .map(|i| self.origin[i])
    }

    pub fn reversed(&self) -> Strand {
        let mut verts = self.verts.clone();
        verts.reverse();
        let mut origin = self.origin.clone();
        origin.reverse();
        Strand { color: self.color, verts, origin }
    }

    /// Re-anchors origins at this level (used once a strand has been read
    /// back into parent coordinates).
    pub fn rebased(&self) -> Strand {
        Strand::new(self.color, self.verts.clone())
    }
}

/// A rainbow path at some recursion level: vertices plus a color per edge
/// (`None` on matching edges).
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Found {
    pub verts: Vec<Vertex>,
    pub colors: Vec<Option<usize>>,
}

impl Found {
    pub fn reversed(&self) -> Found {
        let mut verts = self.verts.clone();
        verts.reverse();
        let mut colors = self.colors.clone();
        colors.reverse();
        Found { verts, colors }
    }

    pub fn into_rainbow(self, f: &Matching) -> Result<RainbowAap> {
        let path = Aap::new(f, self.verts.clone())?;
        let colors = path_edges(&self.verts)
            .into_iter()
            .zip(self.colors)
            .filter_map(|(e, c)| c.map(|c| (e, c)))
            .collect();
        Ok(RainbowAap { path, colors })
    }

    pub fn from_rainbow(w: &RainbowAap) -> Found {
        let lookup: BTreeMap<Edge, usize> = w.colors.iter().copied().collect();
        let verts = w.path.vertices().to_vec();
        let colors = path_edges(&verts).into_iter().map(|e| lookup.get(&e).copied()).collect();
        Found { verts, colors }
    }
}

/// Checks a found path against the current matching and a membership test.
pub(crate) fn check_found(
    f: &Matching,
    found: &Found,
    contains: impl Fn(usize, Edge) -> bool,
) -> Result<()> {
    Aap::new(f, found.verts.clone())?;
    let edges = path_edges(&found.verts);
    if edges.len() != found.colors.len() {
        return Err(Error::Stalled("color list length mismatch".into()));
    }
    let mut used = BTreeSet::new();
    for (e, c) in edges.iter().zip(&found.colors) {
        match (f.contains(e), c) {
            (true, None) => {}
            (false, Some(c)) => {
                if !used.insert(*c) || !contains(*c, *e) {
                    return Err(Error::Stalled(format!("edge {e} badly colored by {c}")));
                }
            }
            _ => return Err(Error::Stalled(format!("edge {e} colored inconsistently"))),
        }
    }
    Ok(())
}

pub(crate) fn check_strands(f: &Matching, strands: &[Strand], found: &Found) -> Result<()> {
    let by_color: BTreeMap<usize, &Strand> = strands.iter().map(|s| (s.color, s)).collect();
    check_found(f, found, |c, e| by_color.get(&c).is_some_and(|s| s.contains_edge(e)))
}

/// Carries a found path one level up through the strands' origin maps.
///
/// Only the endpoints may change identity (a contracted vertex is replaced
/// by the real endpoint of the lifted edge); interior vertices are shared by
/// both levels.
pub(crate) fn lift_through_origins(found: &Found, strands: &[Strand], f_parent: &Matching) -> Found {
    let by_color: BTreeMap<usize, &Strand> = strands.iter().map(|s| (s.color, s)).collect();
    let edges = path_edges(&found.verts);
    let lifted: Vec<Edge> = edges
        .iter()
        .zip(&found.colors)
        .map(|(e, c)| match c {
            Some(c) => by_color[c].origin_of(*e).expect("colored edge lies on its strand"),
            None => {
                debug_assert!(f_parent.contains(e));
                *e
            }
        })
        .collect();
    let n = found.verts.len();
    let mut verts = found.verts.clone();
    if n >= 2 {
        verts[0] = lifted[0].other(found.verts[1]).unwrap_or(found.verts[0]);
        verts[n - 1] = lifted[n - 2].other(found.verts[n - 2]).unwrap_or(found.verts[n - 1]);
    }
    Found { verts, colors: found.colors.clone() }
}

/// Contracts the vertex set `cset` to the fresh vertex `w`. Each strand that
/// meets `cset` is cut at its first vertex in `cset`, read from an endpoint
/// outside `cset`, and that vertex becomes `w`.
pub(crate) fn contract_strands(strands: &[Strand], cset: &BTreeSet<Vertex>, w: Vertex) -> Result<Vec<Strand>> {
    strands
        .iter()
        .map(|s| {
            if !s.verts.iter().any(|v| cset.contains(v)) {
                return Ok(s.rebased());
            }
            let s = if cset.contains(&s.verts[0]) { s.reversed() } else { s.clone() };
            if cset.contains(&s.verts[0]) {
                return Err(Error::Stalled(format!("strand {} has both ends in the contracted set", s.color)));
            }
            let cut = s.verts.iter().position(|v| cset.contains(v)).unwrap();
            let mut verts = s.verts[..cut].to_vec();
            verts.push(w);
            let origin = path_edges(&s.verts[..=cut]);
            Ok(Strand { color: s.color, verts, origin })
        })
        .collect()
}

/// Removes the covered vertex `a` (partner `b`): strands through `ab` keep
/// only the part after `b`, read in the direction `a → b`.
pub(crate) fn delete_vertex(strands: &[Strand], a: Vertex, b: Vertex) -> Result<Vec<Strand>> {
    strands
        .iter()
        .map(|s| {
            let Some(pa) = s.verts.iter().position(|&v| v == a) else {
                return Ok(s.rebased());
            };
            let s = if pa + 1 < s.verts.len() && s.verts[pa + 1] == b {
                s.clone()
            } else if pa > 0 && s.verts[pa - 1] == b {
                s.reversed()
            } else {
                return Err(Error::Stalled(format!("strand {} meets {a} without its partner", s.color)));
            };
            let pb = s.verts.iter().position(|&v| v == b).unwrap();
            Ok(Strand::new(s.color, s.verts[pb..].to_vec()))
        })
        .collect()
}

pub(crate) fn fresh_vertex(f: &Matching, strands: &[Strand], floor: u32) -> Vertex {
    let top = strands
        .iter()
        .flat_map(|s| s.verts.iter().copied())
        .chain(f.vertices())
        .map(|v| v.0 + 1)
        .max()
        .unwrap_or(0);
    Vertex(top.max(floor))
}

/// Extends a path ending at a vertex of an odd alternating cycle to the
/// cycle's apex `cyc[0]` along the even side. Edge `i` of the cycle joins
/// `cyc[i]` and `cyc[i + 1]` and carries `colors[i]`.
pub(crate) fn walk_to_apex(found: &mut Found, cyc: &[Vertex], colors: &[Option<usize>]) -> Result<()> {
    let len = cyc.len();
    let y = *found.verts.last().ok_or_else(|| Error::Stalled("empty path".into()))?;
    let i = cyc.iter().position(|&c| c == y).ok_or_else(|| Error::Stalled("path end is off the cycle".into()))?;
    if i % 2 == 1 {
        for j in i..len {
            found.verts.push(cyc[(j + 1) % len]);
            found.colors.push(colors[j]);
        }
    } else {
        for j in (1..=i).rev() {
            found.verts.push(cyc[j - 1]);
            found.colors.push(colors[j - 1]);
        }
    }
    Ok(())
}
