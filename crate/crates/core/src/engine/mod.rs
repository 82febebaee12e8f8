//! Decision procedures: a rainbow augmenting path or a badge certificate.

mod cooperative;
mod decide;
pub mod oracle;
mod search;
mod strand;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::alternating::{Aap, RainbowAap};
use crate::badge::{verify_badge, BadgeCertificate, SlotAssignment};
use crate::error::{Error, Result};
use crate::graph::{ColorFamily, Edge, EdgeSet, Matching, Vertex};

pub use cooperative::{check_union_condition, cooperative_decide, cooperative_decide_with, UnionCheck};
pub use oracle::{rainbow_aap_oracle, DEFAULT_BUDGET};

use decide::{assemble, Engine, Out, StripCert, Tri};
use strand::{Found, Strand};

/// Outcome of a decision procedure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Witness(RainbowAap),
    Certificate(BadgeCertificate),
}

impl Decision {
    pub fn is_witness(&self) -> bool {
        matches!(self, Decision::Witness(_))
    }

    pub fn witness(&self) -> Option<&RainbowAap> {
        match self {
            Decision::Witness(w) => Some(w),
            Decision::Certificate(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&BadgeCertificate> {
        match self {
            Decision::Certificate(c) => Some(c),
            Decision::Witness(_) => None,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&DecisionWire::from(self))?)
    }

    /// Parses a decision; a witness path is re-validated against `f`.
    pub fn from_json(f: &Matching, s: &str) -> Result<Decision> {
        match serde_json::from_str::<DecisionWire>(s)? {
            DecisionWire::Witness { vertices, colors } => {
                let path = Aap::new(f, vertices)?;
                Ok(Decision::Witness(RainbowAap { path, colors: colors.into_iter().map(|c| (c.edge, c.color)).collect() }))
            }
            DecisionWire::Certificate { certificate } => Ok(Decision::Certificate(certificate)),
        }
    }
}

impl Serialize for Decision {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DecisionWire::from(self).serialize(s)
    }
}

#[derive(Serialize, Deserialize)]
pub struct ColoredEdge {
    pub edge: Edge,
    pub color: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum DecisionWire {
    Witness { vertices: Vec<Vertex>, colors: Vec<ColoredEdge> },
    Certificate { certificate: BadgeCertificate },
}

impl From<&Decision> for DecisionWire {
    fn from(d: &Decision) -> Self {
        match d {
            Decision::Witness(w) => DecisionWire::Witness {
                vertices: w.path.vertices().to_vec(),
                colors: w.colors.iter().map(|&(edge, color)| ColoredEdge { edge, color }).collect(),
            },
            Decision::Certificate(c) => DecisionWire::Certificate { certificate: c.clone() },
        }
    }
}

/// Counters describing how a decision was reached.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EngineStats {
    pub calls: u64,
    pub triangles: u64,
    pub long_cycles: u64,
    /// Levels where the constructive step stalled and a direct search at
    /// that level finished the job.
    pub recoveries: u64,
    pub max_depth: usize,
    pub cases: BTreeMap<String, u64>,
    pub recovery_notes: Vec<String>,
}

impl EngineStats {
    pub fn absorb(&mut self, other: &EngineStats) {
        self.calls += other.calls;
        self.triangles += other.triangles;
        self.long_cycles += other.long_cycles;
        self.recoveries += other.recoveries;
        self.max_depth = self.max_depth.max(other.max_depth);
        for (k, v) in &other.cases {
            *self.cases.entry(k.clone()).or_default() += v;
        }
        for n in &other.recovery_notes {
            if self.recovery_notes.len() < 16 {
                self.recovery_notes.push(n.clone());
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineOptions {
    /// Node limit for any fallback search.
    pub budget: u64,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { budget: DEFAULT_BUDGET }
    }
}

/// Reads every color as an `F`-AAP vertex sequence, starting from its
/// smaller end.
pub fn family_paths(f: &Matching, family: &ColorFamily) -> Result<Vec<Vec<Vertex>>> {
    family
        .iter()
        .enumerate()
        .map(|(i, set)| {
            let verts = path_of(set).map_err(|m| Error::MalformedFamily(format!("color {i}: {m}")))?;
            Aap::new(f, verts.clone()).map_err(|e| Error::MalformedFamily(format!("color {i}: {e}")))?;
            Ok(verts)
        })
        .collect()
}

/// Vertex sequence of an edge set forming a single simple path.
pub(crate) fn path_of(set: &EdgeSet) -> std::result::Result<Vec<Vertex>, String> {
    if set.is_empty() {
        return Err("empty".into());
    }
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for e in set {
        adj.entry(e.lo()).or_default().push(e.hi());
        adj.entry(e.hi()).or_default().push(e.lo());
    }
    if adj.values().any(|n| n.len() > 2) {
        return Err("a vertex has degree above 2".into());
    }
    let start = adj
        .iter()
        .find(|(_, n)| n.len() == 1)
        .map(|(v, _)| *v)
        .ok_or("edges form a cycle")?;
    let mut verts = vec![start];
    let mut prev = None;
    let mut cur = start;
    while let Some(&next) = adj[&cur].iter().find(|&&x| Some(x) != prev) {
        verts.push(next);
        prev = Some(cur);
        cur = next;
        if verts.len() > adj.len() {
            return Err("edges form a cycle".into());
        }
    }
    if verts.len() != adj.len() {
        return Err("edges are not connected".into());
    }
    Ok(verts)
}

fn strands_of(f: &Matching, family: &ColorFamily) -> Result<Vec<Strand>> {
    Ok(family_paths(f, family)?.into_iter().enumerate().map(|(i, v)| Strand::new(i, v)).collect())
}

/// Decides whether a family of `F`-AAPs has a rainbow `F`-AAP.
///
/// With at least `2|F|` paths the answer is constructive: a rainbow path, or
/// (at exactly `2|F|`) a badge certificate. Both are checked before return.
pub fn rainbow_aap_or_badge(f: &Matching, family: &ColorFamily) -> Result<Decision> {
    rainbow_aap_or_badge_with(f, family, EngineOptions::default()).map(|(d, _)| d)
}

pub fn rainbow_aap_or_badge_with(
    f: &Matching,
    family: &ColorFamily,
    opts: EngineOptions,
) -> Result<(Decision, EngineStats)> {
    let strands = strands_of(f, family)?;
    let k = f.len();
    let mut eng = Engine::new(opts.budget, 2 * (k + 1));
    if strands.len() < 2 * k {
        // Outside the range where absence has a certificate.
        return match eng.recover(f, &strands, "fewer than 2|F| paths".into()) {
            Ok(Out::Witness(found)) => Ok((finish_witness(f, family, found)?, eng.stats)),
            Ok(Out::Badge(_)) | Err(Error::Stalled(_)) => {
                Err(Error::TooFewColors { got: strands.len(), need: 2 * k })
            }
            Err(e) => Err(e),
        };
    }
    let out = eng.decide(f, &strands, 0)?;
    let d = finish(f, family, out, Vec::new(), &BTreeMap::new())?;
    Ok((d, eng.stats))
}

fn finish_witness(f: &Matching, family: &ColorFamily, found: Found) -> Result<Decision> {
    let w = found.into_rainbow(f)?;
    w.check(f, family).map_err(|m| Error::Stalled(format!("witness failed its final check: {m}")))?;
    Ok(Decision::Witness(w))
}

fn finish(
    f: &Matching,
    family: &ColorFamily,
    out: Out,
    j_set: Vec<usize>,
    edits: &BTreeMap<usize, crate::badge::PathEdit>,
) -> Result<Decision> {
    match out {
        Out::Witness(found) => finish_witness(f, family, found),
        Out::Badge(certs) => {
            let cert = certificate_of(&certs, j_set, edits)?;
            let v = verify_badge(f, family, &cert);
            if !v.ok {
                return Err(Error::Stalled(format!("certificate failed verification: {}", v.reason.unwrap_or_default())));
            }
            Ok(Decision::Certificate(cert))
        }
    }
}

fn certificate_of(
    certs: &[StripCert],
    j_set: Vec<usize>,
    edits: &BTreeMap<usize, crate::badge::PathEdit>,
) -> Result<BadgeCertificate> {
    let (badge, slot_colors) = assemble(certs)?;
    let mut color_map: Vec<SlotAssignment> = badge
        .slots()
        .into_iter()
        .zip(slot_colors)
        .map(|(slot, color)| SlotAssignment { color, slot })
        .collect();
    color_map.sort_by_key(|a| a.color);
    let edits = edits.iter().filter(|(_, e)| !e.is_empty()).map(|(c, e)| (*c, e.clone())).collect();
    Ok(BadgeCertificate { badge, color_map, j_set, edits })
}

/// Result of [`find_rainbow_triangle`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TriangleOutcome {
    /// `ab ∈ F`, `v` uncovered, `va` from color `colors[0]` and `bv` from
    /// color `colors[1]`.
    Triangle { v: Vertex, a: Vertex, b: Vertex, colors: [usize; 2] },
    Path(RainbowAap),
}

/// Finds a rainbow alternating triangle through an uncovered vertex, or a
/// rainbow `F`-AAP. The family must hold exactly `2|F|` `F`-AAPs.
pub fn find_rainbow_triangle(f: &Matching, family: &ColorFamily) -> Result<TriangleOutcome> {
    if family.len() != 2 * f.len() {
        return Err(Error::MalformedFamily(format!(
            "{} paths given, a triangle search needs exactly {}",
            family.len(),
            2 * f.len()
        )));
    }
    let strands = strands_of(f, family)?;
    let mut eng = Engine::new(DEFAULT_BUDGET, 2 * (f.len() + 1));
    let tri = match eng.find_triangle(f, &strands, 0) {
        Err(Error::Stalled(m)) => {
            return match eng.recover(f, &strands, m.clone())? {
                Out::Witness(found) => Ok(TriangleOutcome::Path(finish_witness(f, family, found)?.witness().cloned().unwrap())),
                Out::Badge(_) => Err(Error::Stalled(m)),
            }
        }
        other => other?,
    };
    match tri {
        Tri::Witness(found) => {
            let Decision::Witness(w) = finish_witness(f, family, found)? else { unreachable!() };
            Ok(TriangleOutcome::Path(w))
        }
        Tri::Triangle { v, a, b, ta, tb } => {
            let (va, bv) = (Edge::new(v, a)?, Edge::new(b, v)?);
            let ok = f.partner(a) == Some(b)
                && !f.covers(v)
                && ta != tb
                && family.color(ta).contains(&va)
                && family.color(tb).contains(&bv);
            if !ok {
                return Err(Error::Stalled("triangle failed its final check".into()));
            }
            Ok(TriangleOutcome::Triangle { v, a, b, colors: [ta, tb] })
        }
    }
}
