//! Instance files with string vertex labels, and labelled output.
//!
//! ```json
//! {"vertices": ["x", "u1", "v1", "y"], "colors": [[["x", "u1"]], [["v1", "y"]]]}
//! ```
//!
//! An optional `"matching"` field holds a matching `F` in the same edge
//! format, used by the path engine.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColorFamily, Edge, EdgeSet, Matching, Vertex};
use crate::solver::{RainbowMatchingWitness, SolveReport};

#[derive(Serialize, Deserialize)]
struct InstanceWire {
    vertices: Vec<String>,
    colors: Vec<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matching: Option<Vec<[String; 2]>>,
}

/// A color family together with the labels of its vertices; vertex `i` is
/// `labels[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub labels: Vec<String>,
    pub family: ColorFamily,
    pub matching: Option<Matching>,
}

impl Instance {
    /// Labels every vertex by its id.
    pub fn from_family(family: ColorFamily, matching: Option<Matching>) -> Instance {
        let top = family
            .vertices()
            .into_iter()
            .chain(matching.iter().flat_map(|m| m.vertices()))
            .map(|v| v.0 + 1)
            .max()
            .unwrap_or(0);
        Instance { labels: (0..top).map(|i| i.to_string()).collect(), family, matching }
    }

    pub fn with_labels(labels: Vec<String>, family: ColorFamily, matching: Option<Matching>) -> Result<Instance> {
        let inst = Instance { labels, family, matching };
        inst.check_labels()?;
        Ok(inst)
    }

    fn check_labels(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        if let Some(l) = self.labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::Parse(format!("vertex label {l:?} repeated")));
        }
        let n = self.labels.len() as u32;
        let in_range = |e: &Edge| e.hi().0 < n;
        let all_in = self.family.iter().flatten().all(in_range)
            && self.matching.as_ref().is_none_or(|m| m.edges().iter().all(in_range));
        if !all_in {
            return Err(Error::Parse("an edge uses a vertex without a label".into()));
        }
        Ok(())
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v.0 as usize]
    }

    fn edge_labels(&self, e: Edge) -> [String; 2] {
        [self.label(e.lo()).to_string(), self.label(e.hi()).to_string()]
    }

    pub fn parse(s: &str) -> Result<Instance> {
        let wire: InstanceWire = serde_json::from_str(s)?;
        let mut ids = BTreeMap::new();
        for (i, l) in wire.vertices.iter().enumerate() {
            if ids.insert(l.clone(), Vertex(i as u32)).is_some() {
                return Err(Error::Parse(format!("vertex label {l:?} repeated")));
            }
        }
        let edge = |pair: &[String; 2]| -> Result<Edge> {
            let id = |l: &String| ids.get(l).copied().ok_or_else(|| Error::Parse(format!("unknown vertex {l:?}")));
            Edge::new(id(&pair[0])?, id(&pair[1])?)
        };
        let mut colors = Vec::with_capacity(wire.colors.len());
        for (c, list) in wire.colors.iter().enumerate() {
            let mut set = EdgeSet::new();
            for pair in list {
                let e = edge(pair)?;
                if !set.insert(e) {
                    return Err(Error::Parse(format!("color {c} lists edge {:?} twice", pair)));
                }
            }
            colors.push(set);
        }
        let matching = match &wire.matching {
            Some(list) => Some(Matching::new(list.iter().map(edge).collect::<Result<_>>()?)?),
            None => None,
        };
        Ok(Instance { labels: wire.vertices, family: ColorFamily::new(colors), matching })
    }

    pub fn to_json(&self) -> Result<String> {
        let wire = InstanceWire {
            vertices: self.labels.clone(),
            colors: self.family.iter().map(|s| s.iter().map(|&e| self.edge_labels(e)).collect()).collect(),
            matching: self.matching.as_ref().map(|m| m.edges().iter().map(|&e| self.edge_labels(e)).collect()),
        };
        Ok(serde_json::to_string_pretty(&wire)?)
    }

    pub fn witness_json(&self, w: &RainbowMatchingWitness) -> serde_json::Value {
        serde_json::json!({
            "matching": w.matching.edges().iter().map(|&e| self.edge_labels(e)).collect::<Vec<_>>(),
            "assignment": w.assignment.pairs.iter()
                .map(|&(c, e)| serde_json::json!({"color": c, "edge": self.edge_labels(e)}))
                .collect::<Vec<_>>(),
        })
    }

    /// Reads a witness in the format of [`Instance::witness_json`].
    pub fn parse_witness(&self, v: &serde_json::Value) -> Result<RainbowMatchingWitness> {
        #[derive(Deserialize)]
        struct Pair {
            color: usize,
            edge: [String; 2],
        }
        #[derive(Deserialize)]
        struct Wire {
            matching: Vec<[String; 2]>,
            assignment: Vec<Pair>,
        }
        let wire: Wire = serde_json::from_value(v.clone())?;
        let ids: BTreeMap<&str, Vertex> = self.labels.iter().enumerate().map(|(i, l)| (l.as_str(), Vertex(i as u32))).collect();
        let edge = |p: &[String; 2]| -> Result<Edge> {
            let id = |l: &String| ids.get(l.as_str()).copied().ok_or_else(|| Error::Parse(format!("unknown vertex {l:?}")));
            Edge::new(id(&p[0])?, id(&p[1])?)
        };
        let matching = Matching::new(wire.matching.iter().map(edge).collect::<Result<_>>()?)?;
        let pairs = wire.assignment.iter().map(|p| Ok((p.color, edge(&p.edge)?))).collect::<Result<_>>()?;
        Ok(RainbowMatchingWitness { matching, assignment: crate::graph::RainbowSelection::new(pairs) })
    }

    pub fn report_json(&self, w: Option<&RainbowMatchingWitness>, report: &SolveReport, trace: bool) -> serde_json::Value {
        let mut v = serde_json::json!({
            "outcome": report.outcome,
            "witness": w.map(|w| self.witness_json(w)),
        });
        if trace {
            v["trace"] = serde_json::to_value(&report.trace).expect("plain data");
            v["permutation"] = serde_json::to_value(&report.permutation).expect("plain data");
            v["stats"] = serde_json::to_value(&report.stats).expect("plain data");
        }
        v
    }
}
