//! Bounded search for families that break a rainbow-matching statement.
//!
//! A statement `(m, s) → k` says every `m` matchings of size `s` have a
//! rainbow matching of size `k`; `(m, q, s) → k` says the same for `m` edge
//! sets whose every union of `q` has a matching of size `s`. Families are
//! enumerated exhaustively up to isomorphism on a bounded vertex set, or
//! sampled from a seed. Every instance gets one JSON line.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::alternating::max_matching;
use crate::engine::UnionCheck;
use crate::error::{Error, Result};
use crate::gen::{random_bipartite_matching, random_matching, rng};
use crate::graph::{validate_matching, ColorFamily, Edge, EdgeSet, Vertex};
use crate::par;
use crate::solver::{check_matching_union, rainbow_matching_oracle, RainbowMatchingWitness};

/// Largest vertex bound accepted for exhaustive enumeration.
pub const EXHAUSTIVE_VERTEX_CAP: u32 = 10;
/// Largest number of color sequences an exhaustive run may visit.
pub const SEQUENCE_CAP: u64 = 5_000_000;

/// `a·n + b·t + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Lin {
    pub n: i64,
    pub t: i64,
    pub c: i64,
}

impl Lin {
    pub fn eval(self, n: usize, t: usize) -> Result<usize> {
        let v = self.n * n as i64 + self.t * t as i64 + self.c;
        usize::try_from(v).map_err(|_| Error::InvalidParameter(format!("expression evaluates to {v}")))
    }

    fn parse(s: &str) -> Result<Lin> {
        let bad = || Error::Parse(format!("cannot read {s:?} as a linear expression in n and t"));
        let mut out = Lin { n: 0, t: 0, c: 0 };
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad());
        }
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ if rest.len() == s.len() => (1, rest),
                _ => return Err(bad()),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            let digits = term.trim_end_matches(['n', 't']);
            let coef = if digits.is_empty() { 1 } else { digits.parse::<i64>().map_err(|_| bad())? };
            match &term[digits.len()..] {
                "" if !digits.is_empty() => out.c += sign * coef,
                "n" => out.n += sign * coef,
                "t" => out.t += sign * coef,
                _ => return Err(bad()),
            }
        }
        Ok(out)
    }
}

/// A parsed statement such as `(3n-3,n)->n` or `(3n-3+t,t+1,n)->n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Statement {
    pub text: String,
    pub colors: Lin,
    /// Union size for the cooperative form.
    pub union: Option<Lin>,
    pub size: Lin,
    pub target: Lin,
}

impl Statement {
    pub fn parse(s: &str) -> Result<Statement> {
        let bad = || Error::Parse(format!("statement {s:?} is not of the form (m,s)->k or (m,q,s)->k"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (lhs, rhs) = compact.split_once("->").ok_or_else(bad)?;
        let inner = lhs.strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or_else(bad)?;
        let parts: Vec<Lin> = inner.split(',').map(Lin::parse).collect::<Result<_>>()?;
        let target = Lin::parse(rhs)?;
        let (colors, union, size) = match parts[..] {
            [m, s] => (m, None, s),
            [m, q, s] => (m, Some(q), s),
            _ => return Err(bad()),
        };
        Ok(Statement { text: compact, colors, union, size, target })
    }

    pub fn is_cooperative(&self) -> bool {
        self.union.is_some()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum Mode {
    Exhaustive { vertices: u32 },
    Random { vertices: u32, count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExplorerJob {
    pub statement: Statement,
    pub n: usize,
    pub t: usize,
    pub bipartite: bool,
    pub mode: Mode,
    pub budget: u64,
}

/// Concrete sizes of a job.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Sizes {
    pub colors: usize,
    pub union: Option<usize>,
    pub size: usize,
    pub target: usize,
}

impl ExplorerJob {
    pub fn sizes(&self) -> Result<Sizes> {
        let st = &self.statement;
        let union = st.union.map(|q| q.eval(self.n, self.t)).transpose()?;
        let sizes = Sizes {
            colors: st.colors.eval(self.n, self.t)?,
            union,
            size: st.size.eval(self.n, self.t)?,
            target: st.target.eval(self.n, self.t)?,
        };
        if sizes.colors == 0 || union.is_some_and(|q| q == 0 || q > sizes.colors) {
            return Err(Error::InvalidParameter(format!("statement gives degenerate sizes {sizes:?}")));
        }
        Ok(sizes)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    CounterexampleCandidate,
    PreconditionFailed,
    Inconclusive,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub examined: usize,
    pub holds: usize,
    pub counterexample_candidates: usize,
    pub precondition_failed: usize,
    pub inconclusive: usize,
    /// Instances where the statement holds but some family with one color
    /// fewer does not.
    pub sharp: usize,
    /// Labelled sequences visited before isomorphism reduction.
    pub sequences: u64,
}

/// Per-instance result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub index: usize,
    pub family: ColorFamily,
    pub status: Status,
    pub witness: Option<RainbowMatchingWitness>,
    pub sharp: bool,
    pub note: Option<String>,
}

impl Finding {
    pub fn to_json(&self) -> Value {
        let fam: Vec<Vec<[u32; 2]>> = self.family.iter().map(|s| s.iter().map(|e| [e.lo().0, e.hi().0]).collect()).collect();
        let mut v = json!({
            "kind": "instance",
            "index": self.index,
            "family": fam,
            "status": self.status,
            "sharp": self.sharp,
        });
        if let Some(w) = &self.witness {
            v["witness"] = json!(w.assignment.pairs.iter().map(|(c, e)| json!({"color": c, "edge": [e.lo().0, e.hi().0]})).collect::<Vec<_>>());
        }
        if let Some(n) = &self.note {
            v["note"] = json!(n);
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub job: ExplorerJob,
    pub findings: Vec<Finding>,
    pub summary: Summary,
}

impl Report {
    /// JSON lines: one per instance in index order, then the summary.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for f in &self.findings {
            out.push_str(&f.to_json().to_string());
            out.push('\n');
        }
        let summary = json!({"kind": "summary", "job": self.job, "summary": self.summary});
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }

    pub fn candidates(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.status == Status::CounterexampleCandidate)
    }
}

pub fn run(job: &ExplorerJob) -> Result<Report> {
    let sizes = job.sizes()?;
    let (families, sequences) = match job.mode {
        Mode::Exhaustive { vertices } => exhaustive_families(&sizes, job.bipartite, vertices)?,
        Mode::Random { vertices, count, seed } => (random_families(&sizes, job.bipartite, vertices, count, seed)?, 0),
    };
    let indexed: Vec<(usize, ColorFamily)> = families.into_iter().enumerate().collect();
    let findings = par::map(&indexed, |(i, fam)| examine(*i, fam, &sizes, job.budget));
    let mut summary = Summary { examined: findings.len(), sequences, ..Summary::default() };
    for f in &findings {
        match f.status {
            Status::Holds => summary.holds += 1,
            Status::CounterexampleCandidate => summary.counterexample_candidates += 1,
            Status::PreconditionFailed => summary.precondition_failed += 1,
            Status::Inconclusive => summary.inconclusive += 1,
        }
        summary.sharp += f.sharp as usize;
    }
    Ok(Report { job: job.clone(), findings, summary })
}

fn examine(index: usize, fam: &ColorFamily, sizes: &Sizes, budget: u64) -> Finding {
    let mut out = Finding { index, family: fam.clone(), status: Status::Inconclusive, witness: None, sharp: false, note: None };
    let pre = match sizes.union {
        Some(q) => check_matching_union(fam, q, sizes.size, UnionCheck::Exhaustive),
        None => match fam.iter().position(|s| !validate_matching(s) || s.len() != sizes.size) {
            Some(c) => Err(Error::MalformedFamily(format!("color {c} is not a matching of size {}", sizes.size))),
            None => Ok(()),
        },
    };
    if let Err(e) = pre {
        out.status = Status::PreconditionFailed;
        out.note = Some(e.to_string());
        return out;
    }
    match rainbow_matching_oracle(fam, sizes.target, budget) {
        Ok(Some(w)) => {
            out.status = Status::Holds;
            out.witness = Some(w);
            if sizes.union.is_none() {
                out.sharp = (0..fam.len()).any(|drop| {
                    let rest: Vec<usize> = (0..fam.len()).filter(|&c| c != drop).collect();
                    matches!(rainbow_matching_oracle(&fam.select(&rest), sizes.target, budget), Ok(None))
                });
            }
        }
        Ok(None) => match rainbow_matching_by_edges(fam, sizes.target, budget) {
            Ok(None) => out.status = Status::CounterexampleCandidate,
            Ok(Some(_)) => out.note = Some("the two exhaustive searches disagree".into()),
            Err(e) => out.note = Some(format!("second pass: {e}")),
        },
        Err(e) => out.note = Some(e.to_string()),
    }
    out
}

/// Second exhaustive search, edge-first: every set of `size` disjoint edges
/// of the union, each tested for a system of distinct colors.
pub fn rainbow_matching_by_edges(fam: &ColorFamily, size: usize, budget: u64) -> Result<Option<RainbowMatchingWitness>> {
    let edges: Vec<Edge> = fam.union().into_iter().collect();
    let holders: Vec<Vec<usize>> = edges.iter().map(|e| (0..fam.len()).filter(|&c| fam.color(c).contains(e)).collect()).collect();
    let mut nodes = 0u64;
    let mut chosen = Vec::new();
    let mut used = BTreeSet::new();
    fn go(
        start: usize,
        size: usize,
        edges: &[Edge],
        holders: &[Vec<usize>],
        chosen: &mut Vec<usize>,
        used: &mut BTreeSet<Vertex>,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<Option<Vec<(usize, Edge)>>> {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        if chosen.len() == size {
            return Ok(distinct_colors(chosen, holders).map(|cs| cs.into_iter().zip(chosen.iter().map(|&i| edges[i])).collect()));
        }
        for i in start..edges.len() {
            let e = edges[i];
            if used.contains(&e.lo()) || used.contains(&e.hi()) {
                continue;
            }
            used.extend(e.ends());
            chosen.push(i);
            if let Some(w) = go(i + 1, size, edges, holders, chosen, used, nodes, budget)? {
                return Ok(Some(w));
            }
            chosen.pop();
            used.remove(&e.lo());
            used.remove(&e.hi());
        }
        Ok(None)
    }
    match go(0, size, &edges, &holders, &mut chosen, &mut used, &mut nodes, budget)? {
        Some(mut pairs) => {
            pairs.sort_by_key(|p| p.1);
            let matching = crate::graph::Matching::new(pairs.iter().map(|p| p.1).collect())?;
            Ok(Some(RainbowMatchingWitness { matching, assignment: crate::graph::RainbowSelection::new(pairs) }))
        }
        None => Ok(None),
    }
}

/// Distinct colors for the chosen edges by augmenting paths, if possible.
fn distinct_colors(chosen: &[usize], holders: &[Vec<usize>]) -> Option<Vec<usize>> {
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    fn try_assign(j: usize, chosen: &[usize], holders: &[Vec<usize>], owner: &mut BTreeMap<usize, usize>, seen: &mut BTreeSet<usize>) -> bool {
        for &c in &holders[chosen[j]] {
            if seen.insert(c) {
                let free = match owner.get(&c) {
                    None => true,
                    Some(&k) => try_assign(k, chosen, holders, owner, seen),
                };
                if free {
                    owner.insert(c, j);
                    return true;
                }
            }
        }
        false
    }
    for j in 0..chosen.len() {
        if !try_assign(j, chosen, holders, &mut owner, &mut BTreeSet::new()) {
            return None;
        }
    }
    let mut colors = vec![0; chosen.len()];
    for (c, j) in owner {
        colors[j] = c;
    }
    Some(colors)
}

/// All matchings with `size` edges on `0..vertices` (bipartite: left half to
/// right half), in lexicographic order.
pub fn all_matchings(vertices: u32, size: usize, bipartite: bool) -> Vec<EdgeSet> {
    let half = vertices / 2;
    let edges: Vec<Edge> = (0..vertices)
        .flat_map(|a| (a + 1..vertices).map(move |b| Edge::of(a, b)))
        .filter(|e| !bipartite || (e.lo().0 < half && e.hi().0 >= half && e.hi().0 < 2 * half))
        .collect();
    let mut out = Vec::new();
    fn go(start: usize, size: usize, edges: &[Edge], cur: &mut Vec<Edge>, out: &mut Vec<EdgeSet>) {
        if cur.len() == size {
            out.push(cur.iter().copied().collect());
            return;
        }
        for i in start..edges.len() {
            if cur.iter().all(|c| !c.meets(edges[i])) {
                cur.push(edges[i]);
                go(i + 1, size, edges, cur, out);
                cur.pop();
            }
        }
    }
    go(0, size, &edges, &mut Vec::new(), &mut out);
    out
}

/// Labels used so far form a prefix of each side.
#[derive(Clone, Copy)]
struct Used {
    left: u32,
    right: u32,
}

fn extends_prefix(set: &EdgeSet, used: Used, bipartite: bool, half: u32) -> Option<Used> {
    let vs: BTreeSet<u32> = set.iter().flat_map(|e| [e.lo().0, e.hi().0]).collect();
    let side = |lo: u32, hi: u32, prefix: u32| -> Option<u32> {
        let fresh: Vec<u32> = vs.iter().copied().filter(|&v| v >= lo + prefix && v < hi).collect();
        fresh.iter().enumerate().all(|(i, &v)| v == lo + prefix + i as u32).then_some(prefix + fresh.len() as u32)
    };
    if bipartite {
        Some(Used { left: side(0, half, used.left)?, right: side(half, 2 * half, used.right)? })
    } else {
        Some(Used { left: side(0, u32::MAX, used.left)?, right: 0 })
    }
}

fn exhaustive_families(sizes: &Sizes, bipartite: bool, vertices: u32) -> Result<(Vec<ColorFamily>, u64)> {
    if vertices > EXHAUSTIVE_VERTEX_CAP {
        return Err(Error::InvalidParameter(format!("exhaustive search is capped at {EXHAUSTIVE_VERTEX_CAP} vertices")));
    }
    let half = vertices / 2;
    // Cooperative colors range over all matchings up to the size bound,
    // including the empty one.
    let choices: Vec<EdgeSet> = match sizes.union {
        None => all_matchings(vertices, sizes.size, bipartite),
        Some(_) => (0..=sizes.size).flat_map(|s| all_matchings(vertices, s, bipartite)).collect(),
    };
    let estimate = (choices.len() as u64).saturating_pow(sizes.colors.saturating_sub(1) as u32);
    if estimate > SEQUENCE_CAP * 1000 {
        return Err(Error::InvalidParameter(format!(
            "about {estimate} color sequences; use random mode or fewer vertices"
        )));
    }
    let mut seen = BTreeSet::new();
    let mut families = Vec::new();
    let mut sequences = 0u64;
    let mut cur: Vec<usize> = Vec::new();
    fn go(
        cur: &mut Vec<usize>,
        used: Used,
        ctx: (&[EdgeSet], usize, bool, u32),
        seen: &mut BTreeSet<Vec<Vec<(u32, u32)>>>,
        families: &mut Vec<ColorFamily>,
        sequences: &mut u64,
    ) -> Result<()> {
        let (choices, m, bipartite, half) = ctx;
        if cur.len() == m {
            *sequences += 1;
            if *sequences > SEQUENCE_CAP {
                return Err(Error::InvalidParameter(format!("more than {SEQUENCE_CAP} color sequences")));
            }
            let fam: ColorFamily = cur.iter().map(|&i| choices[i].clone()).collect();
            if seen.insert(canonical_form(&fam)) {
                families.push(fam);
            }
            return Ok(());
        }
        for (i, set) in choices.iter().enumerate() {
            if let Some(next) = extends_prefix(set, used, bipartite, half) {
                cur.push(i);
                go(cur, next, ctx, seen, families, sequences)?;
                cur.pop();
            }
        }
        Ok(())
    }
    go(&mut cur, Used { left: 0, right: 0 }, (&choices, sizes.colors, bipartite, half), &mut seen, &mut families, &mut sequences)?;
    Ok((families, sequences))
}

fn random_families(sizes: &Sizes, bipartite: bool, vertices: u32, count: usize, seed: u64) -> Result<Vec<ColorFamily>> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut colors = Vec::with_capacity(sizes.colors);
        for _ in 0..sizes.colors {
            let size = match sizes.union {
                Some(_) => match r.gen_range(0..4) {
                    0 => 0,
                    1 => r.gen_range(0..=sizes.size),
                    _ => sizes.size,
                },
                None => sizes.size,
            };
            colors.push(if bipartite {
                random_bipartite_matching(&mut r, vertices / 2, size)?
            } else {
                random_matching(&mut r, vertices, size)?
            });
        }
        out.push(ColorFamily::new(colors));
    }
    Ok(out)
}

/// Canonical form under vertex relabelling and color reordering: the least
/// encoding over relabellings that respect a refined vertex partition.
pub fn canonical_form(fam: &ColorFamily) -> Vec<Vec<(u32, u32)>> {
    let verts: Vec<Vertex> = fam.vertices().into_iter().collect();
    let pos: BTreeMap<Vertex, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut mult: BTreeMap<(usize, usize), u32> = BTreeMap::new();
    let mut cover = vec![0u32; verts.len()];
    for set in fam.iter() {
        for e in set {
            let (a, b) = (pos[&e.lo()], pos[&e.hi()]);
            *mult.entry((a, b)).or_default() += 1;
            *mult.entry((b, a)).or_default() += 1;
            cover[a] += 1;
            cover[b] += 1;
        }
    }
    let mut class: Vec<u64> = cover.iter().map(|&c| c as u64).collect();
    loop {
        let keys: Vec<(u64, Vec<(u64, u32)>)> = (0..verts.len())
            .map(|v| {
                let mut nb: Vec<(u64, u32)> = mult.range((v, 0)..(v + 1, 0)).map(|(&(_, u), &m)| (class[u], m)).collect();
                nb.sort_unstable();
                (class[v], nb)
            })
            .collect();
        let ranks: BTreeMap<&(u64, Vec<(u64, u32)>), u64> =
            keys.iter().collect::<BTreeSet<_>>().into_iter().enumerate().map(|(i, k)| (k, i as u64)).collect();
        let next: Vec<u64> = keys.iter().map(|k| ranks[k]).collect();
        let stable = next.iter().collect::<BTreeSet<_>>().len() == class.iter().collect::<BTreeSet<_>>().len();
        class = next;
        if stable {
            break;
        }
    }
    let mut groups: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (v, &c) in class.iter().enumerate() {
        groups.entry(c).or_default().push(v);
    }
    let groups: Vec<Vec<usize>> = groups.into_values().collect();
    let encode = |label: &[u32]| -> Vec<Vec<(u32, u32)>> {
        let mut colors: Vec<Vec<(u32, u32)>> = fam
            .iter()
            .map(|s| {
                let mut es: Vec<(u32, u32)> = s
                    .iter()
                    .map(|e| {
                        let (a, b) = (label[pos[&e.lo()]], label[pos[&e.hi()]]);
                        (a.min(b), a.max(b))
                    })
                    .collect();
                es.sort_unstable();
                es
            })
            .collect();
        colors.sort_unstable();
        colors
    };
    let mut perms: Vec<Vec<usize>> = groups.clone();
    let mut label = vec![0u32; verts.len()];
    let mut best: Option<Vec<Vec<(u32, u32)>>> = None;
    loop {
        let mut next_label = 0u32;
        for g in &perms {
            for &v in g {
                label[v] = next_label;
                next_label += 1;
            }
        }
        let enc = encode(&label);
        if best.as_ref().is_none_or(|b| enc < *b) {
            best = Some(enc);
        }
        // Advance the odometer of per-class permutations.
        let mut i = 0;
        loop {
            if i == perms.len() {
                return best.unwrap_or_default();
            }
            if next_permutation(&mut perms[i]) {
                break;
            }
            i += 1;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        v.sort_unstable();
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// The three perfect matchings of `K_4` on the given vertices.
pub fn k4_family(vs: [u32; 4]) -> ColorFamily {
    let [a, b, c, d] = vs;
    ColorFamily::new(vec![
        [Edge::of(a, b), Edge::of(c, d)].into_iter().collect(),
        [Edge::of(a, c), Edge::of(b, d)].into_iter().collect(),
        [Edge::of(a, d), Edge::of(b, c)].into_iter().collect(),
    ])
}

/// The `K_4` family followed by `pad` empty colors.
pub fn k4_padded(pad: usize) -> ColorFamily {
    let mut fam = k4_family([0, 1, 2, 3]);
    for _ in 0..pad {
        fam.push(EdgeSet::new());
    }
    fam
}

/// Whether a family is the three perfect matchings of one `K_4`.
pub fn is_k4_family(fam: &ColorFamily) -> bool {
    let verts: Vec<u32> = fam.vertices().into_iter().map(|v| v.0).collect();
    verts.len() == 4 && canonical_form(fam) == canonical_form(&k4_family([0, 1, 2, 3]))
}

/// Result of [`classify_rainbow_free_triples`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Classification {
    /// Labelled triples examined after pruning.
    pub triples: u64,
    /// Rainbow-free triples found.
    pub rainbow_free: u64,
    /// Of those, how many are not the `K_4` family.
    pub other: u64,
    pub other_examples: Vec<Vec<Vec<(u32, u32)>>>,
    /// Triples the construction calls rainbow-free but the oracle does not.
    pub disagreements: u64,
}

/// Every triple of edge sets on `vertices` labelled vertices, each holding
/// two disjoint edges, with no rainbow matching of size 2. Two edges from
/// different colors must always meet, which bounds the search.
pub fn classify_rainbow_free_triples(vertices: u32) -> Classification {
    let edges: Vec<Edge> = (0..vertices).flat_map(|a| (a + 1..vertices).map(move |b| Edge::of(a, b))).collect();
    let has_two = |s: &[Edge]| s.iter().enumerate().any(|(i, e)| s[i + 1..].iter().any(|f| !e.meets(*f)));
    let subsets = |pool: &[Edge]| -> Vec<Vec<Edge>> {
        (0u64..1 << pool.len())
            .map(|mask| (0..pool.len()).filter(|i| mask >> i & 1 == 1).map(|i| pool[i]).collect::<Vec<_>>())
            .filter(|s| has_two(s))
            .collect()
    };
    let meeting = |pool: &[Edge], against: &[Edge]| -> Vec<Edge> {
        pool.iter().copied().filter(|e| against.iter().all(|f| e.meets(*f))).collect()
    };
    let firsts = subsets(&edges);
    let results: Vec<Classification> = par::map(&firsts, |e1| {
        let mut out = Classification::default();
        let pool2 = meeting(&edges, e1);
        for e2 in subsets(&pool2) {
            let pool3 = meeting(&pool2, &e2);
            for e3 in subsets(&pool3) {
                out.triples += 1;
                let fam = ColorFamily::new(vec![
                    e1.iter().copied().collect(),
                    e2.iter().copied().collect(),
                    e3.iter().copied().collect(),
                ]);
                // Pairwise meeting already rules out a rainbow pair; the
                // oracle confirms it independently.
                if max_matching(&fam.union()).len() < 2 || !matches!(rainbow_matching_oracle(&fam, 2, 1 << 20), Ok(None)) {
                    out.disagreements += 1;
                    continue;
                }
                out.rainbow_free += 1;
                if !is_k4_family(&fam) {
                    out.other += 1;
                    if out.other_examples.len() < 4 {
                        out.other_examples.push(canonical_form(&fam));
                    }
                }
            }
        }
        out
    });
    let mut total = Classification::default();
    for r in results {
        total.triples += r.triples;
        total.rainbow_free += r.rainbow_free;
        total.other += r.other;
        total.disagreements += r.disagreements;
        for ex in r.other_examples {
            if total.other_examples.len() < 4 {
                total.other_examples.push(ex);
            }
        }
    }
    total
}

#[cfg(test)]
mod tests;
