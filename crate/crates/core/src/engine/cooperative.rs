//! Cooperative variant: arbitrary edge sets, any `t + 1` of which together
//! contain an `F`-AAP.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::alternating::{find_f_aap, path_edges};
use crate::badge::PathEdit;
use crate::error::{Error, Result};
use crate::graph::{ColorFamily, Edge, EdgeSet, Matching, Vertex};

use super::decide::{extend_into, Engine, Out, StripCert};
use super::search::{self, SearchLimit};
use super::strand::{check_found, walk_to_apex, Found, Strand};
use super::{finish, Decision, EngineOptions, EngineStats};

/// How the union precondition is checked before deciding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnionCheck {
    /// Every `(t+1)`-subset when there are at most `limit` of them, otherwise
    /// `samples` random subsets drawn from `seed`.
    Auto { limit: u64, samples: usize, seed: u64 },
    Exhaustive,
    Skip,
}

impl Default for UnionCheck {
    fn default() -> Self {
        UnionCheck::Auto { limit: 100_000, samples: 1_000, seed: 0 }
    }
}

fn binomial(n: usize, r: usize) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u64, |acc, i| acc.saturating_mul((n - i) as u64) / (i as u64 + 1))
}

fn violates(f: &Matching, sets: &ColorFamily, idx: &[usize]) -> bool {
    find_f_aap(f, &sets.union_of(idx)).is_none()
}

/// Checks that the union of every `t + 1` sets contains an `F`-AAP.
pub fn check_union_condition(f: &Matching, sets: &ColorFamily, t: usize, mode: UnionCheck) -> Result<()> {
    let m = sets.len();
    let q = t + 1;
    if q > m || mode == UnionCheck::Skip {
        return Ok(());
    }
    let exhaustive = match mode {
        UnionCheck::Exhaustive => true,
        UnionCheck::Auto { limit, .. } => binomial(m, q) <= limit,
        UnionCheck::Skip => unreachable!(),
    };
    if exhaustive {
        let mut idx: Vec<usize> = (0..q).collect();
        loop {
            if violates(f, sets, &idx) {
                return Err(Error::UnionConditionViolated { indices: idx });
            }
            let Some(p) = (0..q).rev().find(|&p| idx[p] < m - q + p) else { return Ok(()) };
            idx[p] += 1;
            for r in p + 1..q {
                idx[r] = idx[r - 1] + 1;
            }
        }
    }
    let UnionCheck::Auto { samples, seed, .. } = mode else { unreachable!() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let mut idx = sample(&mut rng, m, q).into_vec();
        idx.sort_unstable();
        if violates(f, sets, &idx) {
            return Err(Error::UnionConditionViolated { indices: idx });
        }
    }
    Ok(())
}

/// Decides the cooperative statement for `sets` with parameter `t`,
/// checking the union precondition with the default strategy.
pub fn cooperative_decide(f: &Matching, sets: &ColorFamily, t: usize) -> Result<Decision> {
    cooperative_decide_with(f, sets, t, EngineOptions::default(), UnionCheck::default()).map(|(d, _)| d)
}

pub fn cooperative_decide_with(
    f: &Matching,
    sets: &ColorFamily,
    t: usize,
    opts: EngineOptions,
    check: UnionCheck,
) -> Result<(Decision, EngineStats)> {
    check_union_condition(f, sets, t, check)?;
    let k = f.len();
    let m = sets.len();
    let mut eng = Engine::new(opts.budget, 2 * (k + t + 1));
    let level: Vec<CSet> =
        sets.iter().enumerate().map(|(color, e)| CSet { color, edges: e.clone(), origin: BTreeMap::new() }).collect();
    if m < 2 * k + t {
        let colors: Vec<(usize, EdgeSet)> = level.iter().map(|s| (s.color, s.edges.clone())).collect();
        return match search::rainbow_path(f, &colors, SearchLimit { nodes: opts.budget }) {
            Err(()) => Err(Error::BudgetExceeded(opts.budget)),
            Ok(Some(found)) => Ok((finish(f, sets, Out::Witness(found), Vec::new(), &BTreeMap::new())?, eng.stats)),
            Ok(None) => Err(Error::TooFewColors { got: m, need: 2 * k + t }),
        };
    }
    let mut co = Coop { eng: &mut eng };
    let out = co.decide(f, &level, t, 0)?;
    let d = match out {
        CoOut::Witness(found) => finish(f, sets, Out::Witness(found), Vec::new(), &BTreeMap::new())?,
        CoOut::Cert { certs, j_set, edits } => finish(f, sets, Out::Badge(certs), j_set, &edits)?,
    };
    Ok((d, eng.stats))
}

#[derive(Clone, Debug)]
struct CSet {
    color: usize,
    edges: EdgeSet,
    /// Edge one level up behind each rewritten edge; absent means unchanged.
    origin: BTreeMap<Edge, Edge>,
}

impl CSet {
    fn origin_of(&self, e: Edge) -> Edge {
        self.origin.get(&e).copied().unwrap_or(e)
    }

    fn rebased(&self) -> CSet {
        CSet { color: self.color, edges: self.edges.clone(), origin: BTreeMap::new() }
    }
}

enum CoOut {
    Witness(Found),
    Cert { certs: Vec<StripCert>, j_set: Vec<usize>, edits: BTreeMap<usize, PathEdit> },
}

struct Coop<'a> {
    eng: &'a mut Engine,
}

fn stalled(msg: impl Into<String>) -> Error {
    Error::Stalled(msg.into())
}

fn contract(sets: &[CSet], cset: &BTreeSet<Vertex>, apex: Vertex, w: Vertex) -> Vec<CSet> {
    sets.iter()
        .map(|s| {
            let mut edges = EdgeSet::new();
            let mut origin = BTreeMap::new();
            for &e in &s.edges {
                match (cset.contains(&e.lo()), cset.contains(&e.hi())) {
                    (true, true) => {}
                    (false, false) => {
                        edges.insert(e);
                    }
                    (lo_in, _) => {
                        let out = if lo_in { e.hi() } else { e.lo() };
                        let ne = Edge::new(out, w).expect("w is fresh");
                        edges.insert(ne);
                        // Prefer an origin at the apex: nothing to append then.
                        let keep = origin.get(&ne).is_some_and(|o: &Edge| o.touches(apex));
                        if !keep {
                            origin.insert(ne, e);
                        }
                    }
                }
            }
            CSet { color: s.color, edges, origin }
        })
        .collect()
}

/// Rewrites the end at `w` (if any) back to the real endpoint.
fn lift(found: Found, level: &[CSet], w: Vertex) -> Result<Found> {
    if !found.verts.contains(&w) {
        return Ok(found);
    }
    let mut found = if found.verts[0] == w { found.reversed() } else { found };
    let n = found.verts.len();
    let p = found.verts[n - 2];
    let c = found.colors[n - 2].ok_or_else(|| stalled("matching edge at the contracted vertex"))?;
    let set = level.iter().find(|s| s.color == c).ok_or_else(|| stalled("unknown color"))?;
    let o = set.origin_of(Edge::new(p, w)?);
    found.verts[n - 1] = o.other(p).ok_or_else(|| stalled("origin misses the path"))?;
    Ok(found)
}

fn top_label(f: &Matching, sets: &[CSet]) -> u32 {
    sets.iter()
        .flat_map(|s| s.edges.iter().flat_map(|e| e.ends()))
        .chain(f.vertices())
        .map(|v| v.0 + 1)
        .max()
        .unwrap_or(0)
}

impl Coop<'_> {
    fn decide(&mut self, f: &Matching, sets: &[CSet], t: usize, depth: usize) -> Result<CoOut> {
        if depth > self.eng.depth_limit() {
            return Err(Error::DepthExceeded(self.eng.depth_limit()));
        }
        self.eng.stats.calls += 1;
        let attempt = self.decide_inner(f, sets, t, depth).and_then(|o| {
            self.check(f, sets, &o)?;
            Ok(o)
        });
        match attempt {
            Err(Error::Stalled(msg)) => {
                let o = self.recover(f, sets, t, msg)?;
                self.check(f, sets, &o)?;
                Ok(o)
            }
            other => other,
        }
    }

    fn check(&self, f: &Matching, sets: &[CSet], out: &CoOut) -> Result<()> {
        let by: BTreeMap<usize, &CSet> = sets.iter().map(|s| (s.color, s)).collect();
        match out {
            CoOut::Witness(found) => check_found(f, found, |c, e| by.get(&c).is_some_and(|s| s.edges.contains(&e))),
            CoOut::Cert { certs, j_set, edits } => {
                let mut local: Vec<usize> = sets.iter().map(|s| s.color).collect();
                local.sort_unstable();
                let index = |c: usize| local.binary_search(&c).map_err(|_| stalled(format!("unknown color {c}")));
                let fam: ColorFamily = local.iter().map(|c| by[c].edges.clone()).collect();
                let renamed: Vec<StripCert> = certs
                    .iter()
                    .map(|c| {
                        Ok(StripCert {
                            strip: c.strip.clone(),
                            a: c.a.iter().map(|&x| index(x)).collect::<Result<_>>()?,
                            b: c.b.iter().map(|&x| index(x)).collect::<Result<_>>()?,
                        })
                    })
                    .collect::<Result<_>>()?;
                let j: Vec<usize> = j_set.iter().map(|&x| index(x)).collect::<Result<_>>()?;
                let ed: BTreeMap<usize, PathEdit> =
                    edits.iter().map(|(c, e)| Ok((index(*c)?, e.clone()))).collect::<Result<_>>()?;
                finish(f, &fam, Out::Badge(renamed), j, &ed).map(|_| ()).map_err(|e| stalled(e.to_string()))
            }
        }
    }

    fn recover(&mut self, f: &Matching, sets: &[CSet], t: usize, msg: String) -> Result<CoOut> {
        self.eng.stats.recoveries += 1;
        if self.eng.stats.recovery_notes.len() < 16 {
            self.eng.stats.recovery_notes.push(msg.clone());
        }
        let colors: Vec<(usize, EdgeSet)> = sets.iter().map(|s| (s.color, s.edges.clone())).collect();
        match search::rainbow_path(f, &colors, SearchLimit { nodes: self.eng_budget() }) {
            Err(()) => Err(Error::BudgetExceeded(self.eng_budget())),
            Ok(Some(found)) => Ok(CoOut::Witness(found)),
            Ok(None) => self.recognize(f, sets, t).ok_or_else(|| stalled(msg)),
        }
    }

    fn eng_budget(&self) -> u64 {
        self.eng.budget()
    }

    /// Reads a rainbow-free family as `t` sets inside `F` plus a generalized
    /// badge: each other set's path is its non-`F` edges with the `F` edges
    /// joining them.
    fn recognize(&mut self, f: &Matching, sets: &[CSet], t: usize) -> Option<CoOut> {
        let j_set: Vec<usize> = sets.iter().filter(|s| s.edges.is_subset(f.edges())).map(|s| s.color).collect();
        if j_set.len() != t || sets.len() != 2 * f.len() + t {
            return None;
        }
        let mut strands = Vec::new();
        let mut edits = BTreeMap::new();
        for s in sets.iter().filter(|s| !j_set.contains(&s.color)) {
            let free: EdgeSet = s.edges.iter().filter(|e| !f.contains(e)).copied().collect();
            let touched: BTreeSet<Vertex> = free.iter().flat_map(|e| e.ends()).collect();
            let mut path = free.clone();
            path.extend(f.edges().iter().filter(|e| touched.contains(&e.lo()) && touched.contains(&e.hi())));
            let verts = super::path_of(&path).ok()?;
            let on_path: EdgeSet = path_edges(&verts).into_iter().collect();
            edits.insert(
                s.color,
                PathEdit {
                    added: s.edges.difference(&on_path).copied().collect(),
                    removed: on_path.difference(&s.edges).copied().collect(),
                },
            );
            strands.push(Strand::new(s.color, verts));
        }
        let paths: Vec<(usize, Vec<Vertex>)> = strands.iter().map(|s| (s.color, s.verts.clone())).collect();
        let cert = crate::badge::recognize_badge(f, &paths)?;
        let certs = cert
            .badge
            .strips()
            .iter()
            .enumerate()
            .map(|(i, strip)| {
                let on = |side| {
                    cert.color_map.iter().filter(|m| m.slot.strip == i && m.slot.side == side).map(|m| m.color).collect()
                };
                StripCert { strip: strip.clone(), a: on(crate::badge::Side::A), b: on(crate::badge::Side::B) }
            })
            .collect();
        Some(CoOut::Cert { certs, j_set, edits })
    }

    fn decide_inner(&mut self, f: &Matching, sets: &[CSet], t: usize, depth: usize) -> Result<CoOut> {
        let k = f.len();
        let m = sets.len();
        let mut sets = sets.to_vec();
        sets.sort_by_key(|s| s.color);
        if let Some(s) = sets.iter().find(|s| s.edges.iter().any(|e| !f.covers(e.lo()) && !f.covers(e.hi()))) {
            let e = *s.edges.iter().find(|e| !f.covers(e.lo()) && !f.covers(e.hi())).unwrap();
            return Ok(CoOut::Witness(Found { verts: vec![e.lo(), e.hi()], colors: vec![Some(s.color)] }));
        }
        let j: Vec<usize> = sets.iter().filter(|s| s.edges.is_subset(f.edges())).map(|s| s.color).collect();
        if j.len() > t {
            return Err(Error::UnionConditionViolated { indices: j[..=t].to_vec() });
        }
        if k == 0 {
            // No edge at all outside the `t` empty sets.
            return if m == t {
                Ok(CoOut::Cert { certs: Vec::new(), j_set: j, edits: BTreeMap::new() })
            } else {
                Err(stalled("no edges and too many sets"))
            };
        }
        if t == 0 {
            return self.via_paths(f, &sets, &j, depth);
        }
        if m > 2 * k + t {
            self.eng.note("coop surplus");
            let first = self.decide(f, &sets[..2 * k + t], t, depth + 1)?;
            let CoOut::Cert { j_set, .. } = &first else { return Ok(first) };
            let drop = j_set[0];
            let alt: Vec<CSet> = sets[..=2 * k + t].iter().filter(|s| s.color != drop).cloned().collect();
            let second = self.decide(f, &alt, t, depth + 1)?;
            let CoOut::Cert { j_set: j2, .. } = &second else { return Ok(second) };
            let mut all: Vec<usize> = j_set.iter().chain(j2).copied().collect::<BTreeSet<_>>().into_iter().collect();
            all.truncate(t + 1);
            return Err(Error::UnionConditionViolated { indices: all });
        }
        if j.len() == t {
            return self.via_paths(f, &sets, &j, depth);
        }
        if let Some(&drop) = j.first() {
            self.eng.note("coop drop inside-F set");
            let rest: Vec<CSet> = sets.iter().filter(|s| s.color != drop).cloned().collect();
            return match self.decide(f, &rest, t - 1, depth + 1)? {
                CoOut::Witness(w) => Ok(CoOut::Witness(w)),
                CoOut::Cert { .. } => Err(stalled("fewer inside-F sets than t, yet a certificate")),
            };
        }
        self.no_inside_sets(f, &sets, t, depth)
    }

    /// `t = 0`, or exactly `t` sets inside `F`: one AAP per other set, then
    /// the path engine, then the one-edge extension for leftover edges.
    fn via_paths(&mut self, f: &Matching, sets: &[CSet], j: &[usize], depth: usize) -> Result<CoOut> {
        self.eng.note("coop via paths");
        let mut strands = Vec::new();
        for s in sets.iter().filter(|s| !j.contains(&s.color)) {
            let p = find_f_aap(f, &s.edges).ok_or_else(|| {
                let mut idx = j.to_vec();
                idx.push(s.color);
                idx.sort_unstable();
                Error::UnionConditionViolated { indices: idx }
            })?;
            strands.push(Strand::new(s.color, p.vertices().to_vec()));
        }
        let certs = match self.eng.decide(f, &strands, depth + 1)? {
            Out::Witness(w) => return Ok(CoOut::Witness(w)),
            Out::Badge(certs) => certs,
        };
        let mut edits = BTreeMap::new();
        for (s, st) in sets.iter().filter(|s| !j.contains(&s.color)).zip(&strands) {
            let on_path: EdgeSet = path_edges(&st.verts).into_iter().collect();
            if let Some(&e) = s.edges.iter().find(|e| !f.contains(e) && !on_path.contains(e)) {
                self.eng.note("coop extra edge");
                return extend_into(&certs, s.color, e).map(CoOut::Witness);
            }
            edits.insert(
                s.color,
                PathEdit {
                    added: s.edges.difference(&on_path).copied().collect(),
                    removed: on_path.difference(&s.edges).copied().collect(),
                },
            );
        }
        Ok(CoOut::Cert { certs, j_set: j.to_vec(), edits })
    }

    /// `0 < t`, no set inside `F`, exactly `2|F| + t` sets: always a path.
    fn no_inside_sets(&mut self, f: &Matching, sets: &[CSet], t: usize, depth: usize) -> Result<CoOut> {
        // Lowest set with an edge `va`, `v` uncovered.
        let (q, va) = sets
            .iter()
            .find_map(|s| s.edges.iter().find(|e| f.covers(e.lo()) != f.covers(e.hi())).map(|e| (s.color, *e)))
            .ok_or_else(|| Error::UnionConditionViolated { indices: sets.iter().take(t + 1).map(|s| s.color).collect() })?;
        let (v, a) = if f.covers(va.lo()) { (va.hi(), va.lo()) } else { (va.lo(), va.hi()) };
        let b = f.partner(a).expect("a is covered");
        let vb = Edge::new(v, b)?;
        let by: BTreeMap<usize, &CSet> = sets.iter().map(|s| (s.color, s)).collect();

        if let Some(p) = sets.iter().find(|s| s.color != q && s.edges.contains(&vb)).map(|s| s.color) {
            self.eng.note("coop triangle");
            let tri = Tri { v, a, b, w: self.eng.reserve(top_label(f, sets)) };
            let f2 = f.without(&[Edge::new(a, b)?].into_iter().collect());
            let all2 = contract(sets, &tri.cset(), v, tri.w);
            let first: Vec<CSet> = all2.iter().filter(|s| s.color != q && s.color != p).cloned().collect();
            let j_rec = match self.decide(&f2, &first, t, depth + 1)? {
                CoOut::Witness(r) => return tri.lift(r, &first, q, p).map(CoOut::Witness),
                CoOut::Cert { j_set, .. } => j_set,
            };
            // Some set now inside F' held va or vb; swap it for one of the pair.
            for &l in &j_rec {
                let (x_col, y_col, back) = if by[&l].edges.contains(&va) {
                    (l, p, q)
                } else if by[&l].edges.contains(&vb) {
                    (q, l, p)
                } else {
                    continue;
                };
                let second: Vec<CSet> =
                    all2.iter().filter(|s| s.color != x_col && s.color != y_col).cloned().collect();
                return match self.decide(&f2, &second, t, depth + 1)? {
                    CoOut::Witness(r) => tri.lift(r, &second, x_col, y_col).map(CoOut::Witness),
                    CoOut::Cert { .. } => {
                        let mut idx: Vec<usize> = j_rec.iter().copied().chain([back]).collect();
                        idx.sort_unstable();
                        Err(Error::UnionConditionViolated { indices: idx })
                    }
                };
            }
            return Err(stalled("no inside set meets the triangle"));
        }

        self.eng.note("coop delete vertex");
        let f2 = f.without(&[Edge::new(a, b)?].into_iter().collect());
        let rest: Vec<CSet> = sets
            .iter()
            .filter(|s| s.color != q)
            .map(|s| {
                let mut s = s.rebased();
                s.edges.retain(|e| !e.touches(a));
                s
            })
            .collect();
        let r = match self.decide(&f2, &rest, t, depth + 1)? {
            CoOut::Witness(r) => r,
            CoOut::Cert { .. } => return Err(stalled("surplus sets yet a certificate")),
        };
        if !r.verts.contains(&b) {
            return Ok(CoOut::Witness(r));
        }
        let mut r = if r.verts[0] == b { r.reversed() } else { r };
        if !r.verts.contains(&v) {
            r.verts.extend([a, v]);
            r.colors.extend([None, Some(q)]);
            return Ok(CoOut::Witness(r));
        }
        if r.verts[0] != v {
            return Err(stalled("v inside the returned path"));
        }
        let mut cyc = r.verts.clone();
        cyc.push(a);
        let mut colors = r.colors.clone();
        colors.extend([None, Some(q)]);
        self.long_cycle(f, sets, t, cyc, colors, depth).map(CoOut::Witness)
    }

    fn long_cycle(
        &mut self,
        f: &Matching,
        sets: &[CSet],
        t: usize,
        cyc: Vec<Vertex>,
        colors: Vec<Option<usize>>,
        depth: usize,
    ) -> Result<Found> {
        self.eng.stats.long_cycles += 1;
        let len = cyc.len();
        let cset: BTreeSet<Vertex> = cyc.iter().copied().collect();
        let used: BTreeSet<usize> = colors.iter().flatten().copied().collect();
        let mut f_edges = EdgeSet::new();
        for i in (1..len).step_by(2) {
            f_edges.insert(Edge::new(cyc[i], cyc[i + 1])?);
        }
        let f2 = f.without(&f_edges);
        let w = self.eng.reserve(top_label(f, sets));
        let rest: Vec<CSet> = sets.iter().filter(|s| !used.contains(&s.color)).cloned().collect();
        let rest2 = contract(&rest, &cset, cyc[0], w);
        let r = match self.decide(&f2, &rest2, t, depth + 1)? {
            CoOut::Witness(r) => r,
            CoOut::Cert { .. } => return Err(stalled("contracted cycle gave a certificate")),
        };
        if !r.verts.contains(&w) {
            return Ok(r);
        }
        let mut l = lift(r, &rest2, w)?;
        walk_to_apex(&mut l, &cyc, &colors)?;
        Ok(l)
    }
}

struct Tri {
    v: Vertex,
    a: Vertex,
    b: Vertex,
    w: Vertex,
}

impl Tri {
    fn cset(&self) -> BTreeSet<Vertex> {
        [self.v, self.a, self.b].into_iter().collect()
    }

    /// `x_col` holds `va`, `y_col` holds `vb`.
    fn lift(&self, r: Found, level: &[CSet], x_col: usize, y_col: usize) -> Result<Found> {
        let mut l = lift(r, level, self.w)?;
        let y = *l.verts.last().unwrap();
        if y == self.a {
            l.verts.extend([self.b, self.v]);
            l.colors.extend([None, Some(y_col)]);
        } else if y == self.b {
            l.verts.extend([self.a, self.v]);
            l.colors.extend([None, Some(x_col)]);
        }
        Ok(l)
    }
}
