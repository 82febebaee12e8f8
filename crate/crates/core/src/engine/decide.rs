//! Constructive induction for "rainbow AAP or badge".
//!
//! Every level either returns a rainbow path over its strands or a list of
//! strips covering them. Steps that rely on the absence of a rainbow path
//! are attempted structurally; when a step's expected shape is not there,
//! the mismatch is turned into a rainbow path. Anything left unresolved is
//! reported as `Stalled` and handed to [`Engine::recover`] at that level.

use std::collections::{BTreeMap, BTreeSet};

use crate::alternating::path_edges;
use crate::badge::{extend_badge_rainbow_aap, recognize_badge, Badge, ExtraEdge, Origamistrip, Side};
use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeSet, Matching, Vertex};

use super::search::{self, SearchLimit};
use super::strand::{
    check_strands, contract_strands, delete_vertex, fresh_vertex, lift_through_origins, walk_to_apex, Found, Strand,
};
use super::EngineStats;

/// One strip of a level's badge with the colors on each side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct StripCert {
    pub strip: Origamistrip,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

pub(crate) enum Out {
    Witness(Found),
    Badge(Vec<StripCert>),
}

pub(crate) enum Tri {
    Witness(Found),
    Triangle { v: Vertex, a: Vertex, b: Vertex, ta: usize, tb: usize },
}

pub(crate) struct Engine {
    pub stats: EngineStats,
    budget: u64,
    depth_limit: usize,
    next_fresh: u32,
}

fn stalled(msg: impl Into<String>) -> Error {
    Error::Stalled(msg.into())
}

fn edge(a: Vertex, b: Vertex) -> Result<Edge> {
    Edge::new(a, b)
}

fn edge_set(verts: &[Vertex]) -> EdgeSet {
    path_edges(verts).into_iter().collect()
}

impl Engine {
    pub fn new(budget: u64, depth_limit: usize) -> Engine {
        Engine { stats: EngineStats::default(), budget, depth_limit, next_fresh: 0 }
    }

    pub fn fresh(&mut self, f: &Matching, strands: &[Strand]) -> Vertex {
        let w = fresh_vertex(f, strands, self.next_fresh);
        self.next_fresh = w.0 + 1;
        w
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn depth_limit(&self) -> usize {
        self.depth_limit
    }

    /// A vertex label not used so far, at least `floor`.
    pub fn reserve(&mut self, floor: u32) -> Vertex {
        let w = Vertex(floor.max(self.next_fresh));
        self.next_fresh = w.0 + 1;
        w
    }

    pub fn note(&mut self, case: &str) {
        *self.stats.cases.entry(case.to_string()).or_default() += 1;
    }

    pub fn decide(&mut self, f: &Matching, strands: &[Strand], depth: usize) -> Result<Out> {
        if depth > self.depth_limit {
            return Err(Error::DepthExceeded(self.depth_limit));
        }
        self.stats.calls += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let attempt = self.decide_inner(f, strands, depth).and_then(|o| {
            check_out(f, strands, &o)?;
            Ok(o)
        });
        match attempt {
            Err(Error::Stalled(msg)) => {
                let o = self.recover(f, strands, msg)?;
                check_out(f, strands, &o)?;
                Ok(o)
            }
            other => other,
        }
    }

    /// Direct search at one level, used when a constructive step stalls.
    pub fn recover(&mut self, f: &Matching, strands: &[Strand], msg: String) -> Result<Out> {
        self.stats.recoveries += 1;
        if self.stats.recovery_notes.len() < 16 {
            self.stats.recovery_notes.push(msg.clone());
        }
        let colors: Vec<(usize, EdgeSet)> = strands.iter().map(|s| (s.color, edge_set(&s.verts))).collect();
        match search::rainbow_path(f, &colors, SearchLimit { nodes: self.budget }) {
            Err(()) => Err(Error::BudgetExceeded(self.budget)),
            Ok(Some(found)) => Ok(Out::Witness(found)),
            Ok(None) => {
                let paths: Vec<(usize, Vec<Vertex>)> = strands.iter().map(|s| (s.color, s.verts.clone())).collect();
                let cert = recognize_badge(f, &paths).ok_or_else(|| stalled(msg))?;
                let certs = cert
                    .badge
                    .strips()
                    .iter()
                    .enumerate()
                    .map(|(i, strip)| {
                        let on = |side| {
                            cert.color_map
                                .iter()
                                .filter(|m| m.slot.strip == i && m.slot.side == side)
                                .map(|m| m.color)
                                .collect()
                        };
                        StripCert { strip: strip.clone(), a: on(Side::A), b: on(Side::B) }
                    })
                    .collect();
                Ok(Out::Badge(certs))
            }
        }
    }

    fn decide_inner(&mut self, f: &Matching, strands: &[Strand], depth: usize) -> Result<Out> {
        let k = f.len();
        let p = strands.len();
        if p > 2 * k {
            let mut sorted = strands.to_vec();
            sorted.sort_by_key(|s| s.color);
            let spare = sorted[2 * k].clone();
            sorted.truncate(2 * k);
            return match self.decide(f, &sorted, depth + 1)? {
                Out::Witness(w) => Ok(Out::Witness(w)),
                Out::Badge(certs) => {
                    self.note("spare path");
                    let e = path_edges(&spare.verts)
                        .into_iter()
                        .find(|e| !f.contains(e))
                        .ok_or_else(|| stalled("spare path has no free edge"))?;
                    extend_with(&certs, e, spare.color).map(Out::Witness)
                }
            };
        }
        if p < 2 * k {
            return Err(stalled(format!("{p} paths for a matching of size {k}")));
        }
        if k == 0 {
            return Ok(Out::Badge(Vec::new()));
        }
        match self.find_triangle(f, strands, depth)? {
            Tri::Witness(w) => Ok(Out::Witness(w)),
            Tri::Triangle { v, a, b, ta, tb } => self.contract_triangle(f, strands, [v, a, b], ta, tb, depth),
        }
    }

    /// Either a rainbow triangle `v a b` (`ab ∈ F`, `v` uncovered, `va` on
    /// color `ta`, `bv` on color `tb`) or a rainbow path. Needs `2|F|` strands.
    pub fn find_triangle(&mut self, f: &Matching, strands: &[Strand], depth: usize) -> Result<Tri> {
        let q = strands.iter().min_by_key(|s| s.color).ok_or_else(|| stalled("no paths"))?;
        if q.verts.len() == 2 {
            return Ok(Tri::Witness(Found { verts: q.verts.clone(), colors: vec![Some(q.color)] }));
        }
        let n = q.verts.len();
        let head = edge(q.verts[0], q.verts[1])?;
        let tail = edge(q.verts[n - 1], q.verts[n - 2])?;
        let q = if head <= tail { q.clone() } else { q.reversed() };
        let (v, a, b) = (q.verts[0], q.verts[1], q.verts[2]);
        if f.partner(a) != Some(b) {
            return Err(stalled(format!("path {} is not alternating at {a}", q.color)));
        }
        let vb = edge(v, b)?;
        if let Some(s) = strands.iter().filter(|s| s.color != q.color && s.contains_edge(vb)).min_by_key(|s| s.color) {
            return Ok(Tri::Triangle { v, a, b, ta: q.color, tb: s.color });
        }

        self.note("delete vertex");
        let ab: EdgeSet = [edge(a, b)?].into_iter().collect();
        let f2 = f.without(&ab);
        let rest: Vec<Strand> = strands.iter().filter(|s| s.color != q.color).cloned().collect();
        let rest2 = delete_vertex(&rest, a, b)?;
        let r = match self.decide(&f2, &rest2, depth + 1)? {
            Out::Witness(r) => r,
            Out::Badge(_) => return Err(stalled("too many paths yet a badge came back")),
        };
        if !r.verts.contains(&b) {
            return Ok(Tri::Witness(r));
        }
        let mut r = if r.verts[0] == b { r.reversed() } else { r };
        if !r.verts.contains(&v) {
            r.verts.extend([a, v]);
            r.colors.extend([None, Some(q.color)]);
            return Ok(Tri::Witness(r));
        }
        if r.verts[0] != v {
            return Err(stalled("v is inside the returned path"));
        }
        // v … b a closes an odd cycle with apex v.
        let mut cyc = r.verts.clone();
        cyc.push(a);
        let mut colors = r.colors.clone();
        colors.extend([None, Some(q.color)]);
        self.long_cycle(f, strands, cyc, colors, depth).map(Tri::Witness)
    }

    /// Rainbow odd cycle of length at least 5 with apex `cyc[0]`; edge `i`
    /// joins `cyc[i]` and `cyc[i + 1]` (cyclically). Always ends in a path.
    fn long_cycle(
        &mut self,
        f: &Matching,
        strands: &[Strand],
        cyc: Vec<Vertex>,
        colors: Vec<Option<usize>>,
        depth: usize,
    ) -> Result<Found> {
        self.stats.long_cycles += 1;
        let len = cyc.len();
        if len < 5 || len.is_multiple_of(2) || colors.len() != len {
            return Err(stalled("malformed odd cycle"));
        }
        let cset: BTreeSet<Vertex> = cyc.iter().copied().collect();
        let used: BTreeSet<usize> = colors.iter().flatten().copied().collect();
        let mut f_edges = EdgeSet::new();
        for i in (1..len).step_by(2) {
            let e = edge(cyc[i], cyc[i + 1])?;
            if !f.contains(&e) {
                return Err(stalled("cycle is not alternating"));
            }
            f_edges.insert(e);
        }
        let f2 = f.without(&f_edges);
        let rest: Vec<Strand> = strands.iter().filter(|s| !used.contains(&s.color)).cloned().collect();
        let w = self.fresh(f, strands);
        let rest2 = contract_strands(&rest, &cset, w)?;
        let r = match self.decide(&f2, &rest2, depth + 1)? {
            Out::Witness(r) => r,
            Out::Badge(_) => return Err(stalled("contracted cycle gave a badge")),
        };
        if !r.verts.contains(&w) {
            return Ok(r);
        }
        let r = if r.verts[0] == w { r.reversed() } else { r };
        let mut l = lift_through_origins(&r, &rest2, f);
        walk_to_apex(&mut l, &cyc, &colors)?;
        Ok(l)
    }

    fn contract_triangle(
        &mut self,
        f: &Matching,
        strands: &[Strand],
        [v, a, b]: [Vertex; 3],
        ta: usize,
        tb: usize,
        depth: usize,
    ) -> Result<Out> {
        self.stats.triangles += 1;
        let cset: BTreeSet<Vertex> = [v, a, b].into_iter().collect();
        let w = self.fresh(f, strands);
        let ab: EdgeSet = [edge(a, b)?].into_iter().collect();
        let f2 = f.without(&ab);
        let all2 = contract_strands(strands, &cset, w)?;
        let sub: Vec<Strand> = all2.iter().filter(|s| s.color != ta && s.color != tb).cloned().collect();
        let tri = Triangle { v, a, b, w, ta, tb };
        let certs = match self.decide(&f2, &sub, depth + 1)? {
            Out::Witness(r) => return tri.lift(f, &sub, r, ta, tb).map(Out::Witness),
            Out::Badge(certs) => certs,
        };
        let get = |c: usize| all2.iter().find(|s| s.color == c).cloned().expect("color present");
        let (tap, tbp) = (get(ta), get(tb));

        let Some(i) = certs.iter().position(|c| c.strip.is_endpoint(w)) else {
            if let Some(t) = [&tap, &tbp].into_iter().find(|t| t.verts.len() > 2) {
                self.note("Ia");
                let e = edge(t.verts[0], t.verts[1])?;
                return extend_with(&certs, e, t.color).map(Out::Witness);
            }
            let (z, t) = (tap.verts[0], tbp.verts[0]);
            if z != t {
                self.note("Ib path");
                return Ok(Out::Witness(Found { verts: vec![z, b, a, t], colors: vec![Some(ta), None, Some(tb)] }));
            }
            self.note("Ib strip");
            let strip = Origamistrip::new(v, z, vec![a, b])?;
            let mut certs = certs;
            certs.push(StripCert { strip, a: vec![ta], b: vec![tb] });
            return Ok(Out::Badge(certs));
        };
        self.case_two(f, strands, &f2, &all2, &certs, i, &tri, depth)
    }

    #[allow(clippy::too_many_arguments)]
    fn case_two(
        &mut self,
        f: &Matching,
        strands: &[Strand],
        f2: &Matching,
        all2: &[Strand],
        certs: &[StripCert],
        i: usize,
        tri: &Triangle,
        depth: usize,
    ) -> Result<Out> {
        let Triangle { v, a, b, w, ta, tb } = *tri;
        let c = &certs[i];
        let os = if c.strip.y() == w { c.strip.clone() } else { c.strip.reversed() };
        let (z, m) = (os.x(), os.weight());
        let interior = os.interior().to_vec();
        let original: BTreeMap<usize, &Strand> = strands.iter().map(|s| (s.color, s)).collect();
        let same = |color: usize, strip: &Origamistrip, side: Side| {
            edge_set(&original[&color].verts) == strip.path_edge_set(side)
        };

        let mut candidates = vec![("IIa", Origamistrip::new(z, v, interior.clone()), c.a.clone(), c.b.clone())];
        for (r, s) in [(a, b), (b, a)] {
            let (ts, tr) = if s == a { (ta, tb) } else { (tb, ta) };
            let mut inner = interior.clone();
            inner.extend([r, s]);
            let mut on_a = c.a.clone();
            on_a.push(ts);
            let mut on_b = c.b.clone();
            on_b.push(tr);
            candidates.push(("IIb", Origamistrip::new(z, v, inner), on_a, on_b));
        }
        for (label, strip, on_a, on_b) in candidates {
            let Ok(strip) = strip else { continue };
            if on_a.iter().all(|&q| same(q, &strip, Side::A)) && on_b.iter().all(|&q| same(q, &strip, Side::B)) {
                self.note(label);
                return self.peel_strip(f, strands, StripCert { strip, a: on_a, b: on_b }, depth);
            }
        }

        // The expected strip is absent; read off a rainbow path from the
        // first place the structure breaks.
        self.note("II repair");
        let (um, vm) = (os.u(m), os.v(m));
        let contracted: BTreeMap<usize, &Strand> = all2.iter().map(|s| (s.color, s)).collect();
        let attach = |q: usize, near: Vertex| -> Result<Vertex> {
            let s = contracted[&q];
            let last = *s.origin.last().ok_or_else(|| stalled("empty strand"))?;
            last.other(near).ok_or_else(|| stalled(format!("path {q} does not reach w from {near}")))
        };
        let t_of = |x: Vertex| if x == a { ta } else { tb };
        let members: Vec<(usize, Side, Vertex)> =
            c.a.iter().map(|&q| (q, Side::A, vm)).chain(c.b.iter().map(|&q| (q, Side::B, um))).collect();

        let mut attached = Vec::new();
        for &(q, side, near) in &members {
            let r = attach(q, near)?;
            attached.push((q, side, r));
            if r == v {
                continue;
            }
            let s = if r == a { b } else { a };
            let path = &original[&q].verts;
            let pr = path.iter().position(|&x| x == r).ok_or_else(|| stalled("attach vertex off path"))?;
            let ps = path.iter().position(|&x| x == s).ok_or_else(|| stalled("partner off path"))?;
            let next = if ps > pr { ps.checked_add(1) } else { ps.checked_sub(1) };
            let y2 = *next.and_then(|n| path.get(n)).ok_or_else(|| stalled("matching edge at path end"))?;
            if y2 != v {
                let mut found = Found { verts: vec![v, r, s, y2], colors: vec![Some(t_of(r)), None, Some(q)] };
                if f.covers(y2) {
                    let j = certs
                        .iter()
                        .position(|c| c.strip.is_interior(y2))
                        .filter(|&j| j != i)
                        .ok_or_else(|| stalled(format!("{y2} is not inside another strip")))?;
                    let other = &certs[j];
                    let end = [other.strip.x(), other.strip.y()]
                        .into_iter()
                        .find(|&e| e != w)
                        .expect("strip has two endpoints");
                    let (side2, qp) = other.strip.q_path(y2, end)?;
                    let mut pool = if side2 == Side::A { other.a.clone() } else { other.b.clone() }.into_iter();
                    let mut back: Vec<Vertex> = qp.vertices().to_vec();
                    back.reverse();
                    for win in back.windows(2) {
                        found.verts.push(win[1]);
                        let e = edge(win[0], win[1])?;
                        found.colors.push(if f.contains(&e) { None } else { pool.next() });
                    }
                }
                return Ok(Out::Witness(found));
            }
            let t_s = t_of(s);
            if edge_set(path) == edge_set(&original[&t_s].verts) {
                continue;
            }
            // Dropping the pair through av and bv instead must leave a
            // badge that differs from the first in one path; it cannot.
            let (x_col, y_col) = if r == a { (ta, q) } else { (q, tb) };
            let sub: Vec<Strand> = all2.iter().filter(|s| s.color != x_col && s.color != y_col).cloned().collect();
            return match self.decide(f2, &sub, depth + 1)? {
                Out::Witness(rw) => tri.lift(f, &sub, rw, x_col, y_col).map(Out::Witness),
                Out::Badge(_) => Err(stalled("two badges differing in one path")),
            };
        }

        for &(q1, side1, r) in &attached {
            if r == v {
                continue;
            }
            let s = if r == a { b } else { a };
            if let Some(&(q2, _, _)) = attached.iter().find(|x| x.1 != side1 && x.2 == v) {
                let (p1, p2) = if side1 == Side::A { (vm, um) } else { (um, vm) };
                let cyc = vec![v, s, r, p1, p2];
                let colors = vec![Some(t_of(s)), None, Some(q1), None, Some(q2)];
                return self.long_cycle(f, strands, cyc, colors, depth).map(Out::Witness);
            }
        }
        Err(stalled("strip at the contracted vertex does not open up"))
    }

    /// Removes a verified strip and recurses on the remaining paths.
    fn peel_strip(&mut self, f: &Matching, strands: &[Strand], cert: StripCert, depth: usize) -> Result<Out> {
        let inside: BTreeSet<Vertex> = cert.strip.interior().iter().copied().collect();
        let taken: BTreeSet<usize> = cert.a.iter().chain(&cert.b).copied().collect();
        let rest: Vec<Strand> = strands.iter().filter(|s| !taken.contains(&s.color)).cloned().collect();
        if rest.iter().any(|s| s.verts.iter().any(|x| inside.contains(x))) {
            return Err(stalled("a remaining path enters the strip"));
        }
        let f3 = f.without(&cert.strip.skeleton());
        match self.decide(&f3, &rest, depth + 1)? {
            Out::Witness(r) => Ok(Out::Witness(r)),
            Out::Badge(mut certs) => {
                certs.push(cert);
                Ok(Out::Badge(certs))
            }
        }
    }
}

#[derive(Clone, Copy)]
struct Triangle {
    v: Vertex,
    a: Vertex,
    b: Vertex,
    w: Vertex,
    ta: usize,
    tb: usize,
}

impl Triangle {
    /// Carries a path found after contracting the triangle back up; `x_col`
    /// holds `av` and `y_col` holds `bv`, neither used by `r`.
    fn lift(&self, f: &Matching, level: &[Strand], r: Found, x_col: usize, y_col: usize) -> Result<Found> {
        if !r.verts.contains(&self.w) {
            return Ok(r);
        }
        let r = if r.verts[0] == self.w { r.reversed() } else { r };
        let mut l = lift_through_origins(&r, level, f);
        let y = *l.verts.last().unwrap();
        if y == self.a {
            l.verts.extend([self.b, self.v]);
            l.colors.extend([None, Some(y_col)]);
        } else if y == self.b {
            l.verts.extend([self.a, self.v]);
            l.colors.extend([None, Some(x_col)]);
        } else if y != self.v {
            return Err(stalled("lifted path ends outside the triangle"));
        }
        Ok(l)
    }
}

/// Lays strips out as a badge and lists the color behind each expanded slot.
pub(crate) fn assemble(certs: &[StripCert]) -> Result<(Badge, Vec<usize>)> {
    let badge = Badge::from_strips(certs.iter().map(|c| c.strip.clone()).collect())?;
    let slot_colors = certs.iter().flat_map(|c| c.a.iter().chain(&c.b).copied()).collect();
    Ok((badge, slot_colors))
}

/// Rainbow path in a level's badge plus one extra edge of color `color`.
fn extend_with(certs: &[StripCert], e: Edge, color: usize) -> Result<Found> {
    let (badge, slot_colors) = assemble(certs).map_err(|e| stalled(e.to_string()))?;
    let w = extend_badge_rainbow_aap(&badge, ExtraEdge::Singleton, e).map_err(|e| stalled(e.to_string()))?;
    let mut found = Found::from_rainbow(&w);
    for c in found.colors.iter_mut().flatten() {
        *c = slot_colors.get(*c).copied().unwrap_or(color);
    }
    Ok(found)
}

/// Rainbow path in a level's badge after adding `e` to the path of `color`.
pub(crate) fn extend_into(certs: &[StripCert], color: usize, e: Edge) -> Result<Found> {
    let (badge, slot_colors) = assemble(certs).map_err(|e| stalled(e.to_string()))?;
    let slot = slot_colors.iter().position(|&c| c == color).ok_or_else(|| stalled(format!("color {color} not in badge")))?;
    let w = extend_badge_rainbow_aap(&badge, ExtraEdge::Into(slot), e).map_err(|e| stalled(e.to_string()))?;
    let mut found = Found::from_rainbow(&w);
    for c in found.colors.iter_mut().flatten() {
        *c = slot_colors[*c];
    }
    Ok(found)
}

/// Re-checks a level's answer against its own strands.
pub(crate) fn check_out(f: &Matching, strands: &[Strand], out: &Out) -> Result<()> {
    match out {
        Out::Witness(found) => check_strands(f, strands, found),
        Out::Badge(certs) => {
            let (badge, _) = assemble(certs).map_err(|e| stalled(format!("strips do not form a badge: {e}")))?;
            if badge.skeleton().edges() != f.edges() {
                return Err(stalled("badge skeleton differs from the matching"));
            }
            let by_color: BTreeMap<usize, &Strand> = strands.iter().map(|s| (s.color, s)).collect();
            let mut seen = BTreeSet::new();
            for c in certs {
                let w = c.strip.weight();
                if c.a.len() != w || c.b.len() != w {
                    return Err(stalled("strip side count differs from its weight"));
                }
                for (side, cols) in [(Side::A, &c.a), (Side::B, &c.b)] {
                    let want = c.strip.path_edge_set(side);
                    for q in cols {
                        let s = by_color.get(q).ok_or_else(|| stalled(format!("unknown color {q}")))?;
                        if !seen.insert(*q) || edge_set(&s.verts) != want {
                            return Err(stalled(format!("color {q} does not match its strip side")));
                        }
                    }
                }
            }
            if seen.len() != strands.len() {
                return Err(stalled("badge leaves paths uncovered"));
            }
            Ok(())
        }
    }
}
