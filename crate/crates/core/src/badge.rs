//! Origamistrips, badges and generalized badges.
//!
//! An `m`-origamistrip on endpoints `x, y` and interior `u1 v1 … um vm` is
//! the union of three disjoint matchings: the skeleton `{ui vi}`, the A side
//! `{x u1, v1 u2, …, vm y}` and the B side `{x v1, u1 v2, …, um y}`. Its two
//! paths `x u1 v1 … um vm y` and `x v1 u1 … vm um y` are skeleton-augmenting.
//! A badge glues strips along the edges of a weighted multigraph and lists
//! each strip path as many times as the strip's weight.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::alternating::{path_edges, Aap, AlternatingPath, RainbowAap};
use crate::error::{Error, Result};
use crate::graph::{ColorFamily, Edge, EdgeSet, Matching, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Origamistrip {
    x: Vertex,
    y: Vertex,
    /// `u1, v1, u2, v2, …, um, vm`
    interior: Vec<Vertex>,
}

impl Origamistrip {
    pub fn new(x: Vertex, y: Vertex, interior: Vec<Vertex>) -> Result<Origamistrip> {
        if interior.is_empty() || !interior.len().is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "strip interior must hold 2m ≥ 2 vertices, got {}",
                interior.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for v in std::iter::once(x).chain(std::iter::once(y)).chain(interior.iter().copied()) {
            if !seen.insert(v) {
                return Err(Error::DuplicateLabel(v.0));
            }
        }
        Ok(Origamistrip { x, y, interior })
    }

    pub fn weight(&self) -> usize {
        self.interior.len() / 2
    }

    pub fn x(&self) -> Vertex {
        self.x
    }

    pub fn y(&self) -> Vertex {
        self.y
    }

    pub fn interior(&self) -> &[Vertex] {
        &self.interior
    }

    /// `u_i`, 1-based.
    pub fn u(&self, i: usize) -> Vertex {
        self.interior[2 * (i - 1)]
    }

    /// `v_i`, 1-based.
    pub fn v(&self, i: usize) -> Vertex {
        self.interior[2 * (i - 1) + 1]
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        [self.x, self.y].into_iter().chain(self.interior.iter().copied())
    }

    pub fn is_interior(&self, v: Vertex) -> bool {
        self.interior.contains(&v)
    }

    pub fn is_endpoint(&self, v: Vertex) -> bool {
        v == self.x || v == self.y
    }

    pub fn other_endpoint(&self, v: Vertex) -> Option<Vertex> {
        if v == self.x {
            Some(self.y)
        } else if v == self.y {
            Some(self.x)
        } else {
            None
        }
    }

    pub fn skeleton(&self) -> EdgeSet {
        self.interior.chunks(2).map(|p| Edge::new(p[0], p[1]).unwrap()).collect()
    }

    /// Vertex sequence of the side path from `x` to `y`.
    pub fn path_vertices(&self, side: Side) -> Vec<Vertex> {
        let mut out = vec![self.x];
        for pair in self.interior.chunks(2) {
            match side {
                Side::A => out.extend([pair[0], pair[1]]),
                Side::B => out.extend([pair[1], pair[0]]),
            }
        }
        out.push(self.y);
        out
    }

    /// Non-skeleton edges of one side.
    pub fn side_edges(&self, side: Side) -> EdgeSet {
        let sk = self.skeleton();
        path_edges(&self.path_vertices(side)).into_iter().filter(|e| !sk.contains(e)).collect()
    }

    /// All edges of the side path, skeleton included.
    pub fn path_edge_set(&self, side: Side) -> EdgeSet {
        path_edges(&self.path_vertices(side)).into_iter().collect()
    }

    /// Same strip described from the other endpoint.
    pub fn reversed(&self) -> Origamistrip {
        let mut interior = self.interior.clone();
        interior.reverse();
        Origamistrip { x: self.y, y: self.x, interior }
    }

    /// Which side's path, read from `from`, reaches `v` after an even number
    /// of edges, together with that path.
    pub fn q_path(&self, v: Vertex, from: Vertex) -> Result<(Side, AlternatingPath)> {
        if !self.is_interior(v) {
            return Err(Error::NotInterior(v.0));
        }
        if !self.is_endpoint(from) {
            return Err(Error::InvalidParameter(format!("{from} is not a strip endpoint")));
        }
        let skel = Matching::new(self.skeleton()).expect("skeleton is a matching");
        let mut found = None;
        for side in [Side::A, Side::B] {
            let mut seq = self.path_vertices(side);
            if from == self.y {
                seq.reverse();
            }
            let pos = seq.iter().position(|&w| w == v).expect("interior vertex on both paths");
            if pos % 2 == 0 {
                debug_assert!(found.is_none(), "exactly one side has even parity");
                let path = AlternatingPath::new(&skel, seq[..=pos].to_vec())?;
                found = Some((side, path));
            }
        }
        Ok(found.expect("one side always has even parity"))
    }

    /// The even skeleton-alternating path to `v` inside the given side path,
    /// read from whichever endpoint makes it even.
    pub fn q_path_on(&self, v: Vertex, side: Side) -> Result<AlternatingPath> {
        for from in [self.x, self.y] {
            let (s, p) = self.q_path(v, from)?;
            if s == side {
                return Ok(p);
            }
        }
        unreachable!("each endpoint yields a different side")
    }
}

pub fn make_origamistrip(m: usize, x: Vertex, y: Vertex, interior: Vec<Vertex>) -> Result<Origamistrip> {
    if m == 0 {
        return Err(Error::InvalidParameter("strip weight must be ≥ 1".into()));
    }
    if interior.len() != 2 * m {
        return Err(Error::InvalidParameter(format!("{m}-strip needs {} interior labels", 2 * m)));
    }
    Origamistrip::new(x, y, interior)
}

/// Loop-free multigraph: vertex list plus a list of possibly parallel edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multigraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(Vertex, Vertex)>,
}

/// A slot in the expanded path list of a badge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Slot {
    pub strip: usize,
    pub side: Side,
}

/// Collection of strips with pairwise-disjoint interiors, one strip per
/// host edge; the weight of a host edge is its strip's weight.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Badge {
    host_vertices: Vec<Vertex>,
    strips: Vec<Origamistrip>,
}

impl Badge {
    pub fn from_strips(strips: Vec<Origamistrip>) -> Result<Badge> {
        let host_vertices: BTreeSet<Vertex> = strips.iter().flat_map(|s| [s.x, s.y]).collect();
        Badge::with_host_vertices(host_vertices.into_iter().collect(), strips)
    }

    pub fn with_host_vertices(host_vertices: Vec<Vertex>, strips: Vec<Origamistrip>) -> Result<Badge> {
        let mut interior = BTreeSet::new();
        for s in &strips {
            for &v in &s.interior {
                if !interior.insert(v) {
                    return Err(Error::InvalidParameter(format!("strips share interior vertex {v}")));
                }
            }
        }
        let hosts: BTreeSet<Vertex> = host_vertices.iter().copied().collect();
        for s in &strips {
            for end in [s.x, s.y] {
                if interior.contains(&end) {
                    return Err(Error::InvalidParameter(format!(
                        "strip endpoint {end} is interior to another strip"
                    )));
                }
                if !hosts.contains(&end) {
                    return Err(Error::InvalidParameter(format!("strip endpoint {end} missing from host")));
                }
            }
        }
        if hosts.iter().any(|v| interior.contains(v)) {
            return Err(Error::InvalidParameter("host vertex reused as strip interior".into()));
        }
        Ok(Badge { host_vertices, strips })
    }

    pub fn empty() -> Badge {
        Badge::default()
    }

    pub fn strips(&self) -> &[Origamistrip] {
        &self.strips
    }

    pub fn host(&self) -> Multigraph {
        Multigraph {
            vertices: self.host_vertices.clone(),
            edges: self.strips.iter().map(|s| (s.x, s.y)).collect(),
        }
    }

    pub fn host_vertices(&self) -> &[Vertex] {
        &self.host_vertices
    }

    pub fn weights(&self) -> Vec<usize> {
        self.strips.iter().map(Origamistrip::weight).collect()
    }

    pub fn weight(&self) -> usize {
        self.strips.iter().map(Origamistrip::weight).sum()
    }

    pub fn skeleton(&self) -> Matching {
        Matching::new(self.strips.iter().flat_map(|s| s.skeleton()).collect())
            .expect("disjoint strip interiors give a matching")
    }

    pub fn vertices(&self) -> BTreeSet<Vertex> {
        self.host_vertices
            .iter()
            .copied()
            .chain(self.strips.iter().flat_map(|s| s.interior.iter().copied()))
            .collect()
    }

    /// Strip whose interior contains `v`.
    pub fn strip_of(&self, v: Vertex) -> Option<usize> {
        self.strips.iter().position(|s| s.is_interior(v))
    }

    /// Expanded slot list: for each strip, `w` A slots then `w` B slots.
    pub fn slots(&self) -> Vec<Slot> {
        let mut out = Vec::with_capacity(2 * self.weight());
        for (i, s) in self.strips.iter().enumerate() {
            for side in [Side::A, Side::B] {
                out.extend(std::iter::repeat_n(Slot { strip: i, side }, s.weight()));
            }
        }
        out
    }

    pub fn slot_edges(&self, slot: Slot) -> EdgeSet {
        self.strips[slot.strip].path_edge_set(slot.side)
    }

    pub fn with_strip(&self, strip: Origamistrip) -> Result<Badge> {
        let mut strips = self.strips.clone();
        strips.push(strip);
        let mut hosts: BTreeSet<Vertex> = self.host_vertices.iter().copied().collect();
        hosts.extend(strips.iter().flat_map(|s| [s.x, s.y]));
        Badge::with_host_vertices(hosts.into_iter().collect(), strips)
    }

    pub fn merged(&self, other: &Badge) -> Result<Badge> {
        let mut strips = self.strips.clone();
        strips.extend(other.strips.iter().cloned());
        let mut hosts: BTreeSet<Vertex> = self.host_vertices.iter().copied().collect();
        hosts.extend(other.host_vertices.iter().copied());
        Badge::with_host_vertices(hosts.into_iter().collect(), strips)
    }
}

/// Builds a badge over `host` with a `w(e)`-strip per host edge. Interior
/// labels are fresh, allocated upward from `first_label` (or above the
/// largest host vertex when absent).
pub fn make_badge(host: &Multigraph, weights: &[usize], first_label: Option<u32>) -> Result<Badge> {
    if weights.len() != host.edges.len() {
        return Err(Error::InvalidParameter(format!(
            "{} weights for {} host edges",
            weights.len(),
            host.edges.len()
        )));
    }
    let mut next = first_label
        .unwrap_or_else(|| host.vertices.iter().map(|v| v.0 + 1).max().unwrap_or(0));
    let mut strips = Vec::new();
    for (&(x, y), &w) in host.edges.iter().zip(weights) {
        if w == 0 {
            return Err(Error::InvalidParameter("badge weights must be ≥ 1".into()));
        }
        if x == y {
            return Err(Error::Loop(x.0));
        }
        let interior: Vec<Vertex> = (next..next + 2 * w as u32).map(Vertex).collect();
        next += 2 * w as u32;
        strips.push(make_origamistrip(w, x, y, interior)?);
    }
    Badge::with_host_vertices(host.vertices.clone(), strips)
}

/// Per-color skeleton edits of a generalized badge.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathEdit {
    pub added: EdgeSet,
    pub removed: EdgeSet,
}

impl PathEdit {
    pub fn is_empty(&self) -> bool {
        self.added.is_empty() && self.removed.is_empty()
    }

    pub fn apply(&self, base: &EdgeSet) -> EdgeSet {
        base.difference(&self.removed).chain(&self.added).copied().collect()
    }
}

/// A badge whose listed paths may each gain or lose skeleton edges. Edits
/// are indexed by expanded slot position and never applied to `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedBadge {
    pub base: Badge,
    pub edits: Vec<PathEdit>,
}

impl GeneralizedBadge {
    pub fn new(base: Badge, edits: Vec<PathEdit>) -> Result<GeneralizedBadge> {
        let slots = base.slots().len();
        if edits.len() != slots {
            return Err(Error::InvalidParameter(format!("{} edits for {slots} paths", edits.len())));
        }
        let skel = base.skeleton();
        for ed in &edits {
            if ed.added.iter().chain(&ed.removed).any(|e| !skel.contains(e)) {
                return Err(Error::InvalidParameter("edits may only touch skeleton edges".into()));
            }
        }
        Ok(GeneralizedBadge { base, edits })
    }
}

/// Listed paths of a badge as a color family (`2·w(ℬ)` colors).
pub fn badge_paths(b: &Badge) -> ColorFamily {
    b.slots().into_iter().map(|s| b.slot_edges(s)).collect()
}

pub fn generalized_badge_paths(g: &GeneralizedBadge) -> ColorFamily {
    g.base
        .slots()
        .into_iter()
        .zip(&g.edits)
        .map(|(s, ed)| ed.apply(&g.base.slot_edges(s)))
        .collect()
}

/// The strip used by the sharpness family at `n`: an `(n-1)`-strip with
/// `x = 0`, interior `1..=2(n-1)` and `y = 2n - 1`.
pub fn sharpness_strip(n: usize) -> Origamistrip {
    let m = n - 1;
    let interior = (1..=2 * m as u32).map(Vertex).collect();
    Origamistrip::new(Vertex(0), Vertex(2 * m as u32 + 1), interior).expect("distinct labels")
}

/// `n-1` copies of A, `n-1` copies of B and `M ∪ {xy}`, without the parity
/// check. For odd `n` this family does have a rainbow matching of size `n`.
pub fn sharpness_construction(n: usize) -> Result<ColorFamily> {
    if n < 2 {
        return Err(Error::InvalidParameter("sharpness construction needs n ≥ 2".into()));
    }
    let os = sharpness_strip(n);
    let mut fam = ColorFamily::default();
    for side in [Side::A, Side::B] {
        for _ in 0..n - 1 {
            fam.push(os.side_edges(side));
        }
    }
    let mut last = os.skeleton();
    last.insert(Edge::new(os.x(), os.y())?);
    fam.push(last);
    Ok(fam)
}

/// `2n-1` matchings of size `n` with no rainbow matching of size `n`.
pub fn sharpness_instance(n: usize) -> Result<ColorFamily> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("sharpness instance needs even n ≥ 2, got {n}")));
    }
    sharpness_construction(n)
}

/// Where the extra edge of [`extend_badge_rainbow_aap`] lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtraEdge {
    /// The edge is added to the path at this expanded slot index, which
    /// keeps its color index.
    Into(usize),
    /// The edge forms a new singleton color with index `2·w(ℬ)`.
    Singleton,
}

/// Given a badge with skeleton `F` and an edge `e ∉ F`, builds a rainbow
/// `F`-AAP in the family with `e` added (either to one listed path or as a
/// singleton color).
///
/// Colors are expanded slot indices of `b`, plus `2·w(ℬ)` for the singleton.
pub fn extend_badge_rainbow_aap(b: &Badge, extra: ExtraEdge, e: Edge) -> Result<RainbowAap> {
    let f = b.skeleton();
    if f.contains(&e) {
        return Err(Error::EdgeInSkeleton(e.to_string()));
    }
    let slots = b.slots();
    let e_color = match extra {
        ExtraEdge::Into(i) => {
            if i >= slots.len() {
                return Err(Error::InvalidParameter(format!("no path at slot {i}")));
            }
            if b.slot_edges(slots[i]).contains(&e) {
                return Err(Error::InvalidParameter(format!("edge {e} already on path {i}")));
            }
            i
        }
        ExtraEdge::Singleton => slots.len(),
    };
    let target = match extra {
        ExtraEdge::Into(i) => Some(slots[i]),
        ExtraEdge::Singleton => None,
    };
    let mut fam = badge_paths(b);
    if let ExtraEdge::Into(i) = extra {
        let mut c = fam.color(i).clone();
        c.insert(e);
        let mut colors: Vec<EdgeSet> = fam.colors().to_vec();
        colors[i] = c;
        fam = ColorFamily::new(colors);
    } else {
        fam.push(std::iter::once(e).collect());
    }

    let (p, q) = (e.lo(), e.hi());
    if !f.covers(p) && !f.covers(q) {
        return finish(&f, &fam, vec![p, q], &[(e, e_color)]);
    }
    // Orient so that `x` is covered.
    let (x, y) = if f.covers(p) { (p, q) } else { (q, p) };
    let sx = b.strip_of(x).expect("covered vertex lies in a strip");
    let os_x = &b.strips[sx];
    // Prefer the side not holding the target path, then A before B.
    let mut x_sides = vec![Side::A, Side::B];
    if let Some(t) = target {
        if t.strip == sx {
            x_sides = vec![t.side.other(), t.side];
        }
    }

    let pool = ColorPool::new(b, &slots, e_color);
    if !f.covers(y) {
        for &s in &x_sides {
            let qx = os_x.q_path_on(x, s)?;
            let mut verts: Vec<Vertex> = qx.vertices().to_vec();
            verts.push(y);
            if let Some(w) = pool.assign(&f, &verts, &[(sx, s)], e, e_color) {
                return finish(&f, &fam, verts, &w);
            }
        }
        return Err(Error::Stalled(format!("no extension for {e} with one covered end")));
    }

    let sy = b.strip_of(y).expect("covered vertex lies in a strip");
    let os_y = &b.strips[sy];
    let pairs: Vec<(Side, Side)> = if sx == sy {
        vec![(Side::A, Side::A), (Side::A, Side::B), (Side::B, Side::A), (Side::B, Side::B)]
    } else {
        x_sides.iter().flat_map(|&p| [(p, Side::A), (p, Side::B)]).collect()
    };
    for (ps, qs) in pairs {
        let qx = os_x.q_path_on(x, ps)?;
        let qy = os_y.q_path_on(y, qs)?;
        let mut verts: Vec<Vertex> = qx.vertices().to_vec();
        verts.extend(qy.vertices().iter().rev());
        if let Some(w) = pool.assign(&f, &verts, &[(sx, ps), (sy, qs)], e, e_color) {
            return finish(&f, &fam, verts, &w);
        }
    }
    Err(Error::Stalled(format!("no extension for {e} between strips")))
}

fn finish(f: &Matching, fam: &ColorFamily, verts: Vec<Vertex>, colors: &[(Edge, usize)]) -> Result<RainbowAap> {
    let path = Aap::new(f, verts)?;
    let w = RainbowAap { path, colors: colors.to_vec() };
    w.check(f, fam).map_err(Error::Stalled)?;
    Ok(w)
}

/// Hands out distinct slot colors per `(strip, side)`, skipping the color
/// reserved for the extra edge.
struct ColorPool {
    by_side: BTreeMap<(usize, Side), Vec<usize>>,
    side_edges: BTreeMap<(usize, Side), EdgeSet>,
}

impl ColorPool {
    fn new(b: &Badge, slots: &[Slot], reserved: usize) -> ColorPool {
        let mut by_side: BTreeMap<(usize, Side), Vec<usize>> = BTreeMap::new();
        for (i, s) in slots.iter().enumerate() {
            if i != reserved {
                by_side.entry((s.strip, s.side)).or_default().push(i);
            }
        }
        let side_edges = b
            .strips
            .iter()
            .enumerate()
            .flat_map(|(i, s)| [Side::A, Side::B].map(|sd| ((i, sd), s.side_edges(sd))))
            .collect();
        ColorPool { by_side, side_edges }
    }

    /// Colors each non-skeleton edge of `verts`; `e` takes `e_color`, the
    /// rest are drawn from the given strip sides. Returns `None` when the
    /// walk is not a valid AAP or the pool runs dry.
    fn assign(
        &self,
        f: &Matching,
        verts: &[Vertex],
        sides: &[(usize, Side)],
        e: Edge,
        e_color: usize,
    ) -> Option<Vec<(Edge, usize)>> {
        let aap = Aap::new(f, verts.to_vec()).ok()?;
        let mut left: BTreeMap<(usize, Side), std::vec::IntoIter<usize>> = self
            .by_side
            .iter()
            .map(|(k, v)| (*k, v.clone().into_iter()))
            .collect();
        let mut out = Vec::new();
        for edge in aap.non_f_edges() {
            if edge == e {
                out.push((edge, e_color));
                continue;
            }
            let key = *sides.iter().find(|k| self.side_edges[k].contains(&edge))?;
            let c = left.get_mut(&key)?.next()?;
            out.push((edge, c));
        }
        Some(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotAssignment {
    pub color: usize,
    pub slot: Slot,
}

/// Certifies that a family is (up to `j_set` colors lying inside `F`) the
/// path list of a badge or generalized badge with skeleton `F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CertificateWire", into = "CertificateWire")]
pub struct BadgeCertificate {
    pub badge: Badge,
    pub color_map: Vec<SlotAssignment>,
    pub j_set: Vec<usize>,
    /// Skeleton edits keyed by color; empty for a plain badge.
    pub edits: BTreeMap<usize, PathEdit>,
}

impl BadgeCertificate {
    /// Plain badge, colors mapped to slots in expanded order.
    pub fn identity(badge: Badge) -> BadgeCertificate {
        let color_map = badge
            .slots()
            .into_iter()
            .enumerate()
            .map(|(color, slot)| SlotAssignment { color, slot })
            .collect();
        BadgeCertificate { badge, color_map, j_set: Vec::new(), edits: BTreeMap::new() }
    }

    pub fn is_generalized(&self) -> bool {
        self.edits.values().any(|e| !e.is_empty())
    }

    pub fn slot_of(&self, color: usize) -> Option<Slot> {
        self.color_map.iter().find(|a| a.color == color).map(|a| a.slot)
    }
}

/// Outcome of [`verify_badge`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub ok: bool,
    pub reason: Option<String>,
}

impl Verdict {
    fn pass() -> Verdict {
        Verdict { ok: true, reason: None }
    }

    fn fail(reason: impl Into<String>) -> Verdict {
        Verdict { ok: false, reason: Some(reason.into()) }
    }
}

pub fn verify_badge(f: &Matching, family: &ColorFamily, cert: &BadgeCertificate) -> Verdict {
    let b = &cert.badge;
    if let Err(e) = Badge::with_host_vertices(b.host_vertices.clone(), b.strips.clone()) {
        return Verdict::fail(format!("badge invalid: {e}"));
    }
    if b.skeleton().edges() != f.edges() {
        return Verdict::fail("badge skeleton differs from F");
    }
    if b.vertices().iter().any(|v| f.covers(*v) && b.strip_of(*v).is_none()) {
        return Verdict::fail("a strip endpoint is covered by F");
    }
    let mut seen = BTreeSet::new();
    for &j in &cert.j_set {
        if j >= family.len() || !seen.insert(j) {
            return Verdict::fail(format!("bad j_set index {j}"));
        }
        if !family.color(j).is_subset(f.edges()) {
            return Verdict::fail(format!("j_set color {j} is not inside F"));
        }
    }
    let mut per_slot: BTreeMap<Slot, usize> = BTreeMap::new();
    for a in &cert.color_map {
        if a.color >= family.len() || !seen.insert(a.color) {
            return Verdict::fail(format!("color {} mapped twice or out of range", a.color));
        }
        if a.slot.strip >= b.strips.len() {
            return Verdict::fail(format!("color {} mapped to missing strip", a.color));
        }
        *per_slot.entry(a.slot).or_default() += 1;
        let edit = cert.edits.get(&a.color).cloned().unwrap_or_default();
        if edit.added.iter().chain(&edit.removed).any(|e| !f.contains(e)) {
            return Verdict::fail(format!("edit for color {} touches a non-skeleton edge", a.color));
        }
        let expected = edit.apply(&b.slot_edges(a.slot));
        if &expected != family.color(a.color) {
            return Verdict::fail(format!("color {} does not match its {} path", a.color, a.slot.side));
        }
    }
    if seen.len() != family.len() {
        return Verdict::fail("some colors are neither mapped nor in j_set");
    }
    for (i, s) in b.strips.iter().enumerate() {
        for side in [Side::A, Side::B] {
            let got = per_slot.get(&Slot { strip: i, side }).copied().unwrap_or(0);
            if got != s.weight() {
                return Verdict::fail(format!(
                    "strip {i} side {side} has {got} colors, weight is {}",
                    s.weight()
                ));
            }
        }
    }
    Verdict::pass()
}

/// Reads a family of `F`-AAP vertex sequences as a badge if it is one.
///
/// Each path `x a1 b1 … am bm y` is the A path of the strip with interior
/// `a1 b1 … am bm`; its B partner swaps every skeleton pair.
pub fn recognize_badge(f: &Matching, paths: &[(usize, Vec<Vertex>)]) -> Option<BadgeCertificate> {
    // Canonical (strip, side) per path.
    let mut groups: BTreeMap<Origamistrip, Vec<(usize, Side)>> = BTreeMap::new();
    for (color, verts) in paths {
        let aap = Aap::new(f, verts.clone()).ok()?;
        let v = aap.vertices();
        let (x, y) = (v[0], v[v.len() - 1]);
        let interior = v[1..v.len() - 1].to_vec();
        if interior.is_empty() {
            return None;
        }
        let as_a = Origamistrip::new(x, y, interior).ok()?;
        let swapped: Vec<Vertex> = as_a.interior.chunks(2).flat_map(|p| [p[1], p[0]]).collect();
        let as_b = Origamistrip::new(x, y, swapped).ok()?;
        // Pick a canonical orientation and labelling among the four readings.
        let candidates = [
            (as_a.clone(), Side::A),
            (as_b.clone(), Side::B),
            (as_a.reversed(), Side::A),
            (as_b.reversed(), Side::B),
        ];
        let (strip, side) = candidates.into_iter().min_by(|a, b| a.0.cmp(&b.0)).unwrap();
        groups.entry(strip).or_default().push((*color, side));
    }
    let mut strips = Vec::new();
    let mut color_map = Vec::new();
    for (strip, members) in groups {
        let w = strip.weight();
        let a: Vec<usize> = members.iter().filter(|m| m.1 == Side::A).map(|m| m.0).collect();
        let b: Vec<usize> = members.iter().filter(|m| m.1 == Side::B).map(|m| m.0).collect();
        if a.len() != w || b.len() != w {
            return None;
        }
        let idx = strips.len();
        for c in a {
            color_map.push(SlotAssignment { color: c, slot: Slot { strip: idx, side: Side::A } });
        }
        for c in b {
            color_map.push(SlotAssignment { color: c, slot: Slot { strip: idx, side: Side::B } });
        }
        strips.push(strip);
    }
    let badge = Badge::from_strips(strips).ok()?;
    if badge.skeleton().edges() != f.edges() {
        return None;
    }
    color_map.sort_by_key(|a| a.color);
    Some(BadgeCertificate { badge, color_map, j_set: Vec::new(), edits: BTreeMap::new() })
}

impl PartialOrd for Origamistrip {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Origamistrip {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.x, self.y, &self.interior).cmp(&(other.x, other.y, &other.interior))
    }
}

#[derive(Serialize, Deserialize)]
struct StripWire {
    x: Vertex,
    y: Vertex,
    interior: Vec<Vertex>,
}

#[derive(Serialize, Deserialize)]
struct EditWire {
    color: usize,
    added: Vec<Edge>,
    removed: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct CertificateWire {
    host: Multigraph,
    weights: BTreeMap<String, usize>,
    strips: BTreeMap<String, StripWire>,
    color_map: Vec<SlotAssignment>,
    j_set: Vec<usize>,
    edits: Vec<EditWire>,
}

impl From<BadgeCertificate> for CertificateWire {
    fn from(c: BadgeCertificate) -> Self {
        let key = |i: usize| format!("{i}");
        CertificateWire {
            host: c.badge.host(),
            weights: c.badge.strips.iter().enumerate().map(|(i, s)| (key(i), s.weight())).collect(),
            strips: c
                .badge
                .strips
                .iter()
                .enumerate()
                .map(|(i, s)| (key(i), StripWire { x: s.x, y: s.y, interior: s.interior.clone() }))
                .collect(),
            color_map: c.color_map,
            j_set: c.j_set,
            edits: c
                .edits
                .into_iter()
                .filter(|(_, e)| !e.is_empty())
                .map(|(color, e)| EditWire {
                    color,
                    added: e.added.into_iter().collect(),
                    removed: e.removed.into_iter().collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<CertificateWire> for BadgeCertificate {
    type Error = Error;

    fn try_from(w: CertificateWire) -> Result<Self> {
        let mut strips = Vec::with_capacity(w.host.edges.len());
        for (i, &(x, y)) in w.host.edges.iter().enumerate() {
            let s = w
                .strips
                .get(&format!("{i}"))
                .ok_or_else(|| Error::Parse(format!("missing strip for host edge {i}")))?;
            if (s.x, s.y) != (x, y) {
                return Err(Error::Parse(format!("strip {i} endpoints differ from host edge")));
            }
            let strip = Origamistrip::new(s.x, s.y, s.interior.clone())?;
            if w.weights.get(&format!("{i}")) != Some(&strip.weight()) {
                return Err(Error::Parse(format!("weight of host edge {i} does not match its strip")));
            }
            strips.push(strip);
        }
        if w.strips.len() != strips.len() || w.weights.len() != strips.len() {
            return Err(Error::Parse("strip/weight maps do not match host edges".into()));
        }
        let badge = Badge::with_host_vertices(w.host.vertices, strips)?;
        let edits = w
            .edits
            .into_iter()
            .map(|e| {
                (e.color, PathEdit { added: e.added.into_iter().collect(), removed: e.removed.into_iter().collect() })
            })
            .collect();
        Ok(BadgeCertificate { badge, color_map: w.color_map, j_set: w.j_set, edits })
    }
}
