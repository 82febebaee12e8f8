//! Rainbow matchings of size `n`: the `3n-3` theorem, both cooperative
//! versions, and an exhaustive oracle.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use crate::alternating::{find_f_aap, max_matching, path_edges, RainbowAap};
use crate::badge::{extend_badge_rainbow_aap, BadgeCertificate, ExtraEdge, Side, Slot};
use crate::engine::{
    cooperative_decide_with, rainbow_aap_or_badge_with, Decision, EngineOptions, EngineStats, UnionCheck,
};
use crate::error::{Error, Result};
use crate::gen::rng;
use crate::graph::{is_rainbow_selection, validate_matching, ColorFamily, Edge, EdgeSet, Matching, RainbowSelection};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowMatchingWitness {
    pub matching: Matching,
    pub assignment: RainbowSelection,
}

impl RainbowMatchingWitness {
    fn from_pairs(mut pairs: Vec<(usize, Edge)>) -> Result<RainbowMatchingWitness> {
        pairs.sort_by_key(|p| p.1);
        let matching = Matching::new(pairs.iter().map(|p| p.1).collect())?;
        Ok(RainbowMatchingWitness { matching, assignment: RainbowSelection::new(pairs) })
    }

    pub fn len(&self) -> usize {
        self.matching.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matching.is_empty()
    }
}

/// Matching validity, one distinct color per edge, membership.
pub fn verify_witness(family: &ColorFamily, w: &RainbowMatchingWitness) -> bool {
    let edges: EdgeSet = w.assignment.pairs.iter().map(|p| p.1).collect();
    validate_matching(w.matching.edges())
        && edges == *w.matching.edges()
        && w.assignment.pairs.len() == w.matching.len()
        && is_rainbow_selection(family, &w.assignment)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Witness,
    CounterexampleCandidate,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Phase {
    pub step: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub outcome: Outcome,
    pub trace: Vec<Phase>,
    /// New position → original color, when colors were reordered so the
    /// colors behind the base matching come first.
    pub permutation: Vec<usize>,
    pub stats: EngineStats,
}

impl SolveReport {
    fn new() -> SolveReport {
        SolveReport { outcome: Outcome::Inconclusive, trace: Vec::new(), permutation: Vec::new(), stats: EngineStats::default() }
    }

    fn push(&mut self, step: &str, detail: impl Into<String>) {
        self.trace.push(Phase { step: step.into(), detail: detail.into() });
    }
}

/// Which cooperative statement to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    /// `(3n-2+t, t+1, n) → n`, any `n ≥ 1`.
    ThreeNMinus2,
    /// `(3n-3+t, t+1, n) → n`, `n ≥ 3`.
    ThreeNMinus3,
}

impl Variant {
    pub fn label(self) -> &'static str {
        match self {
            Variant::ThreeNMinus2 => "3n-2+t",
            Variant::ThreeNMinus3 => "3n-3+t",
        }
    }

    pub fn colors(self, n: usize, t: usize) -> usize {
        match self {
            Variant::ThreeNMinus2 => 3 * n + t - 2,
            Variant::ThreeNMinus3 => 3 * n + t - 3,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub budget: u64,
    pub union_check: UnionCheck,
    /// Try a greedy rainbow matching before the constructive route.
    pub greedy: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { budget: crate::engine::DEFAULT_BUDGET, union_check: UnionCheck::default(), greedy: true }
    }
}

/// Exhaustive search for a rainbow matching of `size` edges.
pub fn rainbow_matching_oracle(family: &ColorFamily, size: usize, budget: u64) -> Result<Option<RainbowMatchingWitness>> {
    let mut s = MatchSearch { family, size, budget, nodes: 0, used: BTreeSet::new(), picked: Vec::new() };
    if s.go(0)? {
        return RainbowMatchingWitness::from_pairs(s.picked).map(Some);
    }
    Ok(None)
}

struct MatchSearch<'a> {
    family: &'a ColorFamily,
    size: usize,
    budget: u64,
    nodes: u64,
    used: BTreeSet<u32>,
    picked: Vec<(usize, Edge)>,
}

impl MatchSearch<'_> {
    fn go(&mut self, c: usize) -> Result<bool> {
        if self.picked.len() == self.size {
            return Ok(true);
        }
        if self.family.len() - c < self.size - self.picked.len() {
            return Ok(false);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        for &e in self.family.color(c) {
            if self.used.contains(&e.lo().0) || self.used.contains(&e.hi().0) {
                continue;
            }
            self.used.extend([e.lo().0, e.hi().0]);
            self.picked.push((c, e));
            if self.go(c + 1)? {
                return Ok(true);
            }
            self.picked.pop();
            self.used.remove(&e.lo().0);
            self.used.remove(&e.hi().0);
        }
        self.go(c + 1)
    }
}

fn greedy(family: &ColorFamily, size: usize) -> Option<RainbowMatchingWitness> {
    let mut used = BTreeSet::new();
    let mut pairs = Vec::new();
    for (c, set) in family.iter().enumerate() {
        if pairs.len() == size {
            break;
        }
        if let Some(&e) = set.iter().find(|e| !used.contains(&e.lo()) && !used.contains(&e.hi())) {
            used.extend(e.ends());
            pairs.push((c, e));
        }
    }
    (pairs.len() == size).then(|| RainbowMatchingWitness::from_pairs(pairs).ok()).flatten()
}

fn binomial(n: usize, r: usize) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u64, |acc, i| acc.saturating_mul((n - i) as u64) / (i as u64 + 1))
}

/// Checks that every union of `q` colors has a matching of size `n`.
pub fn check_matching_union(family: &ColorFamily, q: usize, n: usize, mode: UnionCheck) -> Result<()> {
    let m = family.len();
    if q == 0 || q > m || mode == UnionCheck::Skip {
        return Ok(());
    }
    let bad = |idx: &[usize]| max_matching(&family.union_of(idx)).len() < n;
    let exhaustive = match mode {
        UnionCheck::Exhaustive => true,
        UnionCheck::Auto { limit, .. } => binomial(m, q) <= limit,
        UnionCheck::Skip => unreachable!(),
    };
    if exhaustive {
        let mut idx: Vec<usize> = (0..q).collect();
        loop {
            if bad(&idx) {
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
    let mut r = rng(seed);
    for _ in 0..samples {
        let mut idx = sample(&mut r, m, q).into_vec();
        idx.sort_unstable();
        if bad(&idx) {
            return Err(Error::UnionConditionViolated { indices: idx });
        }
    }
    Ok(())
}

/// `(3n-3, n) → n` for `n ≥ 3`: a rainbow matching of size `n` from `3n-3`
/// matchings of size `n`.
pub fn solve_main(family: &ColorFamily, n: usize) -> Result<RainbowMatchingWitness> {
    solve_main_with(family, n, SolveOptions::default()).map(|(w, _)| w)
}

pub fn solve_main_with(family: &ColorFamily, n: usize, opts: SolveOptions) -> Result<(RainbowMatchingWitness, SolveReport)> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("the 3n-3 statement needs n ≥ 3, got {n}")));
    }
    if family.len() != 3 * n - 3 {
        return Err(Error::InvalidParameter(format!("need {} colors, got {}", 3 * n - 3, family.len())));
    }
    for (i, set) in family.iter().enumerate() {
        if !validate_matching(set) || set.len() < n {
            return Err(Error::InvalidParameter(format!("color {i} is not a matching of size {n}")));
        }
    }
    let mut report = SolveReport::new();
    if opts.greedy {
        if let Some(w) = greedy(family, n) {
            report.push("greedy", format!("{n} edges without search"));
            report.outcome = Outcome::Witness;
            return Ok((w, report));
        }
    }
    let w = three_n_minus_3(family, 0, n, opts, &mut report, true)?;
    report.outcome = Outcome::Witness;
    Ok((w, report))
}

/// The cooperative statements; checks the union precondition first.
pub fn solve_cooperative(family: &ColorFamily, t: usize, n: usize, variant: Variant) -> Result<RainbowMatchingWitness> {
    solve_cooperative_with(family, t, n, variant, SolveOptions::default()).map(|(w, _)| w)
}

pub fn solve_cooperative_with(
    family: &ColorFamily,
    t: usize,
    n: usize,
    variant: Variant,
    opts: SolveOptions,
) -> Result<(RainbowMatchingWitness, SolveReport)> {
    let min_n = if variant == Variant::ThreeNMinus3 { 3 } else { 1 };
    if n < min_n {
        return Err(Error::InvalidParameter(format!("the {} statement needs n ≥ {min_n}, got {n}", variant.label())));
    }
    let want = variant.colors(n, t);
    if family.len() != want {
        return Err(Error::InvalidParameter(format!("the {} statement with n={n}, t={t} needs {want} colors, got {}", variant.label(), family.len())));
    }
    check_matching_union(family, t + 1, n, opts.union_check)?;
    let mut report = SolveReport::new();
    if opts.greedy {
        if let Some(w) = greedy(family, n) {
            report.push("greedy", format!("{n} edges without search"));
            report.outcome = Outcome::Witness;
            return Ok((w, report));
        }
    }
    let w = match variant {
        Variant::ThreeNMinus2 => three_n_minus_2(family, t, n, opts, &mut report)?,
        Variant::ThreeNMinus3 => three_n_minus_3(family, t, n, opts, &mut report, false)?,
    };
    report.outcome = Outcome::Witness;
    Ok((w, report))
}

/// Base matching of size `n-1` from the first `3(n-1)-2+t` colors.
fn base_matching(
    family: &ColorFamily,
    t: usize,
    n: usize,
    opts: SolveOptions,
    report: &mut SolveReport,
) -> Result<Vec<(usize, Edge)>> {
    if n == 1 {
        return Ok(Vec::new());
    }
    let take = 3 * (n - 1) + t - 2;
    let idx: Vec<usize> = (0..take).collect();
    let sub = family.select(&idx);
    let w = three_n_minus_2(&sub, t, n - 1, opts, report)?;
    Ok(w.assignment.pairs)
}

fn three_n_minus_2(
    family: &ColorFamily,
    t: usize,
    n: usize,
    opts: SolveOptions,
    report: &mut SolveReport,
) -> Result<RainbowMatchingWitness> {
    if n == 1 {
        let (c, e) = family
            .iter()
            .enumerate()
            .find_map(|(c, s)| s.iter().next().map(|&e| (c, e)))
            .ok_or_else(|| Error::UnionConditionViolated { indices: (0..family.len().min(t + 1)).collect() })?;
        return RainbowMatchingWitness::from_pairs(vec![(c, e)]);
    }
    let base = base_matching(family, t, n, opts, report)?;
    report.push("base", format!("rainbow matching of size {} for n={n}", base.len()));
    let f = Matching::new(base.iter().map(|p| p.1).collect())?;
    let k_colors: BTreeSet<usize> = base.iter().map(|p| p.0).collect();
    let others: Vec<usize> = (0..family.len()).filter(|c| !k_colors.contains(c)).collect();
    let sets: ColorFamily = others.iter().map(|&c| family.color(c).union(f.edges()).copied().collect()).collect();
    let (d, stats) = cooperative_decide_with(&f, &sets, t, EngineOptions { budget: opts.budget }, UnionCheck::Skip)?;
    report.stats.absorb(&stats);
    match d {
        Decision::Witness(r) => {
            report.push("augment", format!("rainbow path with {} free edges", r.colors.len()));
            augment_with(&f, &base, &r, &others)
        }
        Decision::Certificate(_) => Err(Error::Stalled("surplus colors yet a certificate".into())),
    }
}

/// `F △ R` with `F`'s colors kept and `R`'s colors mapped through `others`.
fn augment_with(f: &Matching, base: &[(usize, Edge)], r: &RainbowAap, others: &[usize]) -> Result<RainbowMatchingWitness> {
    let on_path: EdgeSet = r.path.edges().into_iter().collect();
    let mut pairs: Vec<(usize, Edge)> = r.colors.iter().map(|&(e, c)| (others[c], e)).collect();
    pairs.extend(base.iter().filter(|p| !on_path.contains(&p.1)).copied());
    let w = RainbowMatchingWitness::from_pairs(pairs)?;
    debug_assert_eq!(w.len(), f.len() + 1);
    Ok(w)
}

fn three_n_minus_3(
    family: &ColorFamily,
    t: usize,
    n: usize,
    opts: SolveOptions,
    report: &mut SolveReport,
    main_route: bool,
) -> Result<RainbowMatchingWitness> {
    let base = base_matching(family, t, n, opts, report)?;
    report.push("base", format!("rainbow matching of size {} via the 3(n-1)-2+t statement", base.len()));
    grow_base(family, t, &base, opts, report, main_route)
}

/// Grows a given rainbow matching of size `n - 1` (pairs of color and edge)
/// by one edge using the remaining `2(n-1) + t` colors.
pub fn complete_from_base(
    family: &ColorFamily,
    t: usize,
    base: &[(usize, Edge)],
    opts: SolveOptions,
) -> Result<(RainbowMatchingWitness, SolveReport)> {
    let sel = RainbowSelection::new(base.to_vec());
    if !is_rainbow_selection(family, &sel) || !validate_matching(&base.iter().map(|p| p.1).collect()) {
        return Err(Error::InvalidParameter("base is not a rainbow matching of the family".into()));
    }
    let k = base.len();
    if family.len() != 3 * k + t || k < 2 {
        return Err(Error::InvalidParameter(format!("a base of size {k} needs {} colors and size at least 2", 3 * k + t)));
    }
    let mut report = SolveReport::new();
    let w = grow_base(family, t, base, opts, &mut report, t == 0)?;
    report.outcome = Outcome::Witness;
    Ok((w, report))
}

fn grow_base(
    family: &ColorFamily,
    t: usize,
    base: &[(usize, Edge)],
    opts: SolveOptions,
    report: &mut SolveReport,
    main_route: bool,
) -> Result<RainbowMatchingWitness> {
    let n = base.len() + 1;
    let f = Matching::new(base.iter().map(|p| p.1).collect())?;
    let k_colors: BTreeSet<usize> = base.iter().map(|p| p.0).collect();
    let others: Vec<usize> = (0..family.len()).filter(|c| !k_colors.contains(c)).collect();
    report.permutation = base.iter().map(|p| p.0).chain(others.iter().copied()).collect();
    let eopts = EngineOptions { budget: opts.budget };

    let decision = if main_route {
        // One F-AAP per unrepresented color, then the path engine.
        let mut paths = ColorFamily::default();
        for &c in &others {
            let p = find_f_aap(&f, family.color(c))
                .ok_or_else(|| Error::Stalled(format!("color {c} has no augmenting path")))?;
            paths.push(path_edges(p.vertices()).into_iter().collect());
        }
        let (d, stats) = rainbow_aap_or_badge_with(&f, &paths, eopts)?;
        report.stats.absorb(&stats);
        match d {
            Decision::Witness(r) => Decision::Witness(r),
            Decision::Certificate(cert) => match extra_edge(&f, family, &others, &paths, &cert)? {
                Some(r) => {
                    report.push("extra edge", "a color has a free edge off its path");
                    Decision::Witness(r)
                }
                None => Decision::Certificate(cert),
            },
        }
    } else {
        let sets: ColorFamily = others.iter().map(|&c| family.color(c).union(f.edges()).copied().collect()).collect();
        let (d, stats) = cooperative_decide_with(&f, &sets, t, eopts, UnionCheck::Skip)?;
        report.stats.absorb(&stats);
        d
    };
    let cert = match decision {
        Decision::Witness(r) => {
            report.push("augment", format!("rainbow path with {} free edges", r.colors.len()));
            return augment_with(&f, base, &r, &others);
        }
        Decision::Certificate(c) => c,
    };
    let end = Endgame { family, f: &f, base, others: &others, cert: &cert };
    let w = if cert.badge.strips().len() == 1 { end.single_strip(report)? } else { end.several_strips(report)? };
    if !verify_witness(family, &w) || w.len() != n {
        return Err(Error::Stalled("endgame produced an invalid matching".into()));
    }
    Ok(w)
}

/// For the main route: a listed color whose matching has a free edge off
/// its path gives a rainbow path by the one-edge extension.
fn extra_edge(
    f: &Matching,
    family: &ColorFamily,
    others: &[usize],
    paths: &ColorFamily,
    cert: &BadgeCertificate,
) -> Result<Option<RainbowAap>> {
    let expanded = expanded_colors(cert);
    for (pos, &c) in others.iter().enumerate() {
        let Some(e) = family.color(c).iter().find(|e| !f.contains(e) && !paths.color(pos).contains(e)) else {
            continue;
        };
        let slot = expanded.iter().position(|&x| x == pos).expect("every path is listed");
        let w = extend_badge_rainbow_aap(&cert.badge, ExtraEdge::Into(slot), *e)?;
        let colors = w.colors.iter().map(|&(e, s)| (e, expanded[s])).collect();
        return Ok(Some(RainbowAap { path: w.path, colors }));
    }
    Ok(None)
}

/// Colors in the badge's expanded slot order.
fn expanded_colors(cert: &BadgeCertificate) -> Vec<usize> {
    let mut by_slot: BTreeMap<Slot, Vec<usize>> = BTreeMap::new();
    for a in &cert.color_map {
        by_slot.entry(a.slot).or_default().push(a.color);
    }
    cert.badge.slots().iter().scan(BTreeMap::<Slot, usize>::new(), |seen, s| {
        let i = seen.entry(*s).or_default();
        let c = by_slot[s][*i];
        *i += 1;
        Some(c)
    }).collect()
}

/// Finishing moves when the unrepresented colors form a badge.
struct Endgame<'a> {
    family: &'a ColorFamily,
    f: &'a Matching,
    base: &'a [(usize, Edge)],
    /// Position in the path family → original color.
    others: &'a [usize],
    cert: &'a BadgeCertificate,
}

impl Endgame<'_> {
    fn side_colors(&self, strip: usize, side: Side) -> Vec<usize> {
        self.cert
            .color_map
            .iter()
            .filter(|a| a.slot == Slot { strip, side })
            .map(|a| self.others[a.color])
            .collect()
    }

    fn color_of_f_edge(&self, e: Edge) -> usize {
        self.base.iter().find(|p| p.1 == e).expect("edge of F").0
    }

    /// `(Q \ F) ∪ (F \ Q)` for an even skeleton path `Q` from a strip end to
    /// an interior vertex plus the edge `e` of color `c1`.
    fn through_strip(&self, strip: usize, from: crate::graph::Vertex, z: crate::graph::Vertex, e: Edge, c1: usize) -> Result<RainbowMatchingWitness> {
        let os = &self.cert.badge.strips()[strip];
        let (side, q) = os.q_path(z, from)?;
        let mut pool = self.side_colors(strip, side).into_iter();
        let mut pairs = vec![(c1, e)];
        for ed in q.non_f_edges() {
            pairs.push((pool.next().ok_or_else(|| Error::Stalled("side has too few colors".into()))?, ed));
        }
        let on_path: BTreeSet<Edge> = q.f_edges().clone();
        pairs.extend(self.base.iter().filter(|p| !on_path.contains(&p.1)).copied());
        RainbowMatchingWitness::from_pairs(pairs)
    }

    fn single_strip(&self, report: &mut SolveReport) -> Result<RainbowMatchingWitness> {
        let os = &self.cert.badge.strips()[0];
        let (x, y) = (os.x(), os.y());
        let e1 = Edge::new(os.u(1), os.v(1))?;
        let c1 = self.color_of_f_edge(e1);
        let free: Vec<Edge> = self.family.color(c1).iter().filter(|e| !self.f.contains(e)).copied().collect();
        let in_os = |v| os.vertices().any(|u| u == v);
        let a_cols = self.side_colors(0, Side::A);
        let a_path = os.path_vertices(Side::A);
        let a_edges: Vec<Edge> = path_edges(&a_path).into_iter().filter(|e| !self.f.contains(e)).collect();

        // An edge missing the strip, or meeting it at an end.
        for &e in &free {
            let touch: Vec<_> = e.ends().into_iter().filter(|&v| in_os(v)).collect();
            let at_end = touch.len() == 1 && (touch[0] == x || touch[0] == y);
            if touch.is_empty() || at_end {
                report.push("single strip", if touch.is_empty() { "edge misses the strip" } else { "edge at a strip end" });
                let mut pairs = vec![(c1, e)];
                let usable = a_edges.iter().filter(|a| !a.ends().iter().any(|v| e.touches(*v)));
                pairs.extend(a_cols.iter().copied().zip(usable.copied()));
                return RainbowMatchingWitness::from_pairs(pairs);
            }
        }
        for &e in &free {
            let touch: Vec<_> = e.ends().into_iter().filter(|&v| in_os(v)).collect();
            if touch.len() == 1 {
                report.push("single strip", "edge from an interior vertex leaves the strip");
                return self.through_strip(0, x, touch[0], e, c1);
            }
        }
        let e = *free
            .iter()
            .find(|e| e.touches(y))
            .ok_or_else(|| Error::UnionConditionViolated { indices: vec![c1] })?;
        let z = e.other(y).unwrap();
        if z != x {
            report.push("single strip", "edge zy with z interior");
            return self.through_strip(0, x, z, e, c1);
        }
        report.push("single strip", "edge xy with the two crossing edges between e1 and e2");
        let e_a = Edge::new(os.v(1), os.u(2))?;
        let e_b = Edge::new(os.u(1), os.v(2))?;
        let b_cols = self.side_colors(0, Side::B);
        let mut pairs = vec![(c1, e), (a_cols[0], e_a), (b_cols[0], e_b)];
        let e2 = Edge::new(os.u(2), os.v(2))?;
        pairs.extend(self.base.iter().filter(|p| p.1 != e1 && p.1 != e2).copied());
        RainbowMatchingWitness::from_pairs(pairs)
    }

    fn several_strips(&self, report: &mut SolveReport) -> Result<RainbowMatchingWitness> {
        let &(c1, e1) = self.base.first().ok_or_else(|| Error::Stalled("empty base".into()))?;
        let e = *self
            .family
            .color(c1)
            .iter()
            .find(|e| !self.f.contains(e))
            .ok_or_else(|| Error::UnionConditionViolated { indices: vec![c1] })?;
        let expanded = expanded_colors(self.cert);
        let q = extend_badge_rainbow_aap(&self.cert.badge, ExtraEdge::Singleton, e)?;
        let mut pairs: Vec<(usize, Edge)> = q
            .colors
            .iter()
            .map(|&(ed, s)| (if s < expanded.len() { self.others[expanded[s]] } else { c1 }, ed))
            .collect();
        let on_path: EdgeSet = q.path.edges().into_iter().collect();
        let kept: Vec<(usize, Edge)> = self.base.iter().filter(|p| !on_path.contains(&p.1)).copied().collect();
        if on_path.contains(&e1) {
            report.push("several strips", "extension passes through e1");
        } else {
            // e1 stays, but its color is spent on e: recolor it.
            let used: BTreeSet<usize> = pairs.iter().chain(&kept).map(|p| p.0).collect();
            let c = (0..self.family.len())
                .find(|c| !used.contains(c) && self.family.color(*c).contains(&e1))
                .ok_or_else(|| Error::Stalled("no spare color holds e1".into()))?;
            report.push("several strips", format!("e1 recolored by color {c}"));
            pairs.extend(kept.into_iter().map(|p| if p.1 == e1 { (c, e1) } else { p }));
            return RainbowMatchingWitness::from_pairs(pairs);
        }
        pairs.extend(kept);
        RainbowMatchingWitness::from_pairs(pairs)
    }
}
