//! Seeded random instance generators.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::badge::{badge_paths, make_badge, Badge, Multigraph, Side, Slot};
use crate::error::{Error, Result};
use crate::graph::{ColorFamily, Edge, EdgeSet, Matching, Vertex};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `{01, 23, …}` with `k` edges.
pub fn standard_matching(k: usize) -> Matching {
    Matching::new((0..k as u32).map(|i| Edge::of(2 * i, 2 * i + 1)).collect()).expect("disjoint pairs")
}

/// A uniformly grown random `F`-AAP on vertices `0..n`, or `None` if the
/// walk dead-ends. Starts at an uncovered vertex, takes a random unused
/// vertex at each free step and follows `F` when it lands on a covered one.
pub fn random_aap(rng: &mut impl Rng, f: &Matching, n: u32) -> Option<Vec<Vertex>> {
    let free: Vec<Vertex> = (0..n).map(Vertex).filter(|v| !f.covers(*v)).collect();
    if free.len() < 2 {
        return None;
    }
    let start = *free.choose(rng)?;
    let mut path = vec![start];
    loop {
        let options: Vec<Vertex> = (0..n).map(Vertex).filter(|v| !path.contains(v)).collect();
        let next = *options.choose(rng)?;
        path.push(next);
        match f.partner(next) {
            None => return Some(path),
            Some(p) if !path.contains(&p) => path.push(p),
            Some(_) => return None,
        }
    }
}

/// `count` random `F`-AAPs on `0..n`, as edge sets.
pub fn random_aap_family(rng: &mut impl Rng, f: &Matching, n: u32, count: usize) -> Result<ColorFamily> {
    let mut out = ColorFamily::default();
    let mut tries = 0;
    while out.len() < count {
        tries += 1;
        if tries > 1000 * (count + 1) {
            return Err(Error::InvalidParameter(format!("no F-AAP on {n} vertices")));
        }
        if let Some(p) = random_aap(rng, f, n) {
            out.push(crate::alternating::path_edges(&p).into_iter().collect());
        }
    }
    Ok(out)
}

/// Random matching of `size` edges on vertices `0..n`.
pub fn random_matching(rng: &mut impl Rng, n: u32, size: usize) -> Result<EdgeSet> {
    if 2 * size > n as usize {
        return Err(Error::InvalidParameter(format!("a {size}-matching needs {} vertices", 2 * size)));
    }
    let mut vs: Vec<u32> = (0..n).collect();
    vs.shuffle(rng);
    Ok(vs.chunks(2).take(size).map(|p| Edge::of(p[0], p[1])).collect())
}

/// Random matching of `size` edges between `0..side` and `side..2·side`.
pub fn random_bipartite_matching(rng: &mut impl Rng, side: u32, size: usize) -> Result<EdgeSet> {
    if size > side as usize {
        return Err(Error::InvalidParameter(format!("a {size}-matching needs sides of {size}")));
    }
    let mut left: Vec<u32> = (0..side).collect();
    let mut right: Vec<u32> = (side..2 * side).collect();
    left.shuffle(rng);
    right.shuffle(rng);
    Ok(left.iter().zip(&right).take(size).map(|(&a, &b)| Edge::of(a, b)).collect())
}

pub fn random_matching_family(rng: &mut impl Rng, count: usize, n: u32, size: usize) -> Result<ColorFamily> {
    (0..count).map(|_| random_matching(rng, n, size)).collect()
}

pub fn random_bipartite_family(rng: &mut impl Rng, count: usize, side: u32, size: usize) -> Result<ColorFamily> {
    (0..count).map(|_| random_bipartite_matching(rng, side, size)).collect()
}

/// A badge on a random loop-free host with the given total weight, labels
/// shuffled.
pub fn random_badge(rng: &mut impl Rng, weight: usize, host_vertices: u32) -> Result<Badge> {
    if host_vertices < 2 || weight == 0 {
        return Err(Error::InvalidParameter("need two host vertices and positive weight".into()));
    }
    let mut weights = Vec::new();
    let mut left = weight;
    while left > 0 {
        let w = rng.gen_range(1..=left);
        weights.push(w);
        left -= w;
    }
    let host = Multigraph {
        vertices: (0..host_vertices).map(Vertex).collect(),
        edges: weights
            .iter()
            .map(|_| {
                let a = rng.gen_range(0..host_vertices);
                let mut b = rng.gen_range(0..host_vertices - 1);
                if b >= a {
                    b += 1;
                }
                (Vertex(a), Vertex(b))
            })
            .collect(),
    };
    make_badge(&host, &weights, None)
}

/// Badge paths with one path swapped for a random `F`-AAP: usually, but
/// not always, this creates a rainbow path.
pub fn perturbed_badge_family(rng: &mut impl Rng, b: &Badge, n: u32) -> Result<ColorFamily> {
    let f = b.skeleton();
    let mut colors: Vec<EdgeSet> = badge_paths(b).colors().to_vec();
    if colors.is_empty() {
        return Ok(ColorFamily::default());
    }
    let i = rng.gen_range(0..colors.len());
    let repl = random_aap_family(rng, &f, n, 1)?;
    colors[i] = repl.color(0).clone();
    Ok(ColorFamily::new(colors))
}

/// Size-`n` matchings shaped around a badge of weight `n - 1`: one color per
/// skeleton edge (that edge plus a random completion), then one color per
/// slot (the slot's free edges plus the skeleton outside its strip).
/// Completions use the badge vertices and `extra` further vertices.
pub fn badge_matching_family(rng: &mut impl Rng, b: &Badge, extra: u32) -> Result<ColorFamily> {
    let f = b.skeleton();
    let n = f.len() + 1;
    let verts: Vec<Vertex> = b.vertices().into_iter().collect();
    let top = verts.iter().map(|v| v.0 + 1).max().unwrap_or(0);
    let pool: Vec<Vertex> = verts.iter().copied().chain((top..top + extra).map(Vertex)).collect();
    let mut colors = Vec::new();
    for &e in f.edges() {
        let mut rest: Vec<Vertex> = pool.iter().copied().filter(|v| !e.touches(*v)).collect();
        rest.shuffle(rng);
        if rest.len() < 2 * (n - 1) {
            return Err(Error::InvalidParameter("too few vertices for a completion".into()));
        }
        let mut set: EdgeSet = rest.chunks(2).take(n - 1).map(|p| Edge::new(p[0], p[1])).collect::<Result<_>>()?;
        set.insert(e);
        colors.push(set);
    }
    for (i, os) in b.strips().iter().enumerate() {
        let others: EdgeSet = f.edges().difference(&os.skeleton()).copied().collect();
        for side in [Side::A, Side::B] {
            debug_assert!(b.slots().contains(&Slot { strip: i, side }));
            for _ in 0..os.weight() {
                colors.push(os.side_edges(side).union(&others).copied().collect());
            }
        }
    }
    Ok(ColorFamily::new(colors))
}
