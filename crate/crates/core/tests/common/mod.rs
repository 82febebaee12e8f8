//! Brute-force checkers written independently of the library's searches.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rainbow_forge::graph::{ColorFamily, Edge, Matching, Vertex};

fn key(a: u32, b: u32) -> (u32, u32) {
    (a.min(b), a.max(b))
}

/// Edge sets of each color as plain pairs.
fn pairs(fam: &ColorFamily) -> Vec<BTreeSet<(u32, u32)>> {
    fam.iter().map(|s| s.iter().map(|e| (e.lo().0, e.hi().0)).collect()).collect()
}

/// Distinct colors for a list of edges, by trying every assignment.
fn has_sdr(edges: &[(u32, u32)], colors: &[BTreeSet<(u32, u32)>]) -> bool {
    fn go(i: usize, edges: &[(u32, u32)], colors: &[BTreeSet<(u32, u32)>], used: &mut Vec<bool>) -> bool {
        if i == edges.len() {
            return true;
        }
        for c in 0..colors.len() {
            if !used[c] && colors[c].contains(&edges[i]) {
                used[c] = true;
                if go(i + 1, edges, colors, used) {
                    return true;
                }
                used[c] = false;
            }
        }
        false
    }
    go(0, edges, colors, &mut vec![false; colors.len()])
}

/// Whether some alternating path between two uncovered vertices has its
/// free edges colored injectively from the family.
pub fn rainbow_aap_exists(f: &Matching, fam: &ColorFamily) -> bool {
    let colors = pairs(fam);
    let partner: BTreeMap<u32, u32> = f.edges().iter().flat_map(|e| [(e.lo().0, e.hi().0), (e.hi().0, e.lo().0)]).collect();
    let mut adj: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
    for s in &colors {
        for &(a, b) in s {
            if partner.get(&a) != Some(&b) {
                adj.entry(a).or_default().insert(b);
                adj.entry(b).or_default().insert(a);
            }
        }
    }
    fn walk(
        v: u32,
        path: &mut Vec<u32>,
        free: &mut Vec<(u32, u32)>,
        adj: &BTreeMap<u32, BTreeSet<u32>>,
        partner: &BTreeMap<u32, u32>,
        colors: &[BTreeSet<(u32, u32)>],
    ) -> bool {
        // At v after a free edge (or at the start): take another free edge.
        for &w in adj.get(&v).into_iter().flatten() {
            if path.contains(&w) {
                continue;
            }
            free.push(key(v, w));
            if has_sdr(free, colors) {
                match partner.get(&w) {
                    None => {
                        free.pop();
                        return true;
                    }
                    Some(&p) if !path.contains(&p) => {
                        path.extend([w, p]);
                        if walk(p, path, free, adj, partner, colors) {
                            return true;
                        }
                        path.truncate(path.len() - 2);
                    }
                    Some(_) => {}
                }
            }
            free.pop();
        }
        false
    }
    let starts: Vec<u32> = adj.keys().copied().filter(|v| !partner.contains_key(v)).collect();
    starts.into_iter().any(|s| walk(s, &mut vec![s], &mut Vec::new(), &adj, &partner, &colors))
}

/// Checks a claimed rainbow `F`-AAP: uncovered ends, alternation, distinct
/// vertices, and one distinct color per free edge that contains it.
pub fn is_rainbow_aap(f: &Matching, fam: &ColorFamily, verts: &[Vertex], colors: &[(Edge, usize)]) -> bool {
    let vs: Vec<u32> = verts.iter().map(|v| v.0).collect();
    if vs.len() < 2 || !vs.len().is_multiple_of(2) || vs.iter().collect::<BTreeSet<_>>().len() != vs.len() {
        return false;
    }
    let covered: BTreeSet<u32> = f.edges().iter().flat_map(|e| [e.lo().0, e.hi().0]).collect();
    if covered.contains(&vs[0]) || covered.contains(&vs[vs.len() - 1]) {
        return false;
    }
    let fset: BTreeSet<(u32, u32)> = f.edges().iter().map(|e| (e.lo().0, e.hi().0)).collect();
    let given: BTreeMap<(u32, u32), usize> = colors.iter().map(|(e, c)| ((e.lo().0, e.hi().0), *c)).collect();
    let sets = pairs(fam);
    let mut used = BTreeSet::new();
    for (i, w) in vs.windows(2).enumerate() {
        let e = key(w[0], w[1]);
        let should_be_f = i % 2 == 1;
        if fset.contains(&e) != should_be_f {
            return false;
        }
        if !should_be_f {
            let Some(&c) = given.get(&e) else { return false };
            if c >= sets.len() || !sets[c].contains(&e) || !used.insert(c) {
                return false;
            }
        }
    }
    given.len() == vs.len() / 2
}

/// Whether some `k` colors hold `k` pairwise disjoint edges, one each.
pub fn rainbow_matching_exists(fam: &ColorFamily, k: usize) -> bool {
    let colors = pairs(fam);
    fn go(c: usize, need: usize, colors: &[BTreeSet<(u32, u32)>], used: &mut BTreeSet<u32>) -> bool {
        if need == 0 {
            return true;
        }
        if colors.len() - c < need {
            return false;
        }
        for &(a, b) in &colors[c] {
            if !used.contains(&a) && !used.contains(&b) {
                used.insert(a);
                used.insert(b);
                let ok = go(c + 1, need - 1, colors, used);
                used.remove(&a);
                used.remove(&b);
                if ok {
                    return true;
                }
            }
        }
        go(c + 1, need, colors, used)
    }
    go(0, k, &colors, &mut BTreeSet::new())
}

/// Independent check of a rainbow matching: disjoint edges, distinct
/// colors, membership, and the requested size.
pub fn is_rainbow_matching(fam: &ColorFamily, picks: &[(usize, Edge)], k: usize) -> bool {
    let sets = pairs(fam);
    let mut verts = BTreeSet::new();
    let mut cols = BTreeSet::new();
    picks.len() == k
        && picks.iter().all(|&(c, e)| {
            c < sets.len()
                && sets[c].contains(&(e.lo().0, e.hi().0))
                && cols.insert(c)
                && verts.insert(e.lo().0)
                && verts.insert(e.hi().0)
        })
}
