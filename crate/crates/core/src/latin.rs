//! Latin squares as families of perfect matchings of `K_{n,n}`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{ColorFamily, Edge, EdgeSet, Vertex};
use crate::io::Instance;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatinSquare {
    /// `entries[r][c]` is a symbol in `0..order`.
    entries: Vec<Vec<usize>>,
}

impl LatinSquare {
    pub fn new(entries: Vec<Vec<usize>>) -> Result<LatinSquare> {
        let n = entries.len();
        let full: BTreeSet<usize> = (0..n).collect();
        for (r, row) in entries.iter().enumerate() {
            if row.len() != n || row.iter().copied().collect::<BTreeSet<_>>() != full {
                return Err(Error::InvalidParameter(format!("row {r} is not a permutation of the {n} symbols")));
            }
        }
        for c in 0..n {
            if entries.iter().map(|row| row[c]).collect::<BTreeSet<_>>() != full {
                return Err(Error::InvalidParameter(format!("column {c} is not a permutation of the {n} symbols")));
            }
        }
        Ok(LatinSquare { entries })
    }

    /// Parses rows separated by `/`, one character per cell, e.g.
    /// `"123/231/312"`. Symbols are ranked in sorted order.
    pub fn parse(s: &str) -> Result<LatinSquare> {
        let rows: Vec<Vec<char>> = s.split('/').map(|r| r.trim().chars().collect()).collect();
        let symbols: Vec<char> = rows.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|ch| symbols.binary_search(ch).expect("collected above")).collect())
            .collect();
        LatinSquare::new(entries)
    }

    /// The cyclic square `(r + c) mod n`.
    pub fn cyclic(n: usize) -> LatinSquare {
        LatinSquare { entries: (0..n).map(|r| (0..n).map(|c| (r + c) % n).collect()).collect() }
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, r: usize, c: usize) -> usize {
        self.entries[r][c]
    }

    /// Row `r` is vertex `r`, column `c` is vertex `n + c`; symbol `s`
    /// becomes color `s`.
    pub fn to_family(&self) -> ColorFamily {
        let n = self.order();
        let mut colors = vec![EdgeSet::new(); n];
        for r in 0..n {
            for c in 0..n {
                colors[self.entries[r][c]].insert(Edge::of(r as u32, (n + c) as u32));
            }
        }
        ColorFamily::new(colors)
    }

    pub fn to_instance(&self) -> Instance {
        let n = self.order();
        let labels = (1..=n).map(|i| format!("r{i}")).chain((1..=n).map(|i| format!("c{i}"))).collect();
        Instance::with_labels(labels, self.to_family(), None).expect("labels are distinct")
    }

    /// Cells `(row, col)` behind a rainbow matching of the family.
    pub fn cells(&self, edges: &EdgeSet) -> Vec<(usize, usize)> {
        let n = self.order() as u32;
        edges
            .iter()
            .map(|e| {
                let (r, c) = if e.lo() < Vertex(n) { (e.lo(), e.hi()) } else { (e.hi(), e.lo()) };
                (r.0 as usize, (c.0 - n) as usize)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate_matching;
    use crate::solver::rainbow_matching_oracle;

    #[test]
    fn cyclic_square_of_order_three() {
        let sq = LatinSquare::parse("123/231/312").unwrap();
        assert_eq!(sq, LatinSquare::cyclic(3));
        let fam = sq.to_family();
        assert_eq!(fam.len(), 3);
        for set in fam.iter() {
            assert!(validate_matching(set));
            assert_eq!(set.len(), 3);
            assert!(set.iter().all(|e| e.lo().0 < 3 && e.hi().0 >= 3));
        }
    }

    #[test]
    fn rejects_non_latin_input() {
        assert!(LatinSquare::parse("12/12").is_err());
        assert!(LatinSquare::parse("12/2").is_err());
        assert!(LatinSquare::parse("11/22").is_err());
    }

    #[test]
    fn transversals_of_cyclic_squares() {
        // Cyclic squares of even order have no transversal; odd order ones do.
        for n in 1..=6 {
            let sq = LatinSquare::cyclic(n);
            let w = rainbow_matching_oracle(&sq.to_family(), n, 10_000_000).unwrap();
            assert_eq!(w.is_some(), n % 2 == 1, "order {n}");
            if let Some(w) = w {
                let cells = sq.cells(w.matching.edges());
                let rows: BTreeSet<_> = cells.iter().map(|c| c.0).collect();
                let syms: BTreeSet<_> = cells.iter().map(|&(r, c)| sq.entry(r, c)).collect();
                assert_eq!((rows.len(), syms.len()), (n, n));
            }
        }
    }
}
