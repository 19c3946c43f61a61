//! Exhaustive anticomplete-pair oracle for small graphs. Every `A` is paired
//! with the maximal anticomplete `B`; the B-side tests are monotone under
//! supersets (chromatic number, and "contains a set of denseness ≥ c"), so
//! nothing is lost.

use serde::{Deserialize, Serialize};

use crate::densest::dense_subset_at_least;
use crate::error::{Error, Result};
use crate::graph::{exact_cap, Caps, Graph};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BruteMode {
    /// A of denseness ≥ c, χ(B) ≥ c.
    Chi,
    /// Both of denseness ≥ c.
    Mindeg,
    /// χ(A) ≥ c and χ(B) ≥ c.
    ChiChi,
}

impl std::str::FromStr for BruteMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chi" => Ok(BruteMode::Chi),
            "mindeg" => Ok(BruteMode::Mindeg),
            "chi-chi" => Ok(BruteMode::ChiChi),
            other => Err(Error::InvalidParameter(format!("unknown mode {other:?}"))),
        }
    }
}

/// Per-subset tables over `0..n`, `n ≤ 20`.
pub struct SubsetTables {
    n: usize,
    adj: Vec<u64>,
    edges: Vec<u32>,
}

impl SubsetTables {
    pub fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        assert!(n <= 20, "subset tables support at most 20 vertices");
        let adj: Vec<u64> = (0..n).map(|v| g.neighbors(v).to_mask()).collect();
        let mut edges = vec![0u32; 1 << n];
        for s in 1..1usize << n {
            let v = s.trailing_zeros() as usize;
            let rest = s & (s - 1);
            edges[s] = edges[rest] + (adj[v] & rest as u64).count_ones();
        }
        SubsetTables { n, adj, edges }
    }

    pub fn edges(&self, s: usize) -> u32 {
        self.edges[s]
    }

    fn dense(&self, s: usize, c: u64) -> bool {
        s != 0 && self.edges[s] as u64 >= c * s.count_ones() as u64
    }

    /// `contains[s]`: some nonempty subset of `s` has denseness ≥ c.
    pub fn contains_dense(&self, c: u64) -> Vec<bool> {
        let mut table: Vec<bool> = (0..1usize << self.n).map(|s| self.dense(s, c)).collect();
        for bit in 0..self.n {
            for s in 0..1usize << self.n {
                if s >> bit & 1 == 1 && table[s ^ (1 << bit)] {
                    table[s] = true;
                }
            }
        }
        table
    }

    /// Chromatic number of every induced subgraph.
    pub fn chromatic(&self) -> Vec<u8> {
        let size = 1usize << self.n;
        let independent: Vec<bool> = (0..size)
            .map(|s| {
                let mut rest = s as u64;
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    if self.adj[v] & s as u64 != 0 {
                        return false;
                    }
                }
                true
            })
            .collect();
        let mut chi = vec![0u8; size];
        for s in 1..size {
            if independent[s] {
                chi[s] = 1;
                continue;
            }
            let low = s & s.wrapping_neg();
            let rest = s ^ low;
            let mut best = u8::MAX;
            let mut sub = rest;
            loop {
                let part = sub | low;
                if independent[part] {
                    best = best.min(chi[s ^ part] + 1);
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
            chi[s] = best;
        }
        chi
    }

    /// Vertices outside `s` with no neighbour in `s`.
    pub fn anticomplete_region(&self, s: usize) -> usize {
        let full = (1usize << self.n) - 1;
        let mut blocked = s;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            blocked |= self.adj[v] as usize;
        }
        full & !blocked
    }
}

/// A pair `(A, B)` meeting the mode's conditions, with the lexicographically
/// least `A`; `None` iff no pair exists. In mindeg mode `B` is shrunk to the
/// largest dense subset of the maximal anticomplete set.
pub fn brute_force_pair(
    g: &Graph,
    c: u64,
    mode: BruteMode,
    caps: &Caps,
) -> Result<Option<(VertexSet, VertexSet)>> {
    let n = g.vertex_count();
    exact_cap("brute-force pair search", n, caps.brute_force_pair.min(20))?;
    let tables = SubsetTables::new(g);
    let contains_dense = tables.contains_dense(c);
    let chi = match mode {
        BruteMode::Mindeg => Vec::new(),
        _ => tables.chromatic(),
    };
    let a_ok = |s: usize| match mode {
        BruteMode::Chi | BruteMode::Mindeg => tables.dense(s, c),
        BruteMode::ChiChi => chi[s] as u64 >= c,
    };
    let b_ok = |s: usize| {
        s != 0
            && match mode {
                BruteMode::Mindeg => contains_dense[s],
                _ => chi[s] as u64 >= c,
            }
    };
    let mut best: Option<(Vec<usize>, usize, usize)> = None;
    for a in 1..1usize << n {
        if !a_ok(a) {
            continue;
        }
        let b = tables.anticomplete_region(a);
        if !b_ok(b) {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&v| a >> v & 1 == 1).collect();
        if best.as_ref().is_none_or(|(m, _, _)| members < *m) {
            best = Some((members, a, b));
        }
    }
    Ok(best.map(|(_, a, b)| {
        let a = VertexSet::from_mask(n, a as u64);
        let b = VertexSet::from_mask(n, b as u64);
        let b = match mode {
            BruteMode::Mindeg => dense_subset_at_least(g, &b, c).expect("contains a dense subset"),
            _ => b,
        };
        (a, b)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::graph::{are_anticomplete, chromatic_number_within, denseness, Rational};

    #[test]
    fn two_triangles_chi_chi() {
        let g = generate::disjoint_union(&generate::complete(3), &generate::complete(3));
        let (a, b) = brute_force_pair(&g, 3, BruteMode::ChiChi, &Caps::default())
            .unwrap()
            .unwrap();
        assert_eq!(a.to_vec(), vec![0, 1, 2]);
        assert_eq!(b.to_vec(), vec![3, 4, 5]);
    }

    #[test]
    fn complete_graph_has_none() {
        let g = generate::complete(6);
        for mode in [BruteMode::Chi, BruteMode::Mindeg, BruteMode::ChiChi] {
            for c in 1..=3 {
                assert!(brute_force_pair(&g, c, mode, &Caps::default())
                    .unwrap()
                    .is_none());
            }
        }
    }

    #[test]
    fn returned_pairs_are_valid() {
        let caps = Caps::default();
        for seed in 0..40 {
            let g = generate::gnp(10, 0.3, seed);
            for mode in [BruteMode::Chi, BruteMode::Mindeg, BruteMode::ChiChi] {
                if let Some((a, b)) = brute_force_pair(&g, 1, mode, &caps).unwrap() {
                    assert!(are_anticomplete(&g, &a, &b));
                    let chi = |s: &VertexSet| chromatic_number_within(&g, s, 40).unwrap().count;
                    let one = Rational::from_integer(1);
                    match mode {
                        BruteMode::Chi => assert!(denseness(&g, &a) >= one && chi(&b) >= 1),
                        BruteMode::Mindeg => {
                            assert!(denseness(&g, &a) >= one && denseness(&g, &b) >= one)
                        }
                        BruteMode::ChiChi => assert!(chi(&a) >= 1 && chi(&b) >= 1),
                    }
                }
            }
        }
    }

    #[test]
    fn chromatic_table_matches_solver() {
        let g = generate::gnp(9, 0.5, 4);
        let chi = SubsetTables::new(&g).chromatic();
        for s in (0..512usize).step_by(7) {
            let set = VertexSet::from_mask(9, s as u64);
            assert_eq!(
                chi[s] as usize,
                chromatic_number_within(&g, &set, 40).unwrap().count
            );
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = generate::complete(15);
        assert!(matches!(
            brute_force_pair(&g, 1, BruteMode::Chi, &Caps::default()),
            Err(Error::ResourceLimit { .. })
        ));
    }
}
