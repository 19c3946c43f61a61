//! Partition of an edge set into `q`-matchings plus a residue that a set of
//! at most `2q − 2` vertices covers.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::audit::{AuditReport, Witness};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingDecomposition {
    pub q: usize,
    /// X: endpoints of the last (short) maximal matching.
    pub cover: VertexSet,
    /// M_0.
    pub residue: Vec<Edge>,
    /// M_1..M_n, each a matching of exactly `q` edges.
    pub matchings: Vec<Vec<Edge>>,
}

impl MatchingDecomposition {
    pub fn n(&self) -> usize {
        self.matchings.len()
    }

    pub fn matched_edge_count(&self) -> usize {
        self.matchings.iter().map(Vec::len).sum()
    }
}

fn greedy_maximal_matching(universe: usize, edges: &[Edge]) -> Vec<usize> {
    let mut used = VertexSet::empty(universe);
    let mut picked = Vec::new();
    for (i, &(u, v)) in edges.iter().enumerate() {
        if !used.contains(u) && !used.contains(v) {
            used.insert(u);
            used.insert(v);
            picked.push(i);
        }
    }
    picked
}

/// Peels `q`-matchings off `edges` (any order; sorted internally) until the
/// greedy maximal matching of what remains is shorter than `q`.
pub fn decompose_edges(universe: usize, edges: &[Edge], q: usize) -> Result<MatchingDecomposition> {
    if q == 0 {
        return Err(Error::InvalidParameter(
            "matching size q must be positive".into(),
        ));
    }
    let mut remaining: Vec<Edge> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    remaining.sort_unstable();
    let mut matchings = Vec::new();
    loop {
        let picked = greedy_maximal_matching(universe, &remaining);
        if picked.len() < q {
            let mut cover = VertexSet::empty(universe);
            for &i in &picked {
                cover.insert(remaining[i].0);
                cover.insert(remaining[i].1);
            }
            return Ok(MatchingDecomposition {
                q,
                cover,
                residue: remaining,
                matchings,
            });
        }
        let taken: Vec<usize> = picked[..q].to_vec();
        matchings.push(taken.iter().map(|&i| remaining[i]).collect());
        let mut k = 0;
        remaining.retain(|_| {
            let keep = !taken.contains(&k);
            k += 1;
            keep
        });
    }
}

pub fn decompose(h: &Graph, q: usize) -> Result<MatchingDecomposition> {
    decompose_edges(h.vertex_count(), &h.edges(), q)
}

/// Decomposes `E(G[a])`, keeping `g`'s vertex indices.
pub fn decompose_within(g: &Graph, a: &VertexSet, q: usize) -> Result<MatchingDecomposition> {
    decompose_edges(g.vertex_count(), &g.edges_within(a), q)
}

/// Checks `d` against the edge set it claims to partition.
pub fn verify_decomposition_edges(
    universe: usize,
    expected: &[Edge],
    d: &MatchingDecomposition,
) -> AuditReport {
    let mut report = AuditReport::new("matching-decomposition");
    let q = d.q;
    if !report.check("q-positive", q > 0, "", || None) {
        return report;
    }
    let norm = |&(u, v): &Edge| (u.min(v), u.max(v));
    let expected: BTreeSet<Edge> = expected.iter().map(norm).collect();
    let mut seen = BTreeSet::new();
    let mut partition_ok = true;
    for e in d
        .residue
        .iter()
        .chain(d.matchings.iter().flatten())
        .map(norm)
    {
        if !expected.contains(&e) {
            report.fail(
                "partition",
                "edge not in the graph",
                Some(Witness::Edge(e.0, e.1)),
            );
            partition_ok = false;
            break;
        }
        if !seen.insert(e) {
            report.fail(
                "partition",
                "edge listed twice",
                Some(Witness::Edge(e.0, e.1)),
            );
            partition_ok = false;
            break;
        }
    }
    if partition_ok {
        if let Some(missing) = expected.difference(&seen).next() {
            report.fail(
                "partition",
                "edge missing from every part",
                Some(Witness::Edge(missing.0, missing.1)),
            );
        } else {
            report.pass("partition", format!("{} edges", expected.len()));
        }
    }

    for (j, m) in d.matchings.iter().enumerate() {
        if m.len() != q {
            report.fail(
                "matching-size",
                format!("M_{} has {} edges, expected {q}", j + 1, m.len()),
                Some(Witness::Matching(j + 1)),
            );
            return report;
        }
        let mut ends = VertexSet::empty(universe);
        for &(u, v) in m {
            if u >= universe || v >= universe || ends.contains(u) || ends.contains(v) {
                report.fail(
                    "matching-disjointness",
                    format!("M_{} shares an endpoint", j + 1),
                    Some(Witness::Matching(j + 1)),
                );
                return report;
            }
            ends.insert(u);
            ends.insert(v);
        }
    }
    report.pass("matchings", format!("{} matchings of size {q}", d.n()));

    report.check(
        "cover-size",
        d.cover.universe() == universe && d.cover.len() <= 2 * q - 2,
        format!("|X| = {} <= 2q-2 = {}", d.cover.len(), 2 * q - 2),
        || Some(Witness::Set(d.cover.to_vec())),
    );
    match d
        .residue
        .iter()
        .find(|&&(u, v)| !d.cover.contains(u) && !d.cover.contains(v))
    {
        Some(&(u, v)) => report.fail(
            "cover-coverage",
            "residue edge avoids X",
            Some(Witness::Edge(u, v)),
        ),
        None => report.pass("cover-coverage", ""),
    }
    report
}

pub fn verify_decomposition(h: &Graph, d: &MatchingDecomposition) -> AuditReport {
    verify_decomposition_edges(h.vertex_count(), &h.edges(), d)
}
