//! `p`-rocks: nonempty vertex sets spanning at least `p` edges per vertex,
//! of minimum size, and among those of maximum edge count.
//!
//! Every vertex of a rock has at least `p + 1` neighbours inside it (drop it
//! and the rest would meet the threshold at a smaller size), so the search
//! is confined to the `(p+1)`-core. A rock also has at least `2p + 1`
//! vertices, which fixes where the size scan starts.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::audit::{AuditReport, Witness};
use crate::densest::dense_subset_at_least;
use crate::error::{Error, Result};
use crate::graph::{core_peeling_within, Caps, Graph};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RockMode {
    /// Size-minimum and edge-maximum, ties broken lexicographically.
    Exact,
    /// Inclusion-minimal only; the external-degree bound is not guaranteed.
    HeuristicMinimal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RockCertificate {
    pub set: VertexSet,
    pub p: u64,
    pub internal_edges: usize,
    pub mode: RockMode,
    pub max_external_degree: usize,
}

impl RockCertificate {
    fn build(g: &Graph, set: VertexSet, p: u64, mode: RockMode) -> Self {
        RockCertificate {
            internal_edges: g.edge_count_within(&set),
            max_external_degree: external_degree(g, &set).map_or(0, |(_, d)| d),
            set,
            p,
            mode,
        }
    }

    pub fn size(&self) -> usize {
        self.set.len()
    }

    /// `key: value` text form.
    pub fn to_record(&self) -> String {
        let mut out = String::new();
        let members: Vec<String> = self.set.iter().map(|v| v.to_string()).collect();
        let mode = match self.mode {
            RockMode::Exact => "exact",
            RockMode::HeuristicMinimal => "heuristic-minimal",
        };
        let _ = writeln!(out, "p: {}", self.p);
        let _ = writeln!(out, "mode: {mode}");
        let _ = writeln!(out, "universe: {}", self.set.universe());
        let _ = writeln!(out, "size: {}", self.set.len());
        let _ = writeln!(out, "members: {}", members.join(" "));
        let _ = writeln!(out, "internal_edges: {}", self.internal_edges);
        let _ = writeln!(out, "max_external_degree: {}", self.max_external_degree);
        out
    }

    pub fn from_record(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidParameter(format!("rock record: {msg}"));
        let mut fields = std::collections::HashMap::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (key, value) = line.split_once(':').ok_or_else(|| bad(line))?;
            fields.insert(key.trim(), value.trim());
        }
        let get = |key: &str| fields.get(key).copied().ok_or_else(|| bad(key));
        let num = |key: &str| -> Result<usize> { get(key)?.parse().map_err(|_| bad(key)) };
        let universe = num("universe")?;
        let members = get("members")?
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| bad("members")))
            .collect::<Result<Vec<_>>>()?;
        if members.iter().any(|&v| v >= universe) {
            return Err(bad("member outside universe"));
        }
        let mode = match get("mode")? {
            "exact" => RockMode::Exact,
            "heuristic-minimal" => RockMode::HeuristicMinimal,
            _ => return Err(bad("mode")),
        };
        Ok(RockCertificate {
            set: VertexSet::from_indices(universe, members),
            p: num("p")? as u64,
            internal_edges: num("internal_edges")?,
            mode,
            max_external_degree: num("max_external_degree")?,
        })
    }
}

/// The outside vertex with most neighbours in `a`, and that count.
pub fn external_degree(g: &Graph, a: &VertexSet) -> Option<(usize, usize)> {
    a.complement()
        .iter()
        .map(|v| (v, g.degree_within(v, a)))
        .max_by_key(|&(v, d)| (d, std::cmp::Reverse(v)))
}

// ---------------------------------------------------------------------------
// Fixed-size maximum-edge search

/// Branch and bound over `size`-subsets of the local vertex set (ascending
/// index order, include-first), keeping the first subset with strictly more
/// edges than the current best. The survivor is therefore the
/// lexicographically least maximizer.
struct SizeSearch<'a> {
    adj: &'a [u64],
    size: usize,
    best_edges: usize,
    best: Option<u64>,
    scratch: Vec<(usize, usize)>,
}

impl SizeSearch<'_> {
    fn bound(&mut self, next: usize, chosen: u64, need: usize) -> usize {
        let n = self.adj.len();
        let remaining = if next >= 64 { 0 } else { !0u64 << next } & full(n);
        self.scratch.clear();
        let mut rest = remaining;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let to_chosen = (self.adj[v] & chosen).count_ones() as usize;
            let inner = ((self.adj[v] & remaining).count_ones() as usize).min(need - 1);
            self.scratch.push((to_chosen, inner));
        }
        let mut to_chosen: Vec<usize> = self.scratch.iter().map(|x| x.0).collect();
        let mut inner: Vec<usize> = self.scratch.iter().map(|x| x.1).collect();
        to_chosen.sort_unstable_by(|a, b| b.cmp(a));
        inner.sort_unstable_by(|a, b| b.cmp(a));
        let cross: usize = to_chosen.iter().take(need).sum();
        let among: usize = inner.iter().take(need).sum::<usize>() / 2;
        cross + among.min(need * (need - 1) / 2)
    }

    fn dfs(&mut self, next: usize, chosen: u64, count: usize, edges: usize) {
        if count == self.size {
            if edges > self.best_edges {
                self.best_edges = edges;
                self.best = Some(chosen);
            }
            return;
        }
        let n = self.adj.len();
        let need = self.size - count;
        if n - next < need {
            return;
        }
        if edges + self.bound(next, chosen, need) <= self.best_edges {
            return;
        }
        let gained = (self.adj[next] & chosen).count_ones() as usize;
        self.dfs(next + 1, chosen | 1 << next, count + 1, edges + gained);
        self.dfs(next + 1, chosen, count, edges);
    }
}

fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Lexicographically least `size`-subset with the most edges, provided that
/// count exceeds `floor`.
fn best_of_size(adj: &[u64], size: usize, floor: usize) -> Option<(u64, usize)> {
    let mut search = SizeSearch {
        adj,
        size,
        best_edges: floor,
        best: None,
        scratch: Vec::new(),
    };
    search.dfs(0, 0, 0, 0);
    search.best.map(|m| (m, search.best_edges))
}

fn lift(g: &Graph, map: &[usize], mask: u64) -> VertexSet {
    VertexSet::from_indices(
        g.vertex_count(),
        (0..map.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| map[i]),
    )
}

fn rock_candidates(g: &Graph, p: u64) -> VertexSet {
    core_peeling_within(g, &g.vertices(), p as usize + 1).core
}

// ---------------------------------------------------------------------------

/// An exact `p`-rock, or `None` when no nonempty set has denseness `≥ p`.
pub fn find_rock_exact(g: &Graph, p: u64, caps: &Caps) -> Result<Option<RockCertificate>> {
    if p == 0 {
        return Err(Error::InvalidParameter(
            "rock parameter p must be positive".into(),
        ));
    }
    let core = rock_candidates(g, p);
    if core.is_empty() || dense_subset_at_least(g, &core, p).is_none() {
        return Ok(None);
    }
    crate::graph::exact_cap("rock search ((p+1)-core)", core.len(), caps.rock)?;
    let (map, adj) = g.local_masks(&core).expect("capped at 64");
    let p_us = p as usize;
    for size in 2 * p_us + 1..=map.len() {
        if let Some((mask, _)) = best_of_size(&adj, size, p_us * size - 1) {
            let set = lift(g, &map, mask);
            return Ok(Some(RockCertificate::build(g, set, p, RockMode::Exact)));
        }
    }
    unreachable!("a set of denseness at least p exists inside the core")
}

/// An inclusion-minimal set with at least `p` edges per vertex, found by
/// shrinking the maximal dense set. `None` iff no such set exists.
pub fn find_rock_heuristic(g: &Graph, p: u64) -> Result<Option<RockCertificate>> {
    if p == 0 {
        return Err(Error::InvalidParameter(
            "rock parameter p must be positive".into(),
        ));
    }
    let core = rock_candidates(g, p);
    let Some(mut current) = dense_subset_at_least(g, &core, p) else {
        return Ok(None);
    };
    'shrink: loop {
        let mut order = current.to_vec();
        order.sort_by_key(|&v| (g.degree_within(v, &current), v));
        for u in order {
            let mut without = current.clone();
            without.remove(u);
            let without = core_peeling_within(g, &without, p as usize + 1).core;
            if let Some(smaller) = dense_subset_at_least(g, &without, p) {
                current = smaller;
                continue 'shrink;
            }
        }
        break;
    }
    Ok(Some(RockCertificate::build(
        g,
        current,
        p,
        RockMode::HeuristicMinimal,
    )))
}

/// Recomputes the certificate's numbers; for exact certificates also the
/// external-degree bound `2p + 1` and minimality by exhaustive search.
pub fn verify_rock(g: &Graph, cert: &RockCertificate, caps: &Caps) -> AuditReport {
    let mut report = AuditReport::new("rock");
    let n = g.vertex_count();
    if !report.check(
        "universe",
        cert.set.universe() == n,
        format!("certificate universe {} vs graph {n}", cert.set.universe()),
        || None,
    ) {
        return report;
    }
    let a = &cert.set;
    let size = a.len();
    let p = cert.p as usize;
    report.check("nonempty", size > 0 && p > 0, "", || None);
    let edges = g.edge_count_within(a);
    report.check(
        "internal-edges",
        edges == cert.internal_edges,
        format!(
            "recomputed {edges}, certificate says {}",
            cert.internal_edges
        ),
        || Some(Witness::Set(a.to_vec())),
    );
    report.check(
        "threshold",
        edges >= p * size,
        format!("{edges} >= {p}*{size}"),
        || Some(Witness::Set(a.to_vec())),
    );
    let (worst, ext) = external_degree(g, a).unwrap_or((0, 0));
    report.check(
        "max-external-degree",
        ext == cert.max_external_degree,
        format!(
            "recomputed {ext}, certificate says {}",
            cert.max_external_degree
        ),
        || Some(Witness::Vertex(worst)),
    );
    if cert.mode != RockMode::Exact || !report.passed {
        return report;
    }

    report.check(
        "external-degree-bound",
        ext <= 2 * p + 1,
        format!("{ext} <= 2p+1 = {}", 2 * p + 1),
        || Some(Witness::Vertex(worst)),
    );
    report.check(
        "size-lower-bound",
        size > 2 * p,
        format!("{size} >= 2p+1"),
        || Some(Witness::Set(a.to_vec())),
    );
    for u in a {
        let mut rest = a.clone();
        rest.remove(u);
        let e = g.edge_count_within(&rest);
        if e >= p * (size - 1) {
            report.fail(
                "vertex-deletion-minimality",
                format!("dropping {u} leaves {e} >= {p}*{}", size - 1),
                Some(Witness::Vertex(u)),
            );
            return report;
        }
    }
    report.pass("vertex-deletion-minimality", "");

    let pool = rock_candidates(g, cert.p);
    if crate::graph::exact_cap("rock verification", pool.len(), caps.rock).is_err() {
        report.fail(
            "minimality",
            format!("(p+1)-core has {} vertices, beyond cap", pool.len()),
            None,
        );
        return report;
    }
    let (map, adj) = g.local_masks(&pool).expect("capped at 64");
    for smaller in 1..size {
        if let Some((mask, e)) = best_of_size(&adj, smaller, p * smaller - 1) {
            let witness = lift(g, &map, mask);
            report.fail(
                "minimality",
                format!("a {smaller}-set spans {e} >= {p}*{smaller} edges"),
                Some(Witness::Set(witness.to_vec())),
            );
            return report;
        }
    }
    report.pass("minimality", "no smaller set meets the threshold");
    if let Some((mask, e)) = best_of_size(&adj, size, edges) {
        report.fail(
            "edge-maximality",
            format!("another {size}-set spans {e} > {edges} edges"),
            Some(Witness::Set(lift(g, &map, mask).to_vec())),
        );
    } else {
        report.pass("edge-maximality", "");
    }
    report
}

/// Why the peeling stopped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "reason")]
pub enum PeelStop {
    /// The residual graph has no rock at all.
    NoRock,
    /// Its rocks all have this many vertices, more than the size cap.
    RockTooLarge { size: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelSequence {
    pub p: u64,
    pub size_cap: usize,
    pub rocks: Vec<RockCertificate>,
    pub removed: VertexSet,
    pub stop: PeelStop,
}

impl PeelSequence {
    pub fn k(&self) -> usize {
        self.rocks.len()
    }
}

/// Extracts rocks of size at most `s` one after another, each from the graph
/// left after deleting the earlier ones. The residual keeps the original
/// vertex indices; deleted vertices become isolated.
pub fn peel_rocks(g: &Graph, p: u64, s: usize, caps: &Caps) -> Result<(PeelSequence, Graph)> {
    let mut residual = g.clone();
    let mut rocks = Vec::new();
    let mut removed = g.empty_set();
    let stop = loop {
        match find_rock_exact(&residual, p, caps)? {
            None => break PeelStop::NoRock,
            Some(rock) if rock.size() > s => break PeelStop::RockTooLarge { size: rock.size() },
            Some(rock) => {
                removed.union_with(&rock.set);
                residual = residual.without_vertices(&rock.set);
                rocks.push(rock);
            }
        }
    };
    Ok((
        PeelSequence {
            p,
            size_cap: s,
            rocks,
            removed,
            stop,
        },
        residual,
    ))
}
