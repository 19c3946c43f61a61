//! Tournaments: acyclic covers, domination, and exhaustive searches for
//! disjoint sets `A` complete to `B` with large chromatic number on both
//! sides.
//!
//! Text format: a header `t <n>`, then exactly `n` lines, line `i` listing
//! the 1-based out-neighbours of vertex `i` (an empty line is a sink).
//! Lines starting with `c` before the header are comments.

use std::collections::HashSet;
use std::fmt::Write;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::audit::{AuditReport, Witness};
use crate::error::{Error, ParseErrorKind, Result};
use crate::generate;
use crate::graph::{exact_cap, Caps};
use crate::vertex_set::VertexSet;

#[derive(Clone, PartialEq, Eq)]
pub struct Tournament {
    beats: Vec<VertexSet>,
}

impl std::fmt::Debug for Tournament {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let arcs: Vec<Vec<usize>> = self.beats.iter().map(VertexSet::to_vec).collect();
        f.debug_struct("Tournament").field("beats", &arcs).finish()
    }
}

impl Tournament {
    /// Builds a tournament from out-neighbourhoods, checking that every
    /// unordered pair carries exactly one arc.
    pub fn from_beats(beats: Vec<VertexSet>) -> Result<Self> {
        let n = beats.len();
        for (u, out) in beats.iter().enumerate() {
            if out.universe() != n {
                return Err(Error::InvalidParameter(
                    "out-neighbourhood universe mismatch".into(),
                ));
            }
            if out.contains(u) {
                return Err(Error::InvalidParameter(format!("loop at {u}")));
            }
            for (v, theirs) in beats.iter().enumerate().skip(u + 1) {
                if out.contains(v) == theirs.contains(u) {
                    return Err(Error::InvalidParameter(format!(
                        "pair {u},{v} needs exactly one arc"
                    )));
                }
            }
        }
        Ok(Tournament { beats })
    }

    /// `u → v` whenever `beats(u, v)` for `u < v`, otherwise `v → u`.
    pub fn from_fn(n: usize, mut beats: impl FnMut(usize, usize) -> bool) -> Self {
        let mut out = vec![VertexSet::empty(n); n];
        for u in 0..n {
            for v in u + 1..n {
                if beats(u, v) {
                    out[u].insert(v);
                } else {
                    out[v].insert(u);
                }
            }
        }
        Tournament { beats: out }
    }

    /// Lower index beats higher index.
    pub fn transitive(n: usize) -> Self {
        Tournament::from_fn(n, |_, _| true)
    }

    /// 0 → 1 → 2 → 0.
    pub fn cyclic_triangle() -> Self {
        Tournament::from_fn(3, |u, v| !(u == 0 && v == 2))
    }

    pub fn random(n: usize, seed: u64) -> Self {
        let mut rng = generate::rng(seed);
        Tournament::from_fn(n, |_, _| rng.gen_bool(0.5))
    }

    /// `first` on `0..n1`, `second` on `n1..n1+n2`, every cross arc from the
    /// first to the second.
    pub fn dominating_sum(first: &Tournament, second: &Tournament) -> Self {
        let n1 = first.vertex_count();
        let n = n1 + second.vertex_count();
        Tournament::from_fn(n, |u, v| {
            if v < n1 {
                first.beats(u, v)
            } else if u < n1 {
                true
            } else {
                second.beats(u - n1, v - n1)
            }
        })
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.beats.len()
    }

    #[inline]
    pub fn beats(&self, u: usize, v: usize) -> bool {
        self.beats[u].contains(v)
    }

    pub fn out_neighbors(&self, v: usize) -> &VertexSet {
        &self.beats[v]
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    /// Vertices beaten by every member of `a` (all of them when `a` is empty).
    pub fn common_out_neighbors(&self, a: &VertexSet) -> VertexSet {
        let mut out = self.vertices();
        for v in a {
            out.intersect_with(&self.beats[v]);
        }
        out.difference_with(a);
        out
    }

    fn masks(&self) -> Vec<u64> {
        self.beats.iter().map(VertexSet::to_mask).collect()
    }
}

pub fn parse_tournament(text: &str) -> Result<Tournament> {
    let err = |line, kind| Error::Parse { line, kind };
    let mut lines = text.lines().enumerate();
    let n = loop {
        let Some((i, raw)) = lines.next() else {
            return Err(err(0, ParseErrorKind::MissingHeader));
        };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        match line.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["t", n] => {
                break n
                    .parse::<usize>()
                    .map_err(|_| err(i + 1, ParseErrorKind::Malformed(line.to_string())))?
            }
            _ => return Err(err(i + 1, ParseErrorKind::MissingHeader)),
        }
    };
    let mut beats = vec![VertexSet::empty(n); n];
    let mut last_line = 0;
    for (u, row) in beats.iter_mut().enumerate() {
        let Some((i, raw)) = lines.next() else {
            return Err(err(
                last_line,
                ParseErrorKind::NotTournament(format!("expected {n} vertex lines, got {u}")),
            ));
        };
        last_line = i + 1;
        for token in raw.split_whitespace() {
            let index: usize = token.parse().map_err(|_| {
                err(
                    i + 1,
                    ParseErrorKind::Malformed(format!("bad index {token:?}")),
                )
            })?;
            if index == 0 || index > n {
                return Err(err(i + 1, ParseErrorKind::OutOfRange { index, n }));
            }
            let v = index - 1;
            if v == u {
                return Err(err(i + 1, ParseErrorKind::SelfLoop(index)));
            }
            if row.contains(v) {
                return Err(err(i + 1, ParseErrorKind::DuplicateEdge(u + 1, index)));
            }
            row.insert(v);
        }
    }
    if let Some((i, raw)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(err(
            i + 1,
            ParseErrorKind::Malformed(raw.trim().to_string()),
        ));
    }
    for u in 0..n {
        for v in u + 1..n {
            if beats[u].contains(v) == beats[v].contains(u) {
                return Err(err(
                    0,
                    ParseErrorKind::NotTournament(format!("pair {} {}", u + 1, v + 1)),
                ));
            }
        }
    }
    Ok(Tournament { beats })
}

pub fn serialize_tournament(t: &Tournament) -> String {
    serialize_tournament_with_comments(t, &[])
}

pub fn serialize_tournament_with_comments(t: &Tournament, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        writeln!(out, "c {c}").unwrap();
    }
    writeln!(out, "t {}", t.vertex_count()).unwrap();
    for out_set in &t.beats {
        let line: Vec<String> = out_set.iter().map(|v| (v + 1).to_string()).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

/// True iff `T[s]` is transitive, i.e. its out-degrees are pairwise distinct.
pub fn is_acyclic(t: &Tournament, s: &VertexSet) -> bool {
    let mut seen = VertexSet::empty(s.len().max(1));
    for v in s {
        let d = t.beats[v].intersection_len(s);
        if seen.contains(d) {
            return false;
        }
        seen.insert(d);
    }
    true
}

fn acyclic_mask(beats: &[u64], s: u64) -> bool {
    let mut seen = 0u64;
    let mut rest = s;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let bit = 1u64 << (beats[v] & s).count_ones();
        if seen & bit != 0 {
            return false;
        }
        seen |= bit;
    }
    true
}

/// An acyclic cover realising the chromatic number, as disjoint parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcyclicCover {
    pub count: usize,
    pub parts: Vec<VertexSet>,
}

/// Acyclic flags for every subset of the first `n ≤ 16` vertices.
fn acyclic_table(beats: &[u64], n: usize) -> Vec<bool> {
    (0..1u64 << n).map(|s| acyclic_mask(beats, s)).collect()
}

struct CoverSearch {
    by_vertex: Vec<Vec<u64>>,
    largest: u32,
    failed: HashSet<(u64, usize)>,
}

impl CoverSearch {
    fn cover(&mut self, uncovered: u64, k: usize, chosen: &mut Vec<u64>) -> bool {
        if uncovered == 0 {
            return true;
        }
        if k == 0 || uncovered.count_ones() > self.largest * k as u32 {
            return false;
        }
        if self.failed.contains(&(uncovered, k)) {
            return false;
        }
        let v = uncovered.trailing_zeros() as usize;
        let options = self.by_vertex[v].clone();
        let mut tried = HashSet::new();
        for m in options {
            if !tried.insert(m & uncovered) {
                continue;
            }
            chosen.push(m);
            if self.cover(uncovered & !m, k - 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        self.failed.insert((uncovered, k));
        false
    }
}

/// Exact tournament chromatic number of `T[within]`: iterative deepening
/// over covers by maximal acyclic sets.
pub fn tournament_chromatic_within(
    t: &Tournament,
    within: &VertexSet,
    cap: usize,
) -> Result<AcyclicCover> {
    exact_cap("tournament chromatic number", within.len(), cap.min(20))?;
    let map = within.to_vec();
    let m = map.len();
    if m == 0 {
        return Ok(AcyclicCover {
            count: 0,
            parts: Vec::new(),
        });
    }
    let beats: Vec<u64> = map
        .iter()
        .map(|&u| {
            (0..m)
                .filter(|&j| t.beats(u, map[j]))
                .fold(0u64, |acc, j| acc | 1 << j)
        })
        .collect();
    let table = acyclic_table(&beats, m);
    let mut maximal = Vec::new();
    for s in 0..1u64 << m {
        if table[s as usize] && (0..m).all(|v| s >> v & 1 == 1 || !table[(s | 1 << v) as usize]) {
            maximal.push(s);
        }
    }
    let largest = maximal.iter().map(|s| s.count_ones()).max().unwrap_or(1);
    let mut by_vertex = vec![Vec::new(); m];
    for &s in &maximal {
        for (v, list) in by_vertex.iter_mut().enumerate() {
            if s >> v & 1 == 1 {
                list.push(s);
            }
        }
    }
    for list in &mut by_vertex {
        list.sort_by_key(|s| std::cmp::Reverse(s.count_ones()));
    }
    let mut search = CoverSearch {
        by_vertex,
        largest,
        failed: HashSet::new(),
    };
    let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    for k in 1..=m {
        let mut chosen = Vec::new();
        if search.cover(full, k, &mut chosen) {
            let n = t.vertex_count();
            let mut covered = 0u64;
            let parts = chosen
                .iter()
                .map(|&s| {
                    let own = s & !covered;
                    covered |= s;
                    VertexSet::from_indices(
                        n,
                        (0..m).filter(|&j| own >> j & 1 == 1).map(|j| map[j]),
                    )
                })
                .collect();
            return Ok(AcyclicCover { count: k, parts });
        }
    }
    unreachable!("singletons always cover")
}

pub fn tournament_chromatic(t: &Tournament, caps: &Caps) -> Result<usize> {
    Ok(tournament_chromatic_within(t, &t.vertices(), caps.tournament_chromatic)?.count)
}

/// Greedy acyclic partition: each part grows by scanning vertices in index
/// order. Works at any size; an upper bound on the chromatic number.
pub fn greedy_acyclic_cover(t: &Tournament) -> AcyclicCover {
    let n = t.vertex_count();
    let mut rest = t.vertices();
    let mut parts = Vec::new();
    while !rest.is_empty() {
        let mut part = VertexSet::empty(n);
        for v in rest.to_vec() {
            part.insert(v);
            if !is_acyclic(t, &part) {
                part.remove(v);
            }
        }
        rest.difference_with(&part);
        parts.push(part);
    }
    AcyclicCover {
        count: parts.len(),
        parts,
    }
}

/// A smallest `X` such that every vertex outside `X` is beaten by a member of
/// `X`, least in lexicographic order among the smallest.
pub fn dominating_set(t: &Tournament, caps: &Caps) -> Result<VertexSet> {
    let n = t.vertex_count();
    exact_cap("domination number", n, caps.tournament_domination)?;
    let beats = t.masks();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    for k in 0..=n {
        for x in crate::vertex_set::Combinations::new(n, k) {
            let set = x.iter().fold(0u64, |m, &v| m | 1 << v);
            let reach = x.iter().fold(set, |m, &v| m | beats[v]);
            if reach == full {
                return Ok(VertexSet::from_mask(n, set));
            }
        }
    }
    unreachable!("the whole vertex set dominates")
}

pub fn domination_number(t: &Tournament, caps: &Caps) -> Result<usize> {
    Ok(dominating_set(t, caps)?.len())
}

/// True iff every vertex of `a` beats every vertex of `b`.
pub fn is_complete_to(t: &Tournament, a: &VertexSet, b: &VertexSet) -> Result<bool> {
    if let Some(v) = a.intersection(b).first() {
        return Err(Error::Overlap(v));
    }
    Ok(a.iter().all(|u| b.is_subset(&t.beats[u])))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TournamentPairCertificate {
    pub schema_version: u32,
    /// Always `a-complete-to-b`.
    pub direction: String,
    pub c: usize,
    pub a: VertexSet,
    pub b: VertexSet,
    pub chi_a: usize,
    pub chi_b: usize,
}

const DIRECTION: &str = "a-complete-to-b";

impl TournamentPairCertificate {
    fn new(c: usize, a: VertexSet, b: VertexSet, chi_a: usize, chi_b: usize) -> Self {
        TournamentPairCertificate {
            schema_version: crate::SCHEMA_VERSION,
            direction: DIRECTION.into(),
            c,
            a,
            b,
            chi_a,
            chi_b,
        }
    }
}

/// Tournament chromatic number of every subset of `0..n`, `n ≤ 14`.
fn subset_chromatic_table(beats: &[u64], n: usize) -> Vec<u8> {
    let acyclic = acyclic_table(beats, n);
    let size = 1usize << n;
    let mut chi = vec![0u8; size];
    for s in 1..size {
        if acyclic[s] {
            chi[s] = 1;
            continue;
        }
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        let mut best = u8::MAX;
        // T = low ∪ sub, sub ⊆ rest
        let mut sub = rest;
        loop {
            let part = sub | low;
            if acyclic[part] {
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

/// Exhaustive search over every `A`, pairing it with the maximal `B`
/// (common out-neighbourhood). Returns the lexicographically least `A`.
pub fn search_complete_pair(
    t: &Tournament,
    c: usize,
    caps: &Caps,
) -> Result<Option<TournamentPairCertificate>> {
    let n = t.vertex_count();
    exact_cap("tournament pair search", n, caps.tournament_pair.min(20))?;
    let beats = t.masks();
    let chi = subset_chromatic_table(&beats, n);
    let full = (1u64 << n) - 1;
    let mut best: Option<(Vec<usize>, u64, u64)> = None;
    for a in 1..1u64 << n {
        if (chi[a as usize] as usize) < c {
            continue;
        }
        let mut b = full & !a;
        let mut rest = a;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            b &= beats[v];
        }
        if b == 0 || (chi[b as usize] as usize) < c {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&v| a >> v & 1 == 1).collect();
        if best.as_ref().is_none_or(|(m, _, _)| members < *m) {
            best = Some((members, a, b));
        }
    }
    Ok(best.map(|(_, a, b)| {
        TournamentPairCertificate::new(
            c,
            VertexSet::from_mask(n, a),
            VertexSet::from_mask(n, b),
            chi[a as usize] as usize,
            chi[b as usize] as usize,
        )
    }))
}

fn is_cyclic_triangle(t: &Tournament, x: usize, y: usize, z: usize) -> bool {
    let s = VertexSet::from_indices(t.vertex_count(), [x, y, z]);
    !is_acyclic(t, &s)
}

/// Scans cyclic triangles in lexicographic order; the first whose common
/// out-neighbourhood has chromatic number at least `c` wins.
pub fn search_cyclic_triangle_pair(
    t: &Tournament,
    c: usize,
    caps: &Caps,
) -> Result<Option<TournamentPairCertificate>> {
    let n = t.vertex_count();
    exact_cap("tournament pair search", n, caps.tournament_chromatic)?;
    for tri in crate::vertex_set::Combinations::new(n, 3) {
        if !is_cyclic_triangle(t, tri[0], tri[1], tri[2]) {
            continue;
        }
        let a = VertexSet::from_indices(n, tri);
        let b = t.common_out_neighbors(&a);
        if b.is_empty() {
            continue;
        }
        let chi_b = tournament_chromatic_within(t, &b, caps.tournament_chromatic)?.count;
        if chi_b >= c {
            return Ok(Some(TournamentPairCertificate::new(c, a, b, 2, chi_b)));
        }
    }
    Ok(None)
}

/// Re-derives disjointness, the complete-to relation and both chromatic
/// numbers with the exact oracle.
pub fn verify_tournament_pair(
    t: &Tournament,
    cert: &TournamentPairCertificate,
    caps: &Caps,
) -> AuditReport {
    let mut report = AuditReport::new("tournament-pair");
    let n = t.vertex_count();
    if !report.check(
        "universe",
        cert.a.universe() == n && cert.b.universe() == n,
        format!("sets must range over {n} vertices"),
        || None,
    ) {
        return report;
    }
    report.check(
        "direction",
        cert.direction == DIRECTION,
        cert.direction.clone(),
        || None,
    );
    report.check(
        "nonempty",
        !cert.a.is_empty() && !cert.b.is_empty(),
        "",
        || None,
    );
    let overlap = cert.a.intersection(&cert.b);
    if !report.check("disjoint", overlap.is_empty(), "", || {
        Some(Witness::Set(overlap.to_vec()))
    }) {
        return report;
    }
    let reversed = cert
        .a
        .iter()
        .find_map(|u| cert.b.iter().find(|&v| !t.beats(u, v)).map(|v| (u, v)));
    report.check(
        "complete-to",
        reversed.is_none(),
        "every arc runs from a to b",
        || reversed.map(|(u, v)| Witness::Edge(u, v)),
    );
    for (name, set, claimed) in [
        ("chi-a", &cert.a, cert.chi_a),
        ("chi-b", &cert.b, cert.chi_b),
    ] {
        match tournament_chromatic_within(t, set, caps.tournament_chromatic) {
            Ok(cover) => {
                report.check(
                    name,
                    cover.count == claimed && cover.count >= cert.c,
                    format!(
                        "recomputed {}, claimed {claimed}, target {}",
                        cover.count, cert.c
                    ),
                    || Some(Witness::Set(set.to_vec())),
                );
            }
            Err(e) => report.fail(name, e.to_string(), None),
        }
    }
    report
}
