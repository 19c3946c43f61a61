//! The two anticomplete-pair procedures run as searches: rock, matching
//! decomposition, good partition, then a scan of the index sets `I` for a
//! set `W_I` that is chromatic (`chi` mode) or dense (`mindeg` mode).
//!
//! Parameters `p`, `q`, `s` are small surrogates chosen by the caller. When
//! `p` is too small for the proof set `X ∪ A_I` (or `A_I`, or a peeled rock)
//! to reach denseness `c` on its own, the A side is replaced by the largest
//! set of denseness at least `c` that is anticomplete to the chosen B side;
//! the certificate records which source was used.
//!
//! A failed search is not silent: it yields a [`BoundTrace`] whose contents
//! (a proper coloring, or an edge audit) can be rechecked against the graph.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::audit::{AuditReport, Witness};
use crate::densest::dense_subset_at_least;
use crate::error::{Error, Result};
use crate::graph::{
    are_anticomplete, chromatic_number_within, denseness, greedy_coloring_within,
    is_k_colorable_within, is_proper_coloring, Caps, Coloring, Graph, Rational,
};
use crate::matching::decompose_within;
use crate::partition::{
    find_good_partition, CheckMode, PartitionFamily, PartitionSearch, PartitionVariant,
};
use crate::rock::{find_rock_exact, find_rock_heuristic, peel_rocks, RockCertificate, RockMode};
use crate::vertex_set::{binomial, Combinations, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairMode {
    /// A dense, B of chromatic number at least `c`.
    Chi,
    /// A and B both dense.
    Mindeg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SideSource {
    /// The set the construction produces.
    Proof,
    /// Largest set of denseness at least `c` anticomplete to the other side.
    Saturated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideWitness {
    pub size: usize,
    pub edges: usize,
    pub denseness: Rational,
    /// Exact chromatic number, for the B side in `chi` mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chromatic: Option<usize>,
    pub source: SideSource,
}

/// Where in the construction the pair came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "route")]
pub enum PairRoute {
    /// `B ⊆ W_I` for this index set (0-based part indices).
    IndexSet {
        index_set: Vec<usize>,
        /// Denseness of `X ∪ A_I` (chi) or `A_I` (mindeg).
        proof_a_denseness: Rational,
        partition_seed: u64,
        partition_found: bool,
    },
    /// `B ⊆ Z_i`, the vertices anticomplete to the peeled rock `R_i` (1-based).
    PeeledRock { rock: usize, rock_set: VertexSet },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCertificate {
    pub schema_version: u32,
    pub mode: PairMode,
    pub c: u64,
    pub a: VertexSet,
    pub b: VertexSet,
    pub a_witness: SideWitness,
    pub b_witness: SideWitness,
    pub route: PairRoute,
}

/// Surrogate parameters and search controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub p: u64,
    pub q: usize,
    /// Peeled-rock size cap (mindeg only).
    pub s: usize,
    pub c: u64,
    pub seed: u64,
    pub max_tries: u64,
    pub check: CheckMode,
}

impl PipelineConfig {
    pub fn new(p: u64, q: usize, c: u64) -> Self {
        PipelineConfig {
            p,
            q,
            s: 0,
            c,
            seed: 0,
            max_tries: 200,
            check: CheckMode::Exhaustive,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.p == 0 || self.q == 0 || self.c == 0 {
            return Err(Error::InvalidParameter(
                "p, q and c must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// One class of the chi-mode coloring, colored with its own palette.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorClass {
    /// `A`, `W_0`, `W_I` or `unassigned`.
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index_set: Option<Vec<usize>>,
    pub vertices: VertexSet,
    pub colors: usize,
    /// First color of this class's palette in the global coloring.
    pub offset: usize,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiTrace {
    pub schema_version: u32,
    pub c: u64,
    pub p: u64,
    pub q: usize,
    pub failed_step: String,
    pub rock: VertexSet,
    pub rock_mode: RockMode,
    pub cover: VertexSet,
    pub partition_seed: u64,
    pub partition_found: bool,
    pub index_sets: u64,
    pub classes: Vec<ColorClass>,
    pub coloring: Coloring,
    pub color_count: usize,
    /// `2p+1 + χ(W_0) + |𝓘|·(c−1)`: the count the construction promises when
    /// every `W_I` has chromatic number below `c`.
    pub construction_bound: u64,
    pub notes: Vec<String>,
}

/// Edge bookkeeping of `G \ R` behind the mindeg contradiction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeAudit {
    pub vertex_count: usize,
    pub residual_edges: usize,
    pub inside_a: usize,
    pub a_to_rest: usize,
    /// Edges of `G \ R` with neither end in `A`.
    pub outside_a: usize,
    /// Those with both ends in a common `W_I`.
    pub covered_by_w: usize,
    pub uncovered: usize,
    /// `Σ_I |E(W_I)|`, an upper bound on `covered_by_w`.
    pub w_edges_total: u64,
    pub max_w_denseness: Rational,
    /// `|𝓘|·c·|G| + (2p+1)|G| + (p+1)|G|`.
    pub construction_bound: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MindegTrace {
    pub schema_version: u32,
    pub c: u64,
    pub p: u64,
    pub q: usize,
    pub s: usize,
    pub failed_step: String,
    pub peeled: Vec<VertexSet>,
    pub removed: VertexSet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rock: Option<VertexSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover: Option<VertexSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition_seed: Option<u64>,
    pub partition_found: bool,
    pub index_sets: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub audit: Option<EdgeAudit>,
    pub residual_edges: usize,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum BoundTrace {
    Chi(ChiTrace),
    Mindeg(MindegTrace),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "outcome")]
pub enum PairOutcome {
    Found(PairCertificate),
    Bound(BoundTrace),
}

impl PairOutcome {
    pub fn certificate(&self) -> Option<&PairCertificate> {
        match self {
            PairOutcome::Found(cert) => Some(cert),
            PairOutcome::Bound(_) => None,
        }
    }
}

/// Exact rock when the `(p+1)`-core fits the cap, otherwise an
/// inclusion-minimal one.
pub fn pipeline_rock(g: &Graph, p: u64, caps: &Caps) -> Result<Option<RockCertificate>> {
    match find_rock_exact(g, p, caps) {
        Err(Error::ResourceLimit { .. }) => find_rock_heuristic(g, p),
        other => other,
    }
}

fn at_least(value: Rational, c: u64) -> bool {
    value >= Rational::from_integer(c)
}

fn side(g: &Graph, set: &VertexSet, source: SideSource, chromatic: Option<usize>) -> SideWitness {
    SideWitness {
        size: set.len(),
        edges: g.edge_count_within(set),
        denseness: denseness(g, set),
        chromatic,
        source,
    }
}

/// The A side for a fixed B: the proof set when it is dense enough, else
/// the largest dense set anticomplete to `b`.
fn settle_a(
    g: &Graph,
    proof_a: &VertexSet,
    b: &VertexSet,
    c: u64,
) -> Option<(VertexSet, SideSource)> {
    if !proof_a.is_empty() && at_least(denseness(g, proof_a), c) {
        return Some((proof_a.clone(), SideSource::Proof));
    }
    dense_subset_at_least(g, &g.anticomplete_region(b), c).map(|a| (a, SideSource::Saturated))
}

fn family_size(k: usize, half: usize, caps: &Caps) -> Result<u64> {
    let size = binomial(k as u64, half as u64);
    if size > caps.partition_family as u128 {
        return Err(Error::FamilyTooLarge {
            k,
            half,
            cap: caps.partition_family as u128,
        });
    }
    Ok(size as u64)
}

fn part_labels(g: &Graph, family: &PartitionFamily) -> Vec<Option<usize>> {
    let mut label = vec![None; g.vertex_count()];
    for (i, part) in family.parts.iter().enumerate() {
        for v in part {
            label[v] = Some(i);
        }
    }
    label
}

/// Parts holding a neighbour of `v`.
fn hit_parts(g: &Graph, v: usize, label: &[Option<usize>], k: usize) -> Vec<bool> {
    let mut hit = vec![false; k];
    for w in g.neighbors(v) {
        if let Some(i) = label[w] {
            hit[i] = true;
        }
    }
    hit
}

/// Least index set of size `half` avoiding `hit`, if any.
fn least_free_index_set(hit: &[bool], half: usize) -> Option<Vec<usize>> {
    let free: Vec<usize> = (0..hit.len()).filter(|&i| !hit[i]).collect();
    (free.len() >= half).then(|| free[..half].to_vec())
}

/// χ(G[w]) ≥ c, using the cheap bounds before the exact search.
fn chromatic_at_least(g: &Graph, w: &VertexSet, c: u64, caps: &Caps) -> Result<bool> {
    let c = c as usize;
    if w.len() < c {
        return Ok(false);
    }
    if greedy_coloring_within(g, w).count < c {
        return Ok(false);
    }
    Ok(is_k_colorable_within(g, w, c - 1, caps.chromatic)?.is_none())
}

fn color_class(g: &Graph, set: &VertexSet, caps: &Caps) -> (Coloring, bool) {
    if set.len() <= caps.chromatic.min(64) {
        if let Ok(col) = chromatic_number_within(g, set, caps.chromatic) {
            return (col, true);
        }
    }
    (greedy_coloring_within(g, set), false)
}

// ---------------------------------------------------------------------------
// chi mode

pub fn find_pair_chi(g: &Graph, config: &PipelineConfig, caps: &Caps) -> Result<PairOutcome> {
    config.validate()?;
    let (p, c) = (config.p, config.c);
    let rock = pipeline_rock(g, p, caps)?.ok_or(Error::NoRock { p })?;
    let a = &rock.set;
    let decomposition = decompose_within(g, a, config.q)?;
    let x = &decomposition.cover;
    let f = g.edge_count_within(a);
    let variant = PartitionVariant::Chi;
    let (k, half) = (variant.parts(p), variant.half(p));
    let index_sets = family_size(k, half, caps)?;
    let search = PartitionSearch {
        variant,
        p,
        threshold: f.div_ceil(32),
        seed: config.seed,
        max_tries: config.max_tries,
        check: config.check,
    };
    let outcome = find_good_partition(g, a, x, &search, caps)?;
    let family = outcome.family();
    let trial = outcome.trial();

    let outside = a.complement();
    let near_x = g.neighborhood(x).intersection(&outside);
    let mut tested: HashMap<VertexSet, bool> = HashMap::new();
    for index_set in Combinations::new(k, half) {
        let a_i = family.union_of(&index_set);
        let proof_a = a_i.union(x);
        let w = g.anticomplete_region(&proof_a).intersection(&outside);
        if w.is_empty() {
            continue;
        }
        let chromatic = match tested.get(&w) {
            Some(&known) => known,
            None => {
                let known = chromatic_at_least(g, &w, c, caps)?;
                tested.insert(w.clone(), known);
                known
            }
        };
        if !chromatic {
            continue;
        }
        let Some((a_side, source)) = settle_a(g, &proof_a, &w, c) else {
            continue;
        };
        let chi_b = chromatic_number_within(g, &w, caps.chromatic)?.count;
        return Ok(PairOutcome::Found(PairCertificate {
            schema_version: crate::SCHEMA_VERSION,
            mode: PairMode::Chi,
            c,
            a_witness: side(g, &a_side, source, None),
            b_witness: side(g, &w, SideSource::Proof, Some(chi_b)),
            a: a_side,
            b: w,
            route: PairRoute::IndexSet {
                index_set,
                proof_a_denseness: denseness(g, &proof_a),
                partition_seed: trial.seed,
                partition_found: outcome.found(),
            },
        }));
    }

    // Every branch failed: color A, W_0 and the residue classes apart.
    let label = part_labels(g, family);
    let mut buckets: Vec<(String, Option<Vec<usize>>, VertexSet)> = vec![
        ("A".into(), None, a.clone()),
        ("W_0".into(), None, near_x.clone()),
    ];
    let mut by_index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut unassigned = g.empty_set();
    for v in &outside.difference(&near_x) {
        match least_free_index_set(&hit_parts(g, v, &label, k), half) {
            Some(index_set) => {
                let slot = *by_index.entry(index_set.clone()).or_insert_with(|| {
                    buckets.push(("W_I".into(), Some(index_set), g.empty_set()));
                    buckets.len() - 1
                });
                buckets[slot].2.insert(v);
            }
            None => unassigned.insert(v),
        }
    }
    if !unassigned.is_empty() {
        buckets.push(("unassigned".into(), None, unassigned));
    }
    let n = g.vertex_count();
    let mut color_of = vec![0usize; n];
    let mut classes = Vec::new();
    let mut offset = 0;
    for (label, index_set, vertices) in buckets {
        if vertices.is_empty() && label != "A" {
            continue;
        }
        let (coloring, exact) = color_class(g, &vertices, caps);
        for (&v, &col) in coloring.vertices.iter().zip(&coloring.colors) {
            color_of[v] = offset + col;
        }
        classes.push(ColorClass {
            label,
            index_set,
            vertices,
            colors: coloring.count,
            offset,
            exact,
        });
        offset += coloring.count;
    }
    let coloring = Coloring {
        count: offset,
        vertices: (0..n).collect(),
        colors: color_of,
    };
    let w0_colors = classes
        .iter()
        .find(|cl| cl.label == "W_0")
        .map_or(0, |cl| cl.colors) as u64;
    let construction_bound = (2 * p + 1) + w0_colors + index_sets as u64 * (c - 1);
    let mut notes = vec![
        "W_0 is colored directly; no bound on neighbourhood chromatic number is assumed"
            .to_string(),
    ];
    if rock.mode == RockMode::HeuristicMinimal {
        notes
            .push("rock is inclusion-minimal only; the 2p+1 external-degree bound may fail".into());
    }
    if p < 32 * c {
        notes.push(format!("surrogate p = {p} is below 32c = {}", 32 * c));
    }
    Ok(PairOutcome::Bound(BoundTrace::Chi(ChiTrace {
        schema_version: crate::SCHEMA_VERSION,
        c,
        p,
        q: config.q,
        failed_step:
            "no index set I gives W_I with chromatic number at least c and a dense partner".into(),
        rock: a.clone(),
        rock_mode: rock.mode,
        cover: x.clone(),
        partition_seed: trial.seed,
        partition_found: outcome.found(),
        index_sets,
        color_count: coloring.count,
        classes,
        coloring,
        construction_bound,
        notes,
    })))
}

// ---------------------------------------------------------------------------
// mindeg mode

pub fn find_pair_mindeg(g: &Graph, config: &PipelineConfig, caps: &Caps) -> Result<PairOutcome> {
    config.validate()?;
    let (p, c) = (config.p, config.c);
    if config.s == 0 {
        return Err(Error::InvalidParameter(
            "rock size cap s must be positive".into(),
        ));
    }
    if find_rock_exact(g, p, caps)
        .or_else(|e| match e {
            Error::ResourceLimit { .. } => find_rock_heuristic(g, p),
            e => Err(e),
        })?
        .is_none()
    {
        return Err(Error::NoRock { p });
    }
    let (peel, residual) = peel_rocks(g, p, config.s, caps)?;

    for (i, rock) in peel.rocks.iter().enumerate() {
        let z = g.anticomplete_region(&rock.set);
        let Some(b) = dense_subset_at_least(g, &z, c) else {
            continue;
        };
        let Some((a_side, source)) = settle_a(g, &rock.set, &b, c) else {
            continue;
        };
        return Ok(PairOutcome::Found(PairCertificate {
            schema_version: crate::SCHEMA_VERSION,
            mode: PairMode::Mindeg,
            c,
            a_witness: side(g, &a_side, source, None),
            b_witness: side(g, &b, SideSource::Proof, None),
            a: a_side,
            b,
            route: PairRoute::PeeledRock {
                rock: i + 1,
                rock_set: rock.set.clone(),
            },
        }));
    }

    let removed = &peel.removed;
    let variant = PartitionVariant::Mindeg;
    let (k, half) = (variant.parts(p), variant.half(p));
    let mut trace = MindegTrace {
        schema_version: crate::SCHEMA_VERSION,
        c,
        p,
        q: config.q,
        s: config.s,
        failed_step: String::new(),
        peeled: peel.rocks.iter().map(|r| r.set.clone()).collect(),
        removed: removed.clone(),
        rock: None,
        cover: None,
        partition_seed: None,
        partition_found: false,
        index_sets: 0,
        audit: None,
        residual_edges: residual.edge_count(),
        notes: Vec::new(),
    };
    if p < 32 * c {
        trace
            .notes
            .push(format!("surrogate p = {p} is below 32c = {}", 32 * c));
    }
    let Some(rock) = pipeline_rock(&residual, p, caps)? else {
        trace.failed_step =
            "no peeled rock has a dense anticomplete set and G \\ R has no rock".into();
        return Ok(PairOutcome::Bound(BoundTrace::Mindeg(trace)));
    };
    let a = &rock.set;
    let decomposition = decompose_within(&residual, a, config.q)?;
    let x = &decomposition.cover;
    let index_sets = family_size(k, half, caps)?;
    let search = PartitionSearch {
        variant,
        p,
        threshold: (p as usize * a.len()).div_ceil(32),
        seed: config.seed,
        max_tries: config.max_tries,
        check: config.check,
    };
    let outcome = find_good_partition(&residual, a, x, &search, caps)?;
    let family = outcome.family();
    let trial = outcome.trial();
    trace.rock = Some(a.clone());
    trace.cover = Some(x.clone());
    trace.partition_seed = Some(trial.seed);
    trace.partition_found = outcome.found();
    trace.index_sets = index_sets;
    if rock.mode == RockMode::HeuristicMinimal {
        trace
            .notes
            .push("rock is inclusion-minimal only; the 2p+1 external-degree bound may fail".into());
    }

    let rest = a.union(removed).complement();
    let mut w_edges_total: u64 = 0;
    let mut max_w = Rational::from_integer(0);
    for index_set in Combinations::new(k, half) {
        let a_i = family.union_of(&index_set);
        let w = g.anticomplete_region(&a_i).intersection(&rest);
        w_edges_total += g.edge_count_within(&w) as u64;
        max_w = max_w.max(denseness(g, &w));
        let Some(b) = dense_subset_at_least(g, &w, c) else {
            continue;
        };
        let Some((a_side, source)) = settle_a(g, &a_i, &b, c) else {
            continue;
        };
        return Ok(PairOutcome::Found(PairCertificate {
            schema_version: crate::SCHEMA_VERSION,
            mode: PairMode::Mindeg,
            c,
            a_witness: side(g, &a_side, source, None),
            b_witness: side(g, &b, SideSource::Proof, None),
            a: a_side,
            b,
            route: PairRoute::IndexSet {
                index_set,
                proof_a_denseness: denseness(g, &a_i),
                partition_seed: trial.seed,
                partition_found: outcome.found(),
            },
        }));
    }

    let label = part_labels(g, family);
    let mut covered = 0;
    let mut outside_a = 0;
    for (u, v) in residual.edges_within(&rest) {
        outside_a += 1;
        let (hu, hv) = (hit_parts(g, u, &label, k), hit_parts(g, v, &label, k));
        let hit: Vec<bool> = hu.iter().zip(&hv).map(|(x, y)| *x || *y).collect();
        if least_free_index_set(&hit, half).is_some() {
            covered += 1;
        }
    }
    let inside_a = g.edge_count_within(a);
    let a_to_rest = a.iter().map(|v| g.degree_within(v, &rest)).sum();
    let n = g.vertex_count() as u64;
    trace.audit = Some(EdgeAudit {
        vertex_count: g.vertex_count(),
        residual_edges: residual.edge_count(),
        inside_a,
        a_to_rest,
        outside_a,
        covered_by_w: covered,
        uncovered: outside_a - covered,
        w_edges_total,
        max_w_denseness: max_w,
        construction_bound: index_sets as u64 * c * n + (2 * p + 1) * n + (p + 1) * n,
    });
    trace.failed_step = "no index set I gives W_I with a dense subset and a dense partner".into();
    Ok(PairOutcome::Bound(BoundTrace::Mindeg(trace)))
}

pub fn find_pair(
    g: &Graph,
    mode: PairMode,
    config: &PipelineConfig,
    caps: &Caps,
) -> Result<PairOutcome> {
    match mode {
        PairMode::Chi => find_pair_chi(g, config, caps),
        PairMode::Mindeg => find_pair_mindeg(g, config, caps),
    }
}

// ---------------------------------------------------------------------------
// verification

/// Rechecks a certificate from the graph alone: anticompleteness, the
/// recorded witnesses, and both sides against `c`.
pub fn verify_pair(g: &Graph, cert: &PairCertificate, c: u64, caps: &Caps) -> AuditReport {
    let mut report = AuditReport::new("pair-certificate");
    let n = g.vertex_count();
    if !report.check(
        "universe",
        cert.a.universe() == n && cert.b.universe() == n,
        format!("sets must range over the graph's {n} vertices"),
        || None,
    ) {
        return report;
    }
    report.check(
        "schema",
        cert.schema_version == crate::SCHEMA_VERSION,
        format!("schema_version {}", cert.schema_version),
        || None,
    );
    report.check(
        "target",
        cert.c >= c,
        format!("certificate c = {}, required {c}", cert.c),
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
    let crossing = cert.a.iter().find_map(|u| {
        g.neighbors(u)
            .intersection(&cert.b)
            .first()
            .map(|v| (u.min(v), u.max(v)))
    });
    report.check(
        "anticomplete",
        are_anticomplete(g, &cert.a, &cert.b),
        "",
        || crossing.map(|(u, v)| Witness::Edge(u, v)),
    );

    let check_side = |report: &mut AuditReport, name: &str, set: &VertexSet, w: &SideWitness| {
        let edges = g.edge_count_within(set);
        let dense = denseness(g, set);
        report.check(
            &format!("{name}-recorded"),
            w.size == set.len() && w.edges == edges && w.denseness == dense,
            format!("recomputed {} vertices, {edges} edges", set.len()),
            || Some(Witness::Set(set.to_vec())),
        );
        dense
    };
    let a_dense = check_side(&mut report, "a", &cert.a, &cert.a_witness);
    report.check(
        "a-denseness",
        at_least(a_dense, c),
        format!("denseness {a_dense} against {c}"),
        || Some(Witness::Set(cert.a.to_vec())),
    );
    let b_dense = check_side(&mut report, "b", &cert.b, &cert.b_witness);
    match cert.mode {
        PairMode::Mindeg => {
            report.check(
                "b-denseness",
                at_least(b_dense, c),
                format!("denseness {b_dense} against {c}"),
                || Some(Witness::Set(cert.b.to_vec())),
            );
        }
        PairMode::Chi => match chromatic_number_within(g, &cert.b, caps.chromatic) {
            Ok(col) => {
                report.check(
                    "b-chromatic",
                    col.count as u64 >= c && cert.b_witness.chromatic == Some(col.count),
                    format!(
                        "recomputed {}, recorded {:?}, required {c}",
                        col.count, cert.b_witness.chromatic
                    ),
                    || Some(Witness::Set(cert.b.to_vec())),
                );
            }
            Err(e) => report.fail("b-chromatic", e.to_string(), None),
        },
    }
    report
}

/// Rechecks a bound trace: in chi mode, that the coloring is proper, covers
/// every vertex and matches its class palettes; in mindeg mode, every
/// edge count.
pub fn verify_bound_trace(g: &Graph, trace: &BoundTrace) -> AuditReport {
    match trace {
        BoundTrace::Chi(t) => verify_chi_trace(g, t),
        BoundTrace::Mindeg(t) => verify_mindeg_trace(g, t),
    }
}

fn verify_chi_trace(g: &Graph, t: &ChiTrace) -> AuditReport {
    let mut report = AuditReport::new("chi-bound-trace");
    let n = g.vertex_count();
    let mut sorted = t.coloring.vertices.clone();
    sorted.sort_unstable();
    sorted.dedup();
    report.check(
        "covers-all",
        sorted.len() == n
            && t.coloring.vertices.len() == n
            && sorted.iter().enumerate().all(|(i, &v)| i == v),
        format!("{} of {n} vertices colored", sorted.len()),
        || None,
    );
    match is_proper_coloring(g, &t.coloring) {
        Ok(()) => report.pass("proper", ""),
        Err(msg) => {
            let witness = g
                .edges()
                .into_iter()
                .find(|&(u, v)| {
                    let pos = |x| t.coloring.vertices.iter().position(|&y| y == x);
                    matches!((pos(u), pos(v)), (Some(i), Some(j)) if t.coloring.colors[i] == t.coloring.colors[j])
                })
                .map(|(u, v)| Witness::Edge(u, v));
            report.fail("proper", msg, witness);
        }
    }
    let used: std::collections::BTreeSet<usize> = t.coloring.colors.iter().copied().collect();
    report.check(
        "count",
        t.color_count == t.coloring.count && used.len() <= t.color_count,
        format!("{} colors used, {} recorded", used.len(), t.color_count),
        || None,
    );
    let mut color_of = vec![usize::MAX; n];
    for (&v, &col) in t.coloring.vertices.iter().zip(&t.coloring.colors) {
        if v < n {
            color_of[v] = col;
        }
    }
    let mut seen = VertexSet::empty(n);
    let mut palettes_ok = true;
    let mut total = 0;
    for class in &t.classes {
        palettes_ok &= class.vertices.universe() == n
            && seen.is_disjoint(&class.vertices)
            && class.offset == total
            && class
                .vertices
                .iter()
                .all(|v| (class.offset..class.offset + class.colors).contains(&color_of[v]));
        seen.union_with(&class.vertices);
        total += class.colors;
    }
    report.check(
        "class-palettes",
        palettes_ok && total == t.color_count && seen.len() == n,
        format!("{} classes, {total} colors", t.classes.len()),
        || None,
    );
    report
}

fn verify_mindeg_trace(g: &Graph, t: &MindegTrace) -> AuditReport {
    let mut report = AuditReport::new("mindeg-bound-trace");
    let n = g.vertex_count();
    let residual = g.without_vertices(&t.removed);
    report.check(
        "residual-edges",
        residual.edge_count() == t.residual_edges,
        format!("recomputed {}", residual.edge_count()),
        || None,
    );
    let mut union = VertexSet::empty(n);
    let mut disjoint = true;
    for r in &t.peeled {
        disjoint &= r.universe() == n && union.is_disjoint(r);
        union.union_with(r);
    }
    report.check("peeled", disjoint && union == t.removed, "", || None);
    let (Some(a), Some(audit)) = (&t.rock, &t.audit) else {
        return report;
    };
    let rest = a.union(&t.removed).complement();
    let inside_a = g.edge_count_within(a);
    let a_to_rest: usize = a.iter().map(|v| g.degree_within(v, &rest)).sum();
    let outside_a = residual.edge_count_within(&rest);
    report.check(
        "edge-counts",
        audit.inside_a == inside_a
            && audit.a_to_rest == a_to_rest
            && audit.outside_a == outside_a
            && audit.covered_by_w + audit.uncovered == outside_a
            && audit.residual_edges == inside_a + a_to_rest + outside_a
            && audit.vertex_count == n,
        format!("|E(A)| = {inside_a}, A to rest {a_to_rest}, outside {outside_a}"),
        || None,
    );
    report.check(
        "w-majorizes-covered",
        audit.w_edges_total >= audit.covered_by_w as u64,
        "",
        || None,
    );
    report
}
