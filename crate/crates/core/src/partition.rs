//! Randomized good partitions.
//!
//! A rock `A` with cover `X` has `A \ X` split uniformly at random into `k`
//! parts; the split is good when every union of `k/2` parts (together with
//! `X` in the chromatic variant) still captures a prescribed number of the
//! rock's edges. The two Hoeffding-type tail bounds that make a random split
//! good with positive probability are exposed alongside Monte-Carlo
//! estimators of the events they bound.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::audit::{AuditReport, Witness};
use crate::error::{Error, Result};
use crate::generate::rng;
use crate::graph::{Caps, Graph};
use crate::vertex_set::{binomial, VertexSet};

/// Upper bound on the probability that at most `m/8` edges of an `m`-edge
/// matching have both ends in a uniform random half of the vertices.
pub fn matching_bound(m: u64) -> f64 {
    (-(m as f64) / 32.0).exp()
}

/// Upper bound on the probability that `Σ_{v∈Z} d_v ≤ m/4` for a uniform
/// random half `Z`, where `0 ≤ d_v ≤ d` and `Σ d_v = m`.
pub fn degree_sum_bound(m: u64, d: u64) -> f64 {
    (-(m as f64) / (8.0 * d as f64)).exp()
}

/// Observed frequency of "at most m/8 matching edges inside Z" over
/// `samples` independent half-samples of a perfect matching with `m` edges.
pub fn matching_bad_event_frequency(m: usize, samples: usize, seed: u64) -> f64 {
    let mut rng = rng(seed);
    let mut bad = 0usize;
    for _ in 0..samples {
        let inside = (0..m)
            .filter(|_| rng.gen_bool(0.5) && rng.gen_bool(0.5))
            .count();
        if 8 * inside <= m {
            bad += 1;
        }
    }
    bad as f64 / samples as f64
}

/// Observed frequency of `Σ_{v∈Z} d_v ≤ m/4` with `m = Σ d_v`.
pub fn degree_sum_bad_event_frequency(weights: &[u64], samples: usize, seed: u64) -> f64 {
    let m: u64 = weights.iter().sum();
    let mut rng = rng(seed);
    let mut bad = 0usize;
    for _ in 0..samples {
        let sum: u64 = weights.iter().filter(|_| rng.gen_bool(0.5)).sum();
        if 4 * sum <= m {
            bad += 1;
        }
    }
    bad as f64 / samples as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PartitionVariant {
    /// `4p + 2` parts, unions of `2p + 1`, counting edges inside `X ∪ A_I`.
    Chi,
    /// `8p + 4` parts, unions of `4p + 2`, counting edges inside `A_I`.
    Mindeg,
}

impl PartitionVariant {
    pub fn parts(self, p: u64) -> usize {
        match self {
            PartitionVariant::Chi => 4 * p as usize + 2,
            PartitionVariant::Mindeg => 8 * p as usize + 4,
        }
    }

    pub fn half(self, p: u64) -> usize {
        self.parts(p) / 2
    }

    fn includes_cover(self) -> bool {
        matches!(self, PartitionVariant::Chi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum CheckMode {
    /// Every index set of the family.
    Exhaustive,
    /// `r` uniformly random index sets; verdicts are statistical.
    Sampled { r: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionFamily {
    pub ground: VertexSet,
    pub parts: Vec<VertexSet>,
    pub half_size: usize,
}

impl PartitionFamily {
    pub fn k(&self) -> usize {
        self.parts.len()
    }

    /// `A_I`: the union of the parts indexed by `index_set`.
    pub fn union_of(&self, index_set: &[usize]) -> VertexSet {
        let mut out = VertexSet::empty(self.ground.universe());
        for &i in index_set {
            out.union_with(&self.parts[i]);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSetCount {
    pub index_set: Vec<usize>,
    pub edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum Verdict {
    Success { statistical: bool },
    Failure { witness: Vec<usize>, edges: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionTrial {
    pub seed: u64,
    /// Part index of each ground vertex, in ascending vertex order.
    pub assignment: Vec<usize>,
    pub checked: Vec<IndexSetCount>,
    pub verdict: Verdict,
}

impl PartitionTrial {
    pub fn succeeded(&self) -> bool {
        matches!(self.verdict, Verdict::Success { .. })
    }

    fn min_count(&self) -> usize {
        self.checked
            .iter()
            .map(|c| c.edges)
            .min()
            .unwrap_or(usize::MAX)
    }
}

/// Assigns every ground vertex to one of `k` parts, uniformly and
/// independently, reproducibly from `seed`.
pub fn sample_partition(ground: &VertexSet, k: usize, seed: u64) -> PartitionFamily {
    assert!(k >= 1, "need at least one part");
    let mut rng = rng(seed);
    let mut parts = vec![VertexSet::empty(ground.universe()); k];
    for v in ground {
        parts[rng.gen_range(0..k)].insert(v);
    }
    PartitionFamily {
        ground: ground.clone(),
        parts,
        half_size: k / 2,
    }
}

/// Edge counts between part labels; label `k` stands for the cover `X`.
struct PartCounts {
    labels: usize,
    counts: Vec<usize>,
}

impl PartCounts {
    fn new(g: &Graph, a: &VertexSet, x: &VertexSet, family: &PartitionFamily) -> Self {
        let k = family.k();
        let labels = k + 1;
        let mut label = vec![usize::MAX; g.vertex_count()];
        for v in x {
            label[v] = k;
        }
        for (i, part) in family.parts.iter().enumerate() {
            for v in part {
                label[v] = i;
            }
        }
        let mut counts = vec![0; labels * labels];
        for (u, v) in g.edges_within(a) {
            let (i, j) = (label[u].min(label[v]), label[u].max(label[v]));
            debug_assert!(
                j != usize::MAX,
                "a vertex of A is neither in X nor in a part"
            );
            counts[i * labels + j] += 1;
        }
        PartCounts { labels, counts }
    }

    fn pair(&self, i: usize, j: usize) -> usize {
        self.counts[i.min(j) * self.labels + i.max(j)]
    }

    fn count(&self, index_set: &[usize], with_cover: bool) -> usize {
        let cover = self.labels - 1;
        let mut total = if with_cover {
            self.pair(cover, cover)
        } else {
            0
        };
        for (pos, &i) in index_set.iter().enumerate() {
            total += self.pair(i, i);
            if with_cover {
                total += self.pair(i, cover);
            }
            for &j in &index_set[..pos] {
                total += self.pair(i, j);
            }
        }
        total
    }

    /// All `half`-subsets of `0..k` in lexicographic order with their counts.
    fn all(&self, k: usize, half: usize, with_cover: bool) -> Vec<IndexSetCount> {
        let cover = self.labels - 1;
        let base = if with_cover {
            self.pair(cover, cover)
        } else {
            0
        };
        let mut out = Vec::with_capacity(binomial(k as u64, half as u64).min(1 << 24) as usize);
        let mut current = Vec::with_capacity(half);
        self.walk(k, half, 0, base, with_cover, &mut current, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(
        &self,
        k: usize,
        half: usize,
        start: usize,
        running: usize,
        with_cover: bool,
        current: &mut Vec<usize>,
        out: &mut Vec<IndexSetCount>,
    ) {
        if current.len() == half {
            out.push(IndexSetCount {
                index_set: current.clone(),
                edges: running,
            });
            return;
        }
        let need = half - current.len();
        for i in start..=k - need {
            let mut add = self.pair(i, i);
            if with_cover {
                add += self.pair(i, self.labels - 1);
            }
            add += current.iter().map(|&j| self.pair(i, j)).sum::<usize>();
            current.push(i);
            self.walk(k, half, i + 1, running + add, with_cover, current, out);
            current.pop();
        }
    }
}

fn random_index_set(rng: &mut impl Rng, k: usize, half: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..k).collect();
    let (chosen, _) = all.partial_shuffle(rng, half);
    let mut chosen = chosen.to_vec();
    chosen.sort_unstable();
    chosen
}

#[allow(clippy::too_many_arguments)]
fn run_trial(
    g: &Graph,
    a: &VertexSet,
    x: &VertexSet,
    ground: &VertexSet,
    variant: PartitionVariant,
    p: u64,
    threshold: usize,
    seed: u64,
    check: CheckMode,
) -> (PartitionFamily, PartitionTrial) {
    let k = variant.parts(p);
    let half = variant.half(p);
    let family = sample_partition(ground, k, seed);
    let counts = PartCounts::new(g, a, x, &family);
    let with_cover = variant.includes_cover();
    let checked = match check {
        CheckMode::Exhaustive => counts.all(k, half, with_cover),
        CheckMode::Sampled { r } => {
            let mut rng = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
            (0..r)
                .map(|_| {
                    let index_set = random_index_set(&mut rng, k, half);
                    let edges = counts.count(&index_set, with_cover);
                    IndexSetCount { index_set, edges }
                })
                .collect()
        }
    };
    let verdict = match checked.iter().find(|c| c.edges < threshold) {
        Some(bad) => Verdict::Failure {
            witness: bad.index_set.clone(),
            edges: bad.edges,
        },
        None => Verdict::Success {
            statistical: matches!(check, CheckMode::Sampled { .. }),
        },
    };
    let mut part_of = vec![0; g.vertex_count()];
    for (i, part) in family.parts.iter().enumerate() {
        for v in part {
            part_of[v] = i;
        }
    }
    let assignment = ground.iter().map(|v| part_of[v]).collect();
    let trial = PartitionTrial {
        seed,
        assignment,
        checked,
        verdict,
    };
    (family, trial)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "outcome")]
pub enum PartitionOutcome {
    Found {
        family: PartitionFamily,
        trial: PartitionTrial,
        tries: u64,
    },
    /// No trial succeeded; the trial with the largest minimum count is kept.
    Exhausted {
        family: PartitionFamily,
        trial: PartitionTrial,
        tries: u64,
    },
}

impl PartitionOutcome {
    pub fn family(&self) -> &PartitionFamily {
        match self {
            PartitionOutcome::Found { family, .. } | PartitionOutcome::Exhausted { family, .. } => {
                family
            }
        }
    }

    pub fn trial(&self) -> &PartitionTrial {
        match self {
            PartitionOutcome::Found { trial, .. } | PartitionOutcome::Exhausted { trial, .. } => {
                trial
            }
        }
    }

    pub fn found(&self) -> bool {
        matches!(self, PartitionOutcome::Found { .. })
    }
}

/// Parameters of a good-partition search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionSearch {
    pub variant: PartitionVariant,
    pub p: u64,
    pub threshold: usize,
    pub seed: u64,
    pub max_tries: u64,
    pub check: CheckMode,
}

/// Retries random partitions of `a \ x` (seeds `seed, seed+1, ...`) until
/// every checked index set captures at least `threshold` edges.
pub fn find_good_partition(
    g: &Graph,
    a: &VertexSet,
    x: &VertexSet,
    search: &PartitionSearch,
    caps: &Caps,
) -> Result<PartitionOutcome> {
    if search.p == 0 {
        return Err(Error::InvalidParameter("p must be positive".into()));
    }
    if !x.is_subset(a) {
        return Err(Error::InvalidParameter("cover X must lie inside A".into()));
    }
    let k = search.variant.parts(search.p);
    let half = search.variant.half(search.p);
    if search.check == CheckMode::Exhaustive {
        let family_size = binomial(k as u64, half as u64);
        if family_size > caps.partition_family as u128 {
            return Err(Error::FamilyTooLarge {
                k,
                half,
                cap: caps.partition_family as u128,
            });
        }
    }
    let ground = a.difference(x);
    // with nothing to split, every seed yields the same partition
    let max_tries = if ground.is_empty() || search.threshold == 0 {
        1
    } else {
        search.max_tries.max(1)
    };
    let mut best: Option<(PartitionFamily, PartitionTrial)> = None;
    for t in 0..max_tries {
        let seed = search.seed.wrapping_add(t);
        let (family, trial) = run_trial(
            g,
            a,
            x,
            &ground,
            search.variant,
            search.p,
            search.threshold,
            seed,
            search.check,
        );
        if trial.succeeded() {
            return Ok(PartitionOutcome::Found {
                family,
                trial,
                tries: t + 1,
            });
        }
        if best
            .as_ref()
            .is_none_or(|(_, b)| trial.min_count() > b.min_count())
        {
            best = Some((family, trial));
        }
    }
    let (family, trial) = best.expect("at least one trial");
    Ok(PartitionOutcome::Exhausted {
        family,
        trial,
        tries: max_tries,
    })
}

/// Recomputes every recorded count from the graph and re-derives the verdict.
pub fn verify_trial(
    g: &Graph,
    a: &VertexSet,
    x: &VertexSet,
    search: &PartitionSearch,
    family: &PartitionFamily,
    trial: &PartitionTrial,
) -> AuditReport {
    let mut report = AuditReport::new("partition-trial");
    let ground = a.difference(x);
    let mut union = VertexSet::empty(g.vertex_count());
    let mut disjoint = true;
    for part in &family.parts {
        disjoint &= union.is_disjoint(part);
        union.union_with(part);
    }
    report.check(
        "partition",
        disjoint && union == ground && family.k() == search.variant.parts(search.p),
        format!("{} parts over |A \\ X| = {}", family.k(), ground.len()),
        || None,
    );
    let replay = sample_partition(&ground, family.k().max(1), trial.seed);
    report.check("seed-replay", replay.parts == family.parts, "", || None);
    let with_cover = search.variant.includes_cover();
    let mut all_meet = true;
    for entry in &trial.checked {
        let mut s = family.union_of(&entry.index_set);
        if with_cover {
            s.union_with(x);
        }
        let edges = g.edge_count_within(&s);
        if edges != entry.edges {
            report.fail(
                "recorded-count",
                format!("recomputed {edges}, recorded {}", entry.edges),
                Some(Witness::IndexSet(entry.index_set.clone())),
            );
            return report;
        }
        all_meet &= edges >= search.threshold;
    }
    report.pass(
        "recorded-count",
        format!("{} index sets", trial.checked.len()),
    );
    report.check(
        "verdict",
        all_meet == trial.succeeded(),
        "",
        || match &trial.verdict {
            Verdict::Failure { witness, .. } => Some(Witness::IndexSet(witness.clone())),
            _ => None,
        },
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    fn search(variant: PartitionVariant, p: u64, threshold: usize) -> PartitionSearch {
        PartitionSearch {
            variant,
            p,
            threshold,
            seed: 1,
            max_tries: 50,
            check: CheckMode::Exhaustive,
        }
    }

    #[test]
    fn bound_values() {
        assert!((matching_bound(32) - 0.36788).abs() < 1e-5);
        assert!((matching_bound(1) - 0.96923).abs() < 1e-5);
        assert!((degree_sum_bound(256, 8) - 0.01832).abs() < 1e-5);
        assert!((degree_sum_bound(8, 1) - (-1.0f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn sample_partition_contract() {
        let empty = VertexSet::empty(10);
        let fam = sample_partition(&empty, 4, 3);
        assert_eq!(fam.k(), 4);
        assert!(fam.parts.iter().all(VertexSet::is_empty));
        let ground = VertexSet::from_indices(10, [1, 3, 5, 7, 9]);
        assert_eq!(
            sample_partition(&ground, 3, 11),
            sample_partition(&ground, 3, 11)
        );
    }

    #[test]
    fn part_sizes_are_uniform() {
        // 10^4 seeds, 60 vertices, 6 parts: chi-squared over total part sizes
        let ground = VertexSet::full(60);
        let k = 6;
        let mut totals = vec![0f64; k];
        let seeds = 10_000u64;
        for seed in 0..seeds {
            let fam = sample_partition(&ground, k, seed);
            for (i, part) in fam.parts.iter().enumerate() {
                totals[i] += part.len() as f64;
            }
        }
        let expected = seeds as f64 * 60.0 / k as f64;
        let chi2: f64 = totals
            .iter()
            .map(|t| (t - expected).powi(2) / expected)
            .sum();
        // k-1 = 5 degrees of freedom: mean 5, sd sqrt(10)
        assert!(chi2 < 5.0 + 3.0 * 10f64.sqrt(), "chi2 = {chi2}");
    }

    #[test]
    fn degenerate_two_parts() {
        // edges all inside part 0 of a forced two-part split: k = 2 needs p
        // with 4p+2 = 2, which does not exist, so exercise the counter directly
        let g = generate::complete(4);
        let a = g.vertices();
        let x = g.empty_set();
        let family = PartitionFamily {
            ground: a.clone(),
            parts: vec![a.clone(), VertexSet::empty(4)],
            half_size: 1,
        };
        let counts = PartCounts::new(&g, &a, &x, &family);
        let all = counts.all(2, 1, false);
        assert_eq!(
            all[0],
            IndexSetCount {
                index_set: vec![0],
                edges: 6
            }
        );
        assert_eq!(
            all[1],
            IndexSetCount {
                index_set: vec![1],
                edges: 0
            }
        );
        let failing = all.iter().find(|c| c.edges < 1).unwrap();
        assert_eq!(failing.index_set, vec![1]);
    }

    #[test]
    fn zero_threshold_succeeds_immediately() {
        let g = generate::gnp(12, 0.5, 4);
        let a = g.vertices();
        let out = find_good_partition(
            &g,
            &a,
            &g.empty_set(),
            &search(PartitionVariant::Chi, 1, 0),
            &Caps::default(),
        )
        .unwrap();
        assert!(out.found());
        assert!(matches!(out, PartitionOutcome::Found { tries: 1, .. }));
    }

    #[test]
    fn impossible_threshold_exhausts() {
        let g = generate::complete(6);
        let a = g.vertices();
        let s = PartitionSearch {
            max_tries: 5,
            ..search(PartitionVariant::Chi, 1, 100)
        };
        let out = find_good_partition(&g, &a, &g.empty_set(), &s, &Caps::default()).unwrap();
        assert!(!out.found());
        assert!(matches!(out.trial().verdict, Verdict::Failure { .. }));
        let report = verify_trial(&g, &a, &g.empty_set(), &s, out.family(), out.trial());
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn family_cap() {
        let g = generate::complete(6);
        let a = g.vertices();
        let err = find_good_partition(
            &g,
            &a,
            &g.empty_set(),
            &search(PartitionVariant::Mindeg, 3, 1),
            &Caps::default(),
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::FamilyTooLarge {
                k: 28,
                half: 14,
                ..
            }
        ));
        let s = PartitionSearch {
            check: CheckMode::Sampled { r: 50 },
            ..search(PartitionVariant::Mindeg, 3, 0)
        };
        let out = find_good_partition(&g, &a, &g.empty_set(), &s, &Caps::default()).unwrap();
        assert_eq!(out.trial().verdict, Verdict::Success { statistical: true });
    }

    #[test]
    fn recorded_counts_recompute() {
        for seed in 0..20 {
            let g = generate::gnp(20, 0.4, seed);
            let a = g.vertices();
            let x = VertexSet::from_indices(20, [0, 5]);
            for variant in [PartitionVariant::Chi, PartitionVariant::Mindeg] {
                let s = PartitionSearch {
                    seed,
                    max_tries: 3,
                    ..search(variant, 1, g.edge_count() / 32)
                };
                let out = find_good_partition(&g, &a, &x, &s, &Caps::default()).unwrap();
                let report = verify_trial(&g, &a, &x, &s, out.family(), out.trial());
                assert!(report.passed, "{report:?}");
                assert_eq!(
                    find_good_partition(&g, &a, &x, &s, &Caps::default()).unwrap(),
                    out
                );
            }
        }
    }

    #[test]
    fn tampered_count_is_caught() {
        let g = generate::gnp(15, 0.5, 2);
        let a = g.vertices();
        let s = search(PartitionVariant::Chi, 1, 1);
        let out = find_good_partition(&g, &a, &g.empty_set(), &s, &Caps::default()).unwrap();
        let mut trial = out.trial().clone();
        trial.checked[3].edges += 1;
        let report = verify_trial(&g, &a, &g.empty_set(), &s, out.family(), &trial);
        assert!(!report.passed);
        assert!(matches!(report.first_witness(), Some(Witness::IndexSet(_))));
    }
}
