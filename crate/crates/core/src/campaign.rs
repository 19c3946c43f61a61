//! Experiment campaigns: a TOML file names a generator, a size range, a
//! parameter grid, targets `(t, c)`, surrogate pipeline parameters and caps.
//! Each instance runs through the pair finder and, when small enough, the
//! exhaustive oracle; the frontier keeps, per `(t, c)`, the largest value
//! (χ, minimum degree, or tournament χ) seen on an instance that satisfies
//! the hypothesis and has no pair.
//!
//! Output is byte-deterministic: instances are generated and reduced in a
//! fixed order regardless of the worker count (`ANTICOMPLETE_WORKERS`).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::audit::AuditReport;
use crate::brute::{brute_force_pair, BruteMode};
use crate::canon;
use crate::error::{Error, Result};
use crate::generate::{Family, Generated};
use crate::graph::{
    biclique_number, chromatic_number, clique_number, min_degree_within, Caps, Graph,
};
use crate::partition::CheckMode;
use crate::pipeline::{find_pair, PairMode, PairOutcome, PipelineConfig};
use crate::tournament::{search_complete_pair, tournament_chromatic, Tournament};

pub const WORKERS_ENV: &str = "ANTICOMPLETE_WORKERS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CampaignMode {
    Chi,
    Mindeg,
    ChiChi,
    Tournament,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Targets {
    pub t: Vec<u64>,
    pub c: Vec<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Grid {
    /// Edge probabilities for `gnp`.
    pub p: Vec<f64>,
    /// Subset sizes for `kneser`.
    pub k: Vec<usize>,
    /// Second side sizes for `complete-bipartite`.
    pub b: Vec<usize>,
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    /// A generator family name, or `exhaustive` for every graph up to
    /// isomorphism.
    pub family: String,
    /// Inclusive `[min, max]` of the family's size parameter.
    pub sizes: [usize; 2],
    /// Seeded instances per grid point (random families only).
    #[serde(default = "one")]
    pub instances: usize,
    #[serde(default)]
    pub grid: Grid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct PipelineSettings {
    pub p: u64,
    pub q: usize,
    pub s: usize,
    pub max_tries: u64,
}

impl Default for PipelineSettings {
    fn default() -> Self {
        PipelineSettings {
            p: 1,
            q: 2,
            s: 8,
            max_tries: 50,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Campaign {
    pub name: String,
    pub mode: CampaignMode,
    pub seed_base: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    pub targets: Targets,
    pub generator: GeneratorSpec,
    #[serde(default)]
    pub pipeline: PipelineSettings,
    #[serde(default)]
    pub caps: Caps,
}

impl Campaign {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Campaign(e.to_string()))
    }
}

#[derive(Debug, Clone)]
enum Subject {
    Graph(Graph),
    Tournament(Tournament),
}

struct Instance {
    id: String,
    seed: u64,
    subject: Subject,
}

fn family_for(spec: &GeneratorSpec, size: usize) -> Result<Vec<Family>> {
    let g = &spec.grid;
    let need = |name: &str, v: bool| {
        if v {
            Ok(())
        } else {
            Err(Error::Campaign(format!(
                "family {} needs grid.{name}",
                spec.family
            )))
        }
    };
    Ok(match spec.family.as_str() {
        "gnp" => {
            need("p", !g.p.is_empty())?;
            g.p.iter().map(|&p| Family::Gnp { n: size, p }).collect()
        }
        "kneser" => {
            need("k", !g.k.is_empty())?;
            g.k.iter().map(|&k| Family::Kneser { n: size, k }).collect()
        }
        "complete-bipartite" => {
            need("b", !g.b.is_empty())?;
            g.b.iter()
                .map(|&b| Family::CompleteBipartite { a: size, b })
                .collect()
        }
        "mycielski" => vec![Family::Mycielski { iterations: size }],
        "shift" => vec![Family::Shift { n: size }],
        "complete" => vec![Family::Complete { n: size }],
        "random-tournament" => vec![Family::RandomTournament { n: size }],
        other => return Err(Error::Campaign(format!("unknown family {other:?}"))),
    })
}

fn is_random(family: &Family) -> bool {
    matches!(family, Family::Gnp { .. } | Family::RandomTournament { .. })
}

fn instances(campaign: &Campaign) -> Result<Vec<Instance>> {
    let spec = &campaign.generator;
    let [lo, hi] = spec.sizes;
    let mut out = Vec::new();
    if spec.family == "exhaustive" || spec.family == "exhaustive-tournament" {
        if hi > 8 {
            return Err(Error::Campaign(
                "exhaustive enumeration is limited to 8 vertices".into(),
            ));
        }
        for n in lo..=hi {
            if spec.family == "exhaustive" {
                for (i, g) in canon::graphs_of_order(n).into_iter().enumerate() {
                    out.push(Instance {
                        id: format!("exhaustive n={n} #{i}"),
                        seed: campaign.seed_base,
                        subject: Subject::Graph(g),
                    });
                }
            } else {
                for (i, t) in canon::tournaments_of_order(n).into_iter().enumerate() {
                    out.push(Instance {
                        id: format!("exhaustive-tournament n={n} #{i}"),
                        seed: campaign.seed_base,
                        subject: Subject::Tournament(t),
                    });
                }
            }
        }
        return Ok(out);
    }
    let mut counter = 0u64;
    for size in lo..=hi {
        for family in family_for(spec, size)? {
            let copies = if is_random(&family) {
                spec.instances
            } else {
                1
            };
            for _ in 0..copies {
                let seed = campaign.seed_base.wrapping_add(counter);
                counter += 1;
                let subject = match family.generate(seed)? {
                    Generated::Graph(g) => Subject::Graph(g),
                    Generated::Tournament(t) => Subject::Tournament(t),
                };
                out.push(Instance {
                    id: family.describe(seed),
                    seed,
                    subject,
                });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetRecord {
    pub t: u64,
    pub c: u64,
    /// The hypothesis (ω < t, τ < t) holds.
    pub eligible: bool,
    /// Exhaustive oracle verdict: does a pair exist?
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair_exists: Option<bool>,
    /// `found`, `bound`, `skipped` or an error message.
    pub finder: String,
    /// False when the finder reports a pair the oracle rules out.
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub id: String,
    pub vertices: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypothesis_value: Option<u64>,
    pub targets: Vec<TargetRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrontierRow {
    pub t: u64,
    pub c: u64,
    /// Largest value over eligible instances where the oracle found no pair.
    pub value: Option<u64>,
    pub witness: Option<String>,
    pub eligible: usize,
    pub pair_free: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrontierTable {
    /// `chromatic-number`, `minimum-degree` or `tournament-chromatic-number`.
    pub value_kind: String,
    pub rows: Vec<FrontierRow>,
}

impl FrontierTable {
    /// Within each `t`, values must not decrease as `c` grows (an absent
    /// value sorts below every present one).
    pub fn audit(&self) -> AuditReport {
        let mut report = AuditReport::new("frontier-monotonicity");
        let mut rows: Vec<&FrontierRow> = self.rows.iter().collect();
        rows.sort_by_key(|r| (r.t, r.c));
        for pair in rows.windows(2) {
            let (lo, hi) = (pair[0], pair[1]);
            if lo.t == hi.t && lo.value > hi.value {
                report.fail(
                    "monotone-in-c",
                    format!(
                        "t = {}: c = {} has {:?} but c = {} has {:?}",
                        lo.t, lo.c, lo.value, hi.c, hi.value
                    ),
                    None,
                );
            }
        }
        if report.passed {
            report.pass("monotone-in-c", format!("{} rows", self.rows.len()));
        }
        report
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub schema_version: u32,
    pub campaign: Campaign,
    pub frontier: FrontierTable,
    pub records: Vec<InstanceRecord>,
}

impl CampaignReport {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("serializable");
        text.push('\n');
        text
    }

    /// Parses a report and audits its frontier.
    pub fn load(text: &str) -> Result<(Self, AuditReport)> {
        let report: CampaignReport = serde_json::from_str(text)?;
        let audit = report.frontier.audit();
        Ok((report, audit))
    }
}

fn graph_record(campaign: &Campaign, inst: &Instance, g: &Graph) -> Result<InstanceRecord> {
    let caps = &campaign.caps;
    let mode = campaign.mode;
    let value = match mode {
        CampaignMode::Mindeg => min_degree_within(g, &g.vertices()) as u64,
        _ => chromatic_number(g, caps)? as u64,
    };
    let hypothesis = match mode {
        CampaignMode::Mindeg => biclique_number(g, caps)? as u64,
        _ => clique_number(g, caps)? as u64,
    };
    let oracle_ok = g.vertex_count() <= caps.brute_force_pair;
    let mut targets = Vec::new();
    for &t in &campaign.targets.t {
        for &c in &campaign.targets.c {
            let eligible = hypothesis < t;
            let mut record = TargetRecord {
                t,
                c,
                eligible,
                pair_exists: None,
                finder: "skipped".into(),
                consistent: true,
            };
            if eligible {
                if oracle_ok {
                    let brute_mode = match mode {
                        CampaignMode::Chi => BruteMode::Chi,
                        CampaignMode::Mindeg => BruteMode::Mindeg,
                        _ => BruteMode::ChiChi,
                    };
                    record.pair_exists = Some(brute_force_pair(g, c, brute_mode, caps)?.is_some());
                }
                let pair_mode = match mode {
                    CampaignMode::Chi => Some(PairMode::Chi),
                    CampaignMode::Mindeg => Some(PairMode::Mindeg),
                    _ => None,
                };
                if let Some(pair_mode) = pair_mode {
                    let s = &campaign.pipeline;
                    let config = PipelineConfig {
                        p: s.p,
                        q: s.q,
                        s: s.s,
                        c,
                        seed: inst.seed,
                        max_tries: s.max_tries,
                        check: CheckMode::Exhaustive,
                    };
                    record.finder = match find_pair(g, pair_mode, &config, caps) {
                        Ok(PairOutcome::Found(_)) => "found".into(),
                        Ok(PairOutcome::Bound(_)) => "bound".into(),
                        Err(e) => format!("error: {e}"),
                    };
                    record.consistent =
                        !(record.finder == "found" && record.pair_exists == Some(false));
                }
            }
            targets.push(record);
        }
    }
    Ok(InstanceRecord {
        id: inst.id.clone(),
        vertices: g.vertex_count(),
        edges: Some(g.edge_count()),
        value: Some(value),
        hypothesis_value: Some(hypothesis),
        targets,
        error: None,
    })
}

fn tournament_record(
    campaign: &Campaign,
    inst: &Instance,
    t: &Tournament,
) -> Result<InstanceRecord> {
    let caps = &campaign.caps;
    let value = tournament_chromatic(t, caps)? as u64;
    let oracle_ok = t.vertex_count() <= caps.tournament_pair;
    let mut targets = Vec::new();
    for &tt in &campaign.targets.t {
        for &c in &campaign.targets.c {
            let pair_exists = if oracle_ok {
                Some(search_complete_pair(t, c as usize, caps)?.is_some())
            } else {
                None
            };
            targets.push(TargetRecord {
                t: tt,
                c,
                eligible: true,
                pair_exists,
                finder: "skipped".into(),
                consistent: true,
            });
        }
    }
    Ok(InstanceRecord {
        id: inst.id.clone(),
        vertices: t.vertex_count(),
        edges: None,
        value: Some(value),
        hypothesis_value: None,
        targets,
        error: None,
    })
}

fn run_instance(campaign: &Campaign, inst: &Instance) -> InstanceRecord {
    let result = match (&inst.subject, campaign.mode) {
        (Subject::Tournament(t), CampaignMode::Tournament) => tournament_record(campaign, inst, t),
        (Subject::Graph(g), mode) if mode != CampaignMode::Tournament => {
            graph_record(campaign, inst, g)
        }
        _ => Err(Error::Campaign(
            "generator output does not match the campaign mode".into(),
        )),
    };
    result.unwrap_or_else(|e| {
        let vertices = match &inst.subject {
            Subject::Graph(g) => g.vertex_count(),
            Subject::Tournament(t) => t.vertex_count(),
        };
        InstanceRecord {
            id: inst.id.clone(),
            vertices,
            edges: None,
            value: None,
            hypothesis_value: None,
            targets: Vec::new(),
            error: Some(e.to_string()),
        }
    })
}

fn frontier(campaign: &Campaign, records: &[InstanceRecord]) -> FrontierTable {
    let value_kind = match campaign.mode {
        CampaignMode::Mindeg => "minimum-degree",
        CampaignMode::Tournament => "tournament-chromatic-number",
        _ => "chromatic-number",
    };
    let mut rows = Vec::new();
    if !records.is_empty() {
        for &t in &campaign.targets.t {
            for &c in &campaign.targets.c {
                let mut row = FrontierRow {
                    t,
                    c,
                    value: None,
                    witness: None,
                    eligible: 0,
                    pair_free: 0,
                };
                for rec in records {
                    let Some(target) = rec.targets.iter().find(|x| x.t == t && x.c == c) else {
                        continue;
                    };
                    if !target.eligible {
                        continue;
                    }
                    row.eligible += 1;
                    if target.pair_exists != Some(false) {
                        continue;
                    }
                    row.pair_free += 1;
                    if rec.value > row.value {
                        row.value = rec.value;
                        row.witness = Some(rec.id.clone());
                    }
                }
                rows.push(row);
            }
        }
    }
    FrontierTable {
        value_kind: value_kind.into(),
        rows,
    }
}

fn worker_count() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

pub fn run_campaign(campaign: &Campaign) -> Result<CampaignReport> {
    let list = instances(campaign)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count())
        .build()
        .map_err(|e| Error::Campaign(e.to_string()))?;
    let records: Vec<InstanceRecord> = pool.install(|| {
        list.par_iter()
            .map(|inst| run_instance(campaign, inst))
            .collect()
    });
    let frontier = frontier(campaign, &records);
    Ok(CampaignReport {
        schema_version: crate::SCHEMA_VERSION,
        campaign: campaign.clone(),
        frontier,
        records,
    })
}
