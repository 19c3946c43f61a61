//! `anticomplete` command line. Every subcommand reads its graph from a file
//! or standard input and writes JSON to standard output.
//!
//! Exit codes: 0 found / passed, 1 searched soundly and found nothing,
//! 2 error or failed audit.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anticomplete::audit::AuditReport;
use anticomplete::brute::{brute_force_pair, BruteMode};
use anticomplete::campaign::{run_campaign, Campaign, CampaignReport};
use anticomplete::generate::{Family, Generated};
use anticomplete::graph::{
    chromatic_number, clique_number, parse_graph, serialize_graph_with_comments, Caps, Graph,
};
use anticomplete::matching::{decompose_within, verify_decomposition_edges};
use anticomplete::params::{
    chi_parameters, mindeg_parameters, verify_chi_parameters, verify_mindeg_parameters,
};
use anticomplete::partition::{
    find_good_partition, verify_trial, CheckMode, PartitionSearch, PartitionVariant,
};
use anticomplete::pipeline::{
    find_pair, verify_bound_trace, verify_pair, BoundTrace, PairCertificate, PairMode, PairOutcome,
    PipelineConfig,
};
use anticomplete::rock::{find_rock_exact, find_rock_heuristic, verify_rock, RockCertificate};
use anticomplete::tournament::{
    dominating_set, greedy_acyclic_cover, parse_tournament, search_complete_pair,
    search_cyclic_triangle_pair, serialize_tournament_with_comments, tournament_chromatic_within,
    verify_tournament_pair, Tournament, TournamentPairCertificate,
};
use anticomplete::{Error, VertexSet, SCHEMA_VERSION};
use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "anticomplete",
    version,
    about = "Rocks, good partitions and anticomplete pairs"
)]
struct Cli {
    /// JSON file overriding the exact-solver caps.
    #[arg(long, global = true)]
    caps: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphInput {
    /// Edge-list file (`p edge n m` / `e u v`); standard input when absent or `-`.
    #[arg(long, short = 'g')]
    graph: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum RockSearch {
    Exact,
    Heuristic,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Chi,
    Mindeg,
}

#[derive(Clone, Copy, ValueEnum)]
enum BruteArg {
    Chi,
    Mindeg,
    ChiChi,
}

#[derive(Subcommand)]
enum Command {
    /// Find a p-rock.
    Rock {
        #[command(flatten)]
        input: GraphInput,
        #[arg(short, long)]
        p: u64,
        #[arg(long, value_enum, default_value = "exact")]
        search: RockSearch,
    },
    /// Split the edges of G[set] into q-matchings plus a covered residue.
    Decompose {
        #[command(flatten)]
        input: GraphInput,
        #[arg(short, long)]
        q: usize,
        /// Comma-separated 0-based vertices; the whole graph when absent.
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<usize>>,
    },
    /// Rock, decomposition and a good-partition search.
    Partition {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_enum)]
        variant: ModeArg,
        #[arg(short, long)]
        p: u64,
        #[arg(short, long)]
        q: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        max_tries: u64,
        /// Override the edge threshold (default: the pipeline's).
        #[arg(long)]
        threshold: Option<usize>,
        /// Check r random index sets instead of all of them.
        #[arg(long)]
        sampled: Option<usize>,
    },
    /// Run a pair pipeline; prints a certificate or a bound trace.
    FindPair {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(short, long, default_value_t = 1)]
        p: u64,
        #[arg(short, long, default_value_t = 2)]
        q: usize,
        /// Peeled-rock size cap (mindeg).
        #[arg(short, long, default_value_t = 8)]
        s: usize,
        #[arg(short, long)]
        c: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        max_tries: u64,
    },
    /// Exhaustive pair oracle for small graphs.
    Brute {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_enum)]
        mode: BruteArg,
        #[arg(short, long)]
        c: u64,
    },
    /// Recheck a certificate or trace against a graph or tournament.
    Verify {
        #[command(flatten)]
        input: GraphInput,
        /// Tournament file, for tournament pair certificates.
        #[arg(long, conflicts_with = "graph")]
        tournament: Option<PathBuf>,
        #[arg(long)]
        cert: PathBuf,
        /// Target to check against (default: the certificate's own).
        #[arg(short, long)]
        c: Option<u64>,
    },
    /// Exact constants for given t and c.
    Params {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(short, long)]
        t: u64,
        #[arg(short, long)]
        c: u64,
    },
    /// Tournament oracles and searches.
    Tournament {
        #[command(subcommand)]
        op: TournamentOp,
    },
    /// Write a generated graph or tournament.
    Generate {
        #[arg(value_enum)]
        family: FamilyArg,
        #[arg(short, long)]
        n: Option<usize>,
        #[arg(short, long)]
        k: Option<usize>,
        /// Edge probability (gnp).
        #[arg(long)]
        prob: Option<f64>,
        #[arg(short, long)]
        a: Option<usize>,
        #[arg(short, long)]
        b: Option<usize>,
        #[arg(long)]
        iterations: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the graph text instead of a JSON envelope.
        #[arg(long)]
        raw: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a campaign file, or audit a saved report with --audit.
    Campaign {
        file: PathBuf,
        #[arg(long)]
        audit: bool,
        /// Print the frontier as a text table instead of JSON.
        #[arg(long)]
        table: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Time the exact oracles on a graph or a built-in suite.
    Bench {
        #[arg(long, short = 'g')]
        graph: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        p: u64,
    },
}

#[derive(Subcommand)]
enum TournamentOp {
    Chi {
        #[arg(long, short = 't')]
        tournament: Option<PathBuf>,
    },
    Dom {
        #[arg(long, short = 't')]
        tournament: Option<PathBuf>,
    },
    Pair {
        #[arg(long, short = 't')]
        tournament: Option<PathBuf>,
        #[arg(short, long)]
        c: usize,
        /// Restrict A to cyclic triangles.
        #[arg(long)]
        triangle: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Mycielski,
    Kneser,
    Shift,
    Gnp,
    RandomTournament,
    Complete,
    CompleteBipartite,
}

enum Outcome {
    Found(Value),
    NotFound(Value),
    Failed(Value),
}

fn read_source(path: Option<&PathBuf>) -> anyhow::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
        }
        _ => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text)?;
            Ok(text)
        }
    }
}

fn load_graph(input: &GraphInput) -> anyhow::Result<Graph> {
    Ok(parse_graph(&read_source(input.graph.as_ref())?)?)
}

fn load_tournament(path: Option<&PathBuf>) -> anyhow::Result<Tournament> {
    Ok(parse_tournament(&read_source(path)?)?)
}

fn envelope(command: &str, body: Value) -> Value {
    let mut out = json!({ "schema_version": SCHEMA_VERSION, "command": command });
    if let (Value::Object(out), Value::Object(body)) = (&mut out, body) {
        out.extend(body);
    }
    out
}

fn audit_value(report: &AuditReport) -> Value {
    serde_json::to_value(report).expect("serializable")
}

fn rock_cmd(g: &Graph, p: u64, search: RockSearch, caps: &Caps) -> anyhow::Result<Outcome> {
    let rock = match search {
        RockSearch::Exact => find_rock_exact(g, p, caps)?,
        RockSearch::Heuristic => find_rock_heuristic(g, p)?,
    };
    Ok(match rock {
        Some(cert) => {
            let audit = verify_rock(g, &cert, caps);
            Outcome::Found(envelope(
                "rock",
                json!({ "found": true, "rock": cert, "audit": audit }),
            ))
        }
        None => Outcome::NotFound(envelope("rock", json!({ "found": false, "p": p }))),
    })
}

fn decompose_cmd(g: &Graph, q: usize, set: Option<Vec<usize>>) -> anyhow::Result<Outcome> {
    let n = g.vertex_count();
    let a = match set {
        Some(vs) => {
            if let Some(&bad) = vs.iter().find(|&&v| v >= n) {
                bail!("vertex {bad} out of range for {n} vertices");
            }
            VertexSet::from_indices(n, vs)
        }
        None => g.vertices(),
    };
    let d = decompose_within(g, &a, q)?;
    let audit = verify_decomposition_edges(n, &g.edges_within(&a), &d);
    Ok(Outcome::Found(envelope(
        "decompose",
        json!({ "decomposition": d, "n": d.n(), "audit": audit_value(&audit) }),
    )))
}

#[allow(clippy::too_many_arguments)]
fn partition_cmd(
    g: &Graph,
    variant: ModeArg,
    p: u64,
    q: usize,
    seed: u64,
    max_tries: u64,
    threshold: Option<usize>,
    sampled: Option<usize>,
    caps: &Caps,
) -> anyhow::Result<Outcome> {
    let rock = find_rock_exact(g, p, caps)?.ok_or(Error::NoRock { p })?;
    let a = &rock.set;
    let d = decompose_within(g, a, q)?;
    let (variant, default_threshold) = match variant {
        ModeArg::Chi => (PartitionVariant::Chi, g.edge_count_within(a).div_ceil(32)),
        ModeArg::Mindeg => (
            PartitionVariant::Mindeg,
            (p as usize * a.len()).div_ceil(32),
        ),
    };
    let search = PartitionSearch {
        variant,
        p,
        threshold: threshold.unwrap_or(default_threshold),
        seed,
        max_tries,
        check: sampled.map_or(CheckMode::Exhaustive, |r| CheckMode::Sampled { r }),
    };
    let outcome = find_good_partition(g, a, &d.cover, &search, caps)?;
    let audit = verify_trial(g, a, &d.cover, &search, outcome.family(), outcome.trial());
    let body = json!({
        "rock": rock,
        "cover": d.cover,
        "search": search,
        "result": outcome,
        "audit": audit,
    });
    Ok(if outcome.found() {
        Outcome::Found(envelope("partition", body))
    } else {
        Outcome::NotFound(envelope("partition", body))
    })
}

fn verify_cmd(
    input: &GraphInput,
    tournament: Option<&PathBuf>,
    cert_path: &PathBuf,
    c: Option<u64>,
    caps: &Caps,
) -> anyhow::Result<Outcome> {
    let text = std::fs::read_to_string(cert_path)
        .with_context(|| format!("reading {}", cert_path.display()))?;
    let value: Value = serde_json::from_str(&text).context("certificate is not JSON")?;
    // accept a bare document or a CLI envelope holding one
    let doc = ["certificate", "result", "rock"]
        .iter()
        .find_map(|k| value.get(k).filter(|v| v.is_object()).cloned())
        .filter(|_| value.get("command").is_some())
        .unwrap_or(value);

    let report = if doc.get("direction").is_some() {
        let t = load_tournament(tournament)?;
        let cert: TournamentPairCertificate = serde_json::from_value(doc)?;
        let mut report = verify_tournament_pair(&t, &cert, caps);
        if let Some(c) = c {
            report.check(
                "target",
                cert.c as u64 >= c,
                format!("required {c}"),
                || None,
            );
        }
        report
    } else {
        let g = load_graph(input)?;
        if doc.get("outcome").and_then(Value::as_str) == Some("found")
            || doc.get("a_witness").is_some()
        {
            let cert: PairCertificate = match serde_json::from_value::<PairOutcome>(doc.clone()) {
                Ok(PairOutcome::Found(cert)) => cert,
                _ => serde_json::from_value(doc)?,
            };
            verify_pair(&g, &cert, c.unwrap_or(cert.c), caps)
        } else if doc.get("outcome").and_then(Value::as_str) == Some("bound")
            || doc.get("failed_step").is_some()
        {
            let trace: BoundTrace = match serde_json::from_value::<PairOutcome>(doc.clone()) {
                Ok(PairOutcome::Bound(trace)) => trace,
                _ => serde_json::from_value(doc)?,
            };
            verify_bound_trace(&g, &trace)
        } else if doc.get("internal_edges").is_some() {
            let cert: RockCertificate = serde_json::from_value(doc)?;
            verify_rock(&g, &cert, caps)
        } else {
            bail!("unrecognised certificate document");
        }
    };
    let body = envelope(
        "verify",
        json!({ "passed": report.passed, "audit": report }),
    );
    Ok(if report.passed {
        Outcome::Found(body)
    } else {
        Outcome::Failed(body)
    })
}

fn params_cmd(mode: ModeArg, t: u64, c: u64) -> anyhow::Result<Outcome> {
    let body = match mode {
        ModeArg::Chi => {
            let params = chi_parameters(t, c)?;
            let audit = verify_chi_parameters(&params);
            json!({ "mode": "chi", "parameters": params, "audit": audit })
        }
        ModeArg::Mindeg => {
            let params = mindeg_parameters(t, c)?;
            let audit = verify_mindeg_parameters(&params);
            json!({ "mode": "mindeg", "parameters": params, "audit": audit })
        }
    };
    Ok(Outcome::Found(envelope("params", body)))
}

fn tournament_cmd(op: TournamentOp, caps: &Caps) -> anyhow::Result<Outcome> {
    match op {
        TournamentOp::Chi { tournament } => {
            let t = load_tournament(tournament.as_ref())?;
            match tournament_chromatic_within(&t, &t.vertices(), caps.tournament_chromatic) {
                Ok(cover) => Ok(Outcome::Found(envelope(
                    "tournament chi",
                    json!({ "chromatic_number": cover.count, "cover": cover }),
                ))),
                Err(e @ Error::ResourceLimit { .. }) => {
                    let greedy = greedy_acyclic_cover(&t);
                    Ok(Outcome::Failed(envelope(
                        "tournament chi",
                        json!({ "error": e.to_string(), "greedy_upper_bound": greedy.count, "cover": greedy }),
                    )))
                }
                Err(e) => Err(e.into()),
            }
        }
        TournamentOp::Dom { tournament } => {
            let t = load_tournament(tournament.as_ref())?;
            let set = dominating_set(&t, caps)?;
            Ok(Outcome::Found(envelope(
                "tournament dom",
                json!({ "domination_number": set.len(), "dominating_set": set }),
            )))
        }
        TournamentOp::Pair {
            tournament,
            c,
            triangle,
        } => {
            let t = load_tournament(tournament.as_ref())?;
            let found = if triangle {
                search_cyclic_triangle_pair(&t, c, caps)?
            } else {
                search_complete_pair(&t, c, caps)?
            };
            Ok(match found {
                Some(cert) => Outcome::Found(envelope(
                    "tournament pair",
                    json!({ "found": true, "certificate": cert }),
                )),
                None => Outcome::NotFound(envelope(
                    "tournament pair",
                    json!({ "found": false, "c": c }),
                )),
            })
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn generate_cmd(
    family: FamilyArg,
    n: Option<usize>,
    k: Option<usize>,
    prob: Option<f64>,
    a: Option<usize>,
    b: Option<usize>,
    iterations: Option<usize>,
    seed: u64,
) -> anyhow::Result<(Family, String)> {
    let need = |v: Option<usize>, name: &str| v.ok_or_else(|| anyhow!("--{name} is required"));
    let family = match family {
        FamilyArg::Mycielski => Family::Mycielski {
            iterations: need(iterations, "iterations")?,
        },
        FamilyArg::Kneser => Family::Kneser {
            n: need(n, "n")?,
            k: need(k, "k")?,
        },
        FamilyArg::Shift => Family::Shift { n: need(n, "n")? },
        FamilyArg::Gnp => Family::Gnp {
            n: need(n, "n")?,
            p: prob.ok_or_else(|| anyhow!("--prob is required"))?,
        },
        FamilyArg::RandomTournament => Family::RandomTournament { n: need(n, "n")? },
        FamilyArg::Complete => Family::Complete { n: need(n, "n")? },
        FamilyArg::CompleteBipartite => Family::CompleteBipartite {
            a: need(a, "a")?,
            b: need(b, "b")?,
        },
    };
    let comments = [family.describe(seed)];
    let text = match family.generate(seed)? {
        Generated::Graph(g) => serialize_graph_with_comments(&g, &comments),
        Generated::Tournament(t) => serialize_tournament_with_comments(&t, &comments),
    };
    Ok((family, text))
}

fn frontier_table(report: &CampaignReport) -> String {
    let mut out = format!(
        "{:>4} {:>4} {:>8} {:>9} {:>9}  witness\n",
        "t", "c", "value", "eligible", "pair-free"
    );
    for row in &report.frontier.rows {
        let value = row.value.map_or("-".to_string(), |v| v.to_string());
        out.push_str(&format!(
            "{:>4} {:>4} {:>8} {:>9} {:>9}  {}\n",
            row.t,
            row.c,
            value,
            row.eligible,
            row.pair_free,
            row.witness.as_deref().unwrap_or("-")
        ));
    }
    out
}

fn bench_cmd(graph: Option<&PathBuf>, p: u64, caps: &Caps) -> anyhow::Result<Outcome> {
    let suite: Vec<(String, Graph)> = match graph {
        Some(path) => vec![(
            path.display().to_string(),
            parse_graph(&read_source(Some(path))?)?,
        )],
        None => [10usize, 14, 18, 22]
            .iter()
            .map(|&n| {
                (
                    format!("gnp n={n} p=0.4 seed=1"),
                    anticomplete::generate::gnp(n, 0.4, 1),
                )
            })
            .collect(),
    };
    let mut rows = Vec::new();
    for (name, g) in suite {
        let time = |f: &dyn Fn() -> Value| {
            let start = Instant::now();
            let value = f();
            json!({ "value": value, "millis": start.elapsed().as_secs_f64() * 1e3 })
        };
        let err = |e: Error| json!({ "error": e.to_string() });
        rows.push(json!({
            "instance": name,
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
            "clique_number": time(&|| clique_number(&g, caps).map_or_else(err, |v| json!(v))),
            "chromatic_number": time(&|| chromatic_number(&g, caps).map_or_else(err, |v| json!(v))),
            "rock": time(&|| find_rock_exact(&g, p, caps).map_or_else(err, |r| json!(r.map(|r| r.size())))),
            // no external-degree bound is known for inclusion-minimal rocks; report it
            "heuristic_rock": time(&|| find_rock_heuristic(&g, p).map_or_else(err, |r| json!(r.map(|r| json!({
                "size": r.size(),
                "max_external_degree": r.max_external_degree,
                "exact_bound": 2 * p + 1,
            }))))),
            "brute_force_pair": time(&|| brute_force_pair(&g, 2, BruteMode::ChiChi, caps)
                .map_or_else(err, |r| json!(r.is_some()))),
        }));
    }
    Ok(Outcome::Found(envelope(
        "bench",
        json!({ "p": p, "instances": rows }),
    )))
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let caps: Caps = match &cli.caps {
        Some(path) => serde_json::from_str(&std::fs::read_to_string(path)?).context("caps file")?,
        None => Caps::default(),
    };
    match cli.command {
        Command::Rock { input, p, search } => rock_cmd(&load_graph(&input)?, p, search, &caps),
        Command::Decompose { input, q, set } => decompose_cmd(&load_graph(&input)?, q, set),
        Command::Partition {
            input,
            variant,
            p,
            q,
            seed,
            max_tries,
            threshold,
            sampled,
        } => partition_cmd(
            &load_graph(&input)?,
            variant,
            p,
            q,
            seed,
            max_tries,
            threshold,
            sampled,
            &caps,
        ),
        Command::FindPair {
            input,
            mode,
            p,
            q,
            s,
            c,
            seed,
            max_tries,
        } => {
            let g = load_graph(&input)?;
            let config = PipelineConfig {
                p,
                q,
                s,
                c,
                seed,
                max_tries,
                check: CheckMode::Exhaustive,
            };
            let mode = match mode {
                ModeArg::Chi => PairMode::Chi,
                ModeArg::Mindeg => PairMode::Mindeg,
            };
            let outcome = find_pair(&g, mode, &config, &caps)?;
            let found = outcome.certificate().is_some();
            let body = envelope("find-pair", json!({ "result": outcome }));
            Ok(if found {
                Outcome::Found(body)
            } else {
                Outcome::NotFound(body)
            })
        }
        Command::Brute { input, mode, c } => {
            let g = load_graph(&input)?;
            let mode = match mode {
                BruteArg::Chi => BruteMode::Chi,
                BruteArg::Mindeg => BruteMode::Mindeg,
                BruteArg::ChiChi => BruteMode::ChiChi,
            };
            Ok(match brute_force_pair(&g, c, mode, &caps)? {
                Some((a, b)) => {
                    Outcome::Found(envelope("brute", json!({ "found": true, "a": a, "b": b })))
                }
                None => Outcome::NotFound(envelope("brute", json!({ "found": false }))),
            })
        }
        Command::Verify {
            input,
            tournament,
            cert,
            c,
        } => verify_cmd(&input, tournament.as_ref(), &cert, c, &caps),
        Command::Params { mode, t, c } => params_cmd(mode, t, c),
        Command::Tournament { op } => tournament_cmd(op, &caps),
        Command::Generate {
            family,
            n,
            k,
            prob,
            a,
            b,
            iterations,
            seed,
            raw,
            output,
        } => {
            let (family, text) = generate_cmd(family, n, k, prob, a, b, iterations, seed)?;
            if let Some(path) = &output {
                std::fs::write(path, &text)?;
            }
            if raw {
                write_stdout(&text);
                return Ok(Outcome::Found(Value::Null));
            }
            Ok(Outcome::Found(envelope(
                "generate",
                json!({ "generator": family, "seed": seed, "text": text }),
            )))
        }
        Command::Campaign {
            file,
            audit,
            table,
            output,
        } => {
            let text = std::fs::read_to_string(&file)
                .with_context(|| format!("reading {}", file.display()))?;
            if audit {
                let (_, report) = CampaignReport::load(&text)?;
                let body = envelope(
                    "campaign audit",
                    json!({ "passed": report.passed, "audit": report }),
                );
                return Ok(if report.passed {
                    Outcome::Found(body)
                } else {
                    Outcome::Failed(body)
                });
            }
            let campaign = Campaign::from_toml(&text)?;
            let report = run_campaign(&campaign)?;
            let json_text = report.to_json();
            if let Some(path) = output.or_else(|| campaign.output.as_ref().map(PathBuf::from)) {
                std::fs::write(&path, &json_text)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if table {
                write_stdout(&frontier_table(&report));
            } else {
                write_stdout(&json_text);
            }
            Ok(Outcome::Found(Value::Null))
        }
        Command::Bench { graph, p } => bench_cmd(graph.as_ref(), p, &caps),
    }
}

fn write_stdout(text: &str) {
    use std::io::Write;
    // a closed pipe downstream is not an error worth a panic
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(value: &Value) {
    if !value.is_null() {
        write_stdout(&format!(
            "{}\n",
            serde_json::to_string_pretty(value).expect("serializable")
        ));
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Found(v)) => {
            emit(&v);
            ExitCode::SUCCESS
        }
        Ok(Outcome::NotFound(v)) => {
            emit(&v);
            ExitCode::from(1)
        }
        Ok(Outcome::Failed(v)) => {
            emit(&v);
            ExitCode::from(2)
        }
        Err(e) => {
            let body = json!({ "schema_version": SCHEMA_VERSION, "error": format!("{e:#}") });
            eprintln!(
                "{}",
                serde_json::to_string_pretty(&body).expect("serializable")
            );
            ExitCode::from(2)
        }
    }
}
