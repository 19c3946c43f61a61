//! Graph families used by the tests and experiment campaigns: complete and
//! complete bipartite graphs, Mycielski iterates, Kneser and shift graphs,
//! and seeded G(n, p).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tournament::Tournament;
use crate::vertex_set::Combinations;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges).expect("simple")
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
    Graph::from_edges(a + b, edges).expect("simple")
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("simple")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least three vertices");
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("simple")
}

pub fn petersen() -> Graph {
    kneser(5, 2).expect("valid")
}

/// Disjoint union, with `h` relabelled after `g`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let offset = g.vertex_count();
    let edges = g
        .edges()
        .into_iter()
        .chain(h.edges().into_iter().map(|(u, v)| (u + offset, v + offset)));
    Graph::from_edges(offset + h.vertex_count(), edges).expect("simple")
}

/// The Mycielskian: χ goes up by one and triangle-freeness is kept.
pub fn mycielski(g: &Graph) -> Graph {
    let n = g.vertex_count();
    let hub = 2 * n;
    let mut edges = g.edges();
    for (u, v) in g.edges() {
        edges.push((u, v + n));
        edges.push((v, u + n));
    }
    edges.extend((0..n).map(|i| (i + n, hub)));
    Graph::from_edges(2 * n + 1, edges).expect("simple")
}

/// `iterations` Mycielski steps starting from `K_2`.
pub fn mycielski_iterated(iterations: usize) -> Graph {
    (0..iterations).fold(complete(2), |g, _| mycielski(&g))
}

/// Kneser graph K(n, k): `k`-subsets of `0..n`, adjacent when disjoint.
pub fn kneser(n: usize, k: usize) -> Result<Graph> {
    if k == 0 || 2 * k > n {
        return Err(Error::InvalidParameter(format!(
            "kneser({n}, {k}) needs 1 <= k <= n/2"
        )));
    }
    let subsets: Vec<u64> = Combinations::new(n, k)
        .map(|c| c.iter().fold(0u64, |m, &i| m | 1 << i))
        .collect();
    if subsets.len() > 4096 {
        return Err(Error::InvalidParameter(format!(
            "kneser({n}, {k}) has {} vertices",
            subsets.len()
        )));
    }
    let mut edges = Vec::new();
    for (i, &a) in subsets.iter().enumerate() {
        for (j, &b) in subsets.iter().enumerate().skip(i + 1) {
            if a & b == 0 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(subsets.len(), edges)
}

/// Shift graph on pairs `(i, j)`, `i < j < n`, with `(i, j) ~ (j, l)`.
/// Triangle-free with χ = ⌈log2 n⌉.
pub fn shift(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidParameter("shift graph needs n >= 2".into()));
    }
    let pairs: Vec<(usize, usize)> = Combinations::new(n, 2).map(|c| (c[0], c[1])).collect();
    let index = |i: usize, j: usize| pairs.binary_search(&(i, j)).expect("pair present");
    let mut edges = Vec::new();
    for &(i, j) in &pairs {
        for l in j + 1..n {
            edges.push((index(i, j), index(j, l)));
        }
    }
    Graph::from_edges(pairs.len(), edges)
}

/// Erdős–Rényi G(n, p), deterministic in `seed`. Edges are drawn in
/// lexicographic order.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("simple")
}

/// Named families, as used on the command line and in campaign files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    Mycielski { iterations: usize },
    Kneser { n: usize, k: usize },
    Shift { n: usize },
    Gnp { n: usize, p: f64 },
    RandomTournament { n: usize },
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
}

#[derive(Debug, Clone)]
pub enum Generated {
    Graph(Graph),
    Tournament(Tournament),
}

impl Family {
    pub fn generate(&self, seed: u64) -> Result<Generated> {
        Ok(match *self {
            Family::Mycielski { iterations } => {
                if iterations > 6 {
                    return Err(Error::InvalidParameter(
                        "mycielski iterations above 6 exceed 1000 vertices".into(),
                    ));
                }
                Generated::Graph(mycielski_iterated(iterations))
            }
            Family::Kneser { n, k } => Generated::Graph(kneser(n, k)?),
            Family::Shift { n } => Generated::Graph(shift(n)?),
            Family::Gnp { n, p } => {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::InvalidParameter(format!("edge probability {p}")));
                }
                Generated::Graph(gnp(n, p, seed))
            }
            Family::RandomTournament { n } => Generated::Tournament(Tournament::random(n, seed)),
            Family::Complete { n } => Generated::Graph(complete(n)),
            Family::CompleteBipartite { a, b } => Generated::Graph(complete_bipartite(a, b)),
        })
    }

    /// One-line description embedded as a comment in generated files.
    pub fn describe(&self, seed: u64) -> String {
        let body = serde_json::to_string(self).expect("serializable");
        format!("generator {body} seed {seed}")
    }
}
