//! Exact invariant oracles on small graphs: clique number, chromatic number
//! and biclique number. All searches run on 64-bit adjacency masks, so every
//! cap is additionally bounded by 64.

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Size limits for the exponential searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Caps {
    pub chromatic: usize,
    pub clique: usize,
    pub biclique: usize,
    pub rock: usize,
    pub brute_force_pair: usize,
    pub tournament_chromatic: usize,
    pub tournament_domination: usize,
    pub tournament_pair: usize,
    /// Largest index family `C(k, k/2)` that may be checked exhaustively.
    pub partition_family: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            chromatic: 40,
            clique: 40,
            biclique: 30,
            rock: 40,
            brute_force_pair: 14,
            tournament_chromatic: 16,
            tournament_domination: 24,
            tournament_pair: 14,
            partition_family: 1_000_000,
        }
    }
}

pub(crate) fn check_cap(what: &'static str, size: usize, cap: usize) -> Result<()> {
    let cap = cap.min(64);
    if size > cap {
        Err(Error::ResourceLimit { what, size, cap })
    } else {
        Ok(())
    }
}

#[inline]
fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A proper coloring of some vertex subset: `colors[i]` is the color of
/// `vertices[i]`, colors are `0..count`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub count: usize,
    pub vertices: Vec<usize>,
    pub colors: Vec<usize>,
}

impl Coloring {
    fn from_local(map: &[usize], local: &[usize]) -> Self {
        let count = local.iter().map(|&c| c + 1).max().unwrap_or(0);
        Coloring {
            count,
            vertices: map.to_vec(),
            colors: local.to_vec(),
        }
    }
}

/// Returns the first monochromatic edge, or an error string for malformed
/// colorings. `Ok(())` means proper.
pub fn is_proper_coloring(g: &Graph, coloring: &Coloring) -> std::result::Result<(), String> {
    if coloring.vertices.len() != coloring.colors.len() {
        return Err("vertex and color lists differ in length".into());
    }
    let mut color_of = vec![None; g.vertex_count()];
    for (&v, &c) in coloring.vertices.iter().zip(&coloring.colors) {
        if v >= g.vertex_count() {
            return Err(format!("vertex {v} out of range"));
        }
        if c >= coloring.count {
            return Err(format!(
                "vertex {v} has color {c} >= count {}",
                coloring.count
            ));
        }
        if color_of[v].replace(c).is_some() {
            return Err(format!("vertex {v} colored twice"));
        }
    }
    for (u, v) in g.edges() {
        if let (Some(a), Some(b)) = (color_of[u], color_of[v]) {
            if a == b {
                return Err(format!("edge {u}-{v} is monochromatic (color {a})"));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Clique number

fn color_sort(adj: &[u64], p: u64, order: &mut Vec<usize>, bounds: &mut Vec<usize>) {
    order.clear();
    bounds.clear();
    let mut uncolored = p;
    let mut color = 0;
    while uncolored != 0 {
        color += 1;
        let mut q = uncolored;
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            q &= !(1u64 << v) & !adj[v];
            uncolored &= !(1u64 << v);
            order.push(v);
            bounds.push(color);
        }
    }
}

fn expand_clique(adj: &[u64], current: u64, size: usize, mut p: u64, best: &mut (usize, u64)) {
    let mut order = Vec::new();
    let mut bounds = Vec::new();
    color_sort(adj, p, &mut order, &mut bounds);
    for i in (0..order.len()).rev() {
        if size + bounds[i] <= best.0 {
            return;
        }
        let v = order[i];
        let next = p & adj[v];
        let with_v = current | 1 << v;
        if next == 0 {
            if size + 1 > best.0 {
                *best = (size + 1, with_v);
            }
        } else {
            expand_clique(adj, with_v, size + 1, next, best);
        }
        p &= !(1u64 << v);
    }
}

fn max_clique_masks(adj: &[u64]) -> u64 {
    let mut best = (0usize, 0u64);
    expand_clique(adj, 0, 0, full_mask(adj.len()), &mut best);
    best.1
}

/// A maximum clique of `G[within]`.
pub fn clique_number_within(g: &Graph, within: &VertexSet, cap: usize) -> Result<VertexSet> {
    check_cap("clique number", within.len(), cap)?;
    let (map, adj) = g.local_masks(within).expect("capped at 64");
    let best = max_clique_masks(&adj);
    Ok(VertexSet::from_indices(
        g.vertex_count(),
        (0..map.len())
            .filter(|&i| best >> i & 1 == 1)
            .map(|i| map[i]),
    ))
}

/// ω(g); zero for the null graph.
pub fn clique_number(g: &Graph, caps: &Caps) -> Result<usize> {
    Ok(clique_number_within(g, &g.vertices(), caps.clique)?.len())
}

// ---------------------------------------------------------------------------
// Chromatic number

struct ColorSearch<'a> {
    adj: &'a [u64],
    colors: Vec<usize>,
    uncolored: u64,
    // count[v * 64 + c]: neighbours of v holding color c
    count: Vec<u32>,
    saturation: Vec<u64>,
    best: usize,
    best_colors: Option<Vec<usize>>,
    stop_at: usize,
    done: bool,
}

const UNCOLORED: usize = usize::MAX;

impl<'a> ColorSearch<'a> {
    fn new(adj: &'a [u64], upper_exclusive: usize, stop_at: usize) -> Self {
        let n = adj.len();
        ColorSearch {
            adj,
            colors: vec![UNCOLORED; n],
            uncolored: full_mask(n),
            count: vec![0; n * 64],
            saturation: vec![0; n],
            best: upper_exclusive,
            best_colors: None,
            stop_at,
            done: false,
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colors[v] = c;
        self.uncolored &= !(1u64 << v);
        let mut nb = self.adj[v];
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            self.count[w * 64 + c] += 1;
            self.saturation[w] |= 1 << c;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.colors[v];
        self.colors[v] = UNCOLORED;
        self.uncolored |= 1 << v;
        let mut nb = self.adj[v];
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            self.count[w * 64 + c] -= 1;
            if self.count[w * 64 + c] == 0 {
                self.saturation[w] &= !(1u64 << c);
            }
        }
    }

    /// DSATUR choice: most distinct neighbour colors, then most uncolored neighbours.
    fn pick(&self) -> usize {
        let mut best = (0u32, 0u32, usize::MAX);
        let mut rest = self.uncolored;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let key = (
                self.saturation[v].count_ones(),
                (self.adj[v] & self.uncolored).count_ones(),
            );
            if best.2 == usize::MAX || key > (best.0, best.1) {
                best = (key.0, key.1, v);
            }
        }
        best.2
    }

    fn dfs(&mut self, used: usize) {
        if used >= self.best {
            return;
        }
        if self.uncolored == 0 {
            self.best = used;
            self.best_colors = Some(self.colors.clone());
            if used <= self.stop_at {
                self.done = true;
            }
            return;
        }
        let v = self.pick();
        for c in 0..=used.min(63) {
            if used.max(c + 1) >= self.best {
                break;
            }
            if self.saturation[v] >> c & 1 == 1 {
                continue;
            }
            self.assign(v, c);
            self.dfs(used.max(c + 1));
            self.unassign(v);
            if self.done {
                return;
            }
        }
    }
}

fn greedy_dsatur_masks(adj: &[u64]) -> Vec<usize> {
    let mut search = ColorSearch::new(adj, usize::MAX, 0);
    while search.uncolored != 0 {
        let v = search.pick();
        let c = (!search.saturation[v]).trailing_zeros() as usize;
        search.assign(v, c);
    }
    search.colors
}

/// Exact χ(G[within]) with an optimal coloring (global vertex indices).
pub fn chromatic_number_within(g: &Graph, within: &VertexSet, cap: usize) -> Result<Coloring> {
    check_cap("chromatic number", within.len(), cap)?;
    let (map, adj) = g.local_masks(within).expect("capped at 64");
    if map.is_empty() {
        return Ok(Coloring::from_local(&map, &[]));
    }
    let greedy = greedy_dsatur_masks(&adj);
    let upper = greedy.iter().max().map_or(0, |&c| c + 1);
    let lower = max_clique_masks(&adj).count_ones() as usize;
    if lower == upper {
        return Ok(Coloring::from_local(&map, &greedy));
    }
    let mut search = ColorSearch::new(&adj, upper, lower);
    search.dfs(0);
    let colors = search.best_colors.unwrap_or(greedy);
    Ok(Coloring::from_local(&map, &colors))
}

/// χ(g) for the whole graph.
pub fn chromatic_number(g: &Graph, caps: &Caps) -> Result<usize> {
    Ok(chromatic_number_within(g, &g.vertices(), caps.chromatic)?.count)
}

/// A coloring of `G[within]` with at most `k` colors, or `None` if none exists.
pub fn is_k_colorable_within(
    g: &Graph,
    within: &VertexSet,
    k: usize,
    cap: usize,
) -> Result<Option<Coloring>> {
    check_cap("chromatic number", within.len(), cap)?;
    let (map, adj) = g.local_masks(within).expect("capped at 64");
    if map.is_empty() {
        return Ok(Some(Coloring::from_local(&map, &[])));
    }
    if k == 0 {
        return Ok(None);
    }
    let greedy = greedy_dsatur_masks(&adj);
    if greedy.iter().max().map_or(0, |&c| c + 1) <= k {
        return Ok(Some(Coloring::from_local(&map, &greedy)));
    }
    if max_clique_masks(&adj).count_ones() as usize > k {
        return Ok(None);
    }
    let mut search = ColorSearch::new(&adj, k + 1, k);
    search.dfs(0);
    Ok(search
        .best_colors
        .map(|colors| Coloring::from_local(&map, &colors)))
}

/// First-fit coloring in the given vertex order; returns the number of colors.
/// Vertices not listed are ignored.
pub fn greedy_chromatic_bound(g: &Graph, order: &[usize]) -> usize {
    let mut color = vec![usize::MAX; g.vertex_count()];
    let mut used = 0;
    for &v in order {
        let taken: Vec<usize> = g
            .neighbors(v)
            .iter()
            .map(|w| color[w])
            .filter(|&c| c != usize::MAX)
            .collect();
        let mut c = 0;
        while taken.contains(&c) {
            c += 1;
        }
        color[v] = c;
        used = used.max(c + 1);
    }
    used
}

/// DSATUR greedy coloring of `G[within]`; total, any size.
pub fn greedy_coloring_within(g: &Graph, within: &VertexSet) -> Coloring {
    let vertices = within.to_vec();
    let mut color = vec![usize::MAX; g.vertex_count()];
    let mut saturation: Vec<Vec<bool>> = vec![Vec::new(); g.vertex_count()];
    let mut uncolored = within.clone();
    let mut count = 0;
    while let Some(v) = uncolored.iter().max_by_key(|&v| {
        let sat = saturation[v].iter().filter(|&&b| b).count();
        (
            sat,
            g.neighbors(v).intersection_len(&uncolored),
            std::cmp::Reverse(v),
        )
    }) {
        let c = (0..)
            .find(|&c| !saturation[v].get(c).copied().unwrap_or(false))
            .unwrap();
        color[v] = c;
        count = count.max(c + 1);
        uncolored.remove(v);
        for w in g.neighbors(v).intersection(within).iter() {
            if saturation[w].len() <= c {
                saturation[w].resize(c + 1, false);
            }
            saturation[w][c] = true;
        }
    }
    Coloring {
        count,
        colors: vertices.iter().map(|&v| color[v]).collect(),
        vertices,
    }
}

// ---------------------------------------------------------------------------
// Biclique number

fn has_biclique(adj: &[u64], t: usize, start: usize, chosen: usize, common: u64) -> bool {
    if chosen == t {
        return common.count_ones() as usize >= t;
    }
    let n = adj.len();
    for v in start..n {
        if n - v < t - chosen {
            break;
        }
        let next = common & adj[v];
        if next.count_ones() as usize >= t && has_biclique(adj, t, v + 1, chosen + 1, next) {
            return true;
        }
    }
    false
}

/// τ(g): largest `t` such that `K_{t,t}` is a (not necessarily induced)
/// subgraph; zero for edgeless graphs.
pub fn biclique_number(g: &Graph, caps: &Caps) -> Result<usize> {
    check_cap("biclique number", g.vertex_count(), caps.biclique)?;
    let (_, adj) = g.local_masks(&g.vertices()).expect("capped at 64");
    let full = full_mask(adj.len());
    let mut t = 0;
    while has_biclique(&adj, t + 1, 0, 0, full) {
        t += 1;
    }
    Ok(t)
}
