//! Simple undirected graphs over dense vertex indices, plus the basic
//! measures every other module is phrased in: denseness, d-cores and
//! anticompleteness.

mod exact;
mod io;

pub(crate) use exact::check_cap as exact_cap;
pub use exact::{
    biclique_number, chromatic_number, chromatic_number_within, clique_number,
    clique_number_within, greedy_chromatic_bound, greedy_coloring_within, is_k_colorable_within,
    is_proper_coloring, Caps, Coloring,
};
pub use io::{parse_graph, serialize_graph, serialize_graph_with_comments};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Exact edges-per-vertex ratios.
pub type Rational = Ratio<u64>;

/// An edge `(u, v)` with `u < v`.
pub type Edge = (usize, usize);

/// Immutable simple undirected graph with bitset adjacency.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<VertexSet>,
    edge_count: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.vertex_count())
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![VertexSet::empty(n); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from 0-based edges. Rejects self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I: IntoIterator<Item = Edge>>(n: usize, edges: I) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge {u}-{v} out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at {u}")));
            }
            if g.adjacency[u].contains(v) {
                return Err(Error::InvalidParameter(format!("duplicate edge {u}-{v}")));
            }
            g.adjacency[u].insert(v);
            g.adjacency[v].insert(u);
            g.edge_count += 1;
        }
        Ok(g)
    }

    /// Like [`Graph::from_edges`] but silently ignores duplicates and loops.
    pub fn from_edges_lenient<I: IntoIterator<Item = Edge>>(n: usize, edges: I) -> Self {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u != v && !g.adjacency[u].contains(v) {
                g.adjacency[u].insert(v);
                g.adjacency[v].insert(u);
                g.edge_count += 1;
            }
        }
        g
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::empty(self.vertex_count())
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.vertex_count() {
            for v in self.adjacency[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Edges with both ends in `a`, lexicographic.
    pub fn edges_within(&self, a: &VertexSet) -> Vec<Edge> {
        let mut out = Vec::new();
        for u in a {
            for v in self.adjacency[u].iter().filter(|&v| v > u && a.contains(v)) {
                out.push((u, v));
            }
        }
        out
    }

    /// `|E(G[a])|`.
    pub fn edge_count_within(&self, a: &VertexSet) -> usize {
        a.iter()
            .map(|v| self.adjacency[v].intersection_len(a))
            .sum::<usize>()
            / 2
    }

    pub fn degree_within(&self, v: usize, a: &VertexSet) -> usize {
        self.adjacency[v].intersection_len(a)
    }

    /// Vertices with at least one neighbour in `a` (may include members of `a`).
    pub fn neighborhood(&self, a: &VertexSet) -> VertexSet {
        let mut out = self.empty_set();
        for v in a {
            out.union_with(&self.adjacency[v]);
        }
        out
    }

    /// Vertices outside `a` with no neighbour in `a`.
    pub fn anticomplete_region(&self, a: &VertexSet) -> VertexSet {
        let mut out = self.neighborhood(a);
        out.union_with(a);
        out.complement()
    }

    /// The same vertex universe with every edge incident to `removed` deleted.
    pub fn without_vertices(&self, removed: &VertexSet) -> Graph {
        let keep = removed.complement();
        let mut adjacency = Vec::with_capacity(self.vertex_count());
        for v in 0..self.vertex_count() {
            if removed.contains(v) {
                adjacency.push(self.empty_set());
            } else {
                adjacency.push(self.adjacency[v].intersection(&keep));
            }
        }
        let edge_count = adjacency.iter().map(|s| s.len()).sum::<usize>() / 2;
        Graph {
            adjacency,
            edge_count,
        }
    }

    /// `G[a]` relabelled to `0..|a|`, with the local-to-global index map.
    pub fn induced(&self, a: &VertexSet) -> (Graph, Vec<usize>) {
        let map = a.to_vec();
        let mut local = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in map.iter().enumerate() {
            local[v] = i;
        }
        let mut g = Graph::empty(map.len());
        for (i, &v) in map.iter().enumerate() {
            for w in self.adjacency[v].iter().filter(|&w| w > v && a.contains(w)) {
                let j = local[w];
                g.adjacency[i].insert(j);
                g.adjacency[j].insert(i);
                g.edge_count += 1;
            }
        }
        (g, map)
    }

    /// Adjacency of `G[a]` as 64-bit masks over local indices.
    /// Returns `None` when `|a| > 64`.
    pub fn local_masks(&self, a: &VertexSet) -> Option<(Vec<usize>, Vec<u64>)> {
        let map = a.to_vec();
        if map.len() > 64 {
            return None;
        }
        let mut local = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in map.iter().enumerate() {
            local[v] = i;
        }
        let adj = map
            .iter()
            .map(|&v| {
                self.adjacency[v]
                    .iter()
                    .filter(|&w| a.contains(w))
                    .fold(0u64, |m, w| m | 1 << local[w])
            })
            .collect();
        Some((map, adj))
    }
}

/// `|E(G[a])| / |a|`, exactly; zero for the empty set.
pub fn denseness(g: &Graph, a: &VertexSet) -> Rational {
    let size = a.len();
    if size == 0 {
        Rational::from_integer(0)
    } else {
        Rational::new(g.edge_count_within(a) as u64, size as u64)
    }
}

/// One step of the core peeling: the vertex removed and its degree at that moment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelStep {
    pub vertex: usize,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorePeeling {
    pub core: VertexSet,
    pub peeled: Vec<PeelStep>,
}

/// Largest subset of `within` whose induced subgraph has minimum degree at
/// least `d`, with the order in which vertices were peeled.
pub fn core_peeling_within(g: &Graph, within: &VertexSet, d: usize) -> CorePeeling {
    let mut alive = within.clone();
    let mut degree = vec![0usize; g.vertex_count()];
    let mut queue = Vec::new();
    let mut queued = g.empty_set();
    for v in within {
        degree[v] = g.degree_within(v, within);
        if degree[v] < d {
            queue.push(v);
            queued.insert(v);
        }
    }
    let mut peeled = Vec::new();
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        peeled.push(PeelStep {
            vertex: v,
            degree: degree[v],
        });
        alive.remove(v);
        for w in g.neighbors(v).intersection(&alive).iter() {
            degree[w] -= 1;
            if degree[w] < d && !queued.contains(w) {
                queued.insert(w);
                queue.push(w);
            }
        }
    }
    CorePeeling {
        core: alive,
        peeled,
    }
}

/// The `d`-core of `g` (possibly empty).
pub fn min_degree_core(g: &Graph, d: usize) -> VertexSet {
    core_peeling_within(g, &g.vertices(), d).core
}

/// Minimum degree of `G[a]`; zero for the empty set.
pub fn min_degree_within(g: &Graph, a: &VertexSet) -> usize {
    a.iter().map(|v| g.degree_within(v, a)).min().unwrap_or(0)
}

pub fn are_anticomplete(g: &Graph, a: &VertexSet, b: &VertexSet) -> bool {
    a.is_disjoint(b) && a.iter().all(|v| g.neighbors(v).is_disjoint(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    fn set(n: usize, v: &[usize]) -> VertexSet {
        VertexSet::from_indices(n, v.iter().copied())
    }

    #[test]
    fn denseness_examples() {
        let k4 = generate::complete(4);
        assert_eq!(denseness(&k4, &k4.vertices()), Rational::new(3, 2));
        assert_eq!(denseness(&k4, &k4.empty_set()), Rational::from_integer(0));
        let c5 = generate::cycle(5);
        assert_eq!(denseness(&c5, &c5.vertices()), Rational::from_integer(1));
    }

    #[test]
    fn core_examples() {
        let c5 = generate::cycle(5);
        assert_eq!(min_degree_core(&c5, 2).len(), 5);
        let star = generate::complete_bipartite(1, 5);
        assert!(min_degree_core(&star, 2).is_empty());
        // triangle 0,1,2 plus pendant 3 hanging off 2
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let peel = core_peeling_within(&g, &g.vertices(), 2);
        assert_eq!(peel.core, set(4, &[0, 1, 2]));
        assert_eq!(
            peel.peeled,
            vec![PeelStep {
                vertex: 3,
                degree: 1
            }]
        );
    }

    #[test]
    fn anticomplete_examples() {
        let g = Graph::from_edges(5, [(0, 1), (2, 3), (3, 4)]).unwrap();
        assert!(are_anticomplete(&g, &set(5, &[0, 1]), &set(5, &[2, 3, 4])));
        assert!(!are_anticomplete(&g, &set(5, &[0, 1]), &set(5, &[1, 2])));
        let path = generate::path(3);
        assert!(are_anticomplete(&path, &set(3, &[0]), &set(3, &[2])));
        assert!(!are_anticomplete(&path, &set(3, &[0]), &set(3, &[1])));
    }

    #[test]
    fn induced_and_removal() {
        let k4 = generate::complete(4);
        let (h, map) = k4.induced(&set(4, &[1, 3]));
        assert_eq!(h.edge_count(), 1);
        assert_eq!(map, vec![1, 3]);
        let r = k4.without_vertices(&set(4, &[0]));
        assert_eq!(r.edge_count(), 3);
        assert_eq!(r.degree(0), 0);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::from_edges(3, [(0, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }
}
