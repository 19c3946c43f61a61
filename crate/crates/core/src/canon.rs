//! Canonical labelling of small directed 0/1 matrices by colour refinement
//! and individualisation, and isomorphism-free enumeration of graphs and
//! tournaments by one-vertex extension.

use std::collections::BTreeSet;

use crate::graph::Graph;
use crate::tournament::Tournament;
use crate::vertex_set::VertexSet;

/// Largest order the enumerators accept.
pub const MAX_ORDER: usize = 10;

/// Rows of the relabelled adjacency matrix; equal iff the inputs are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub n: usize,
    pub rows: Vec<u64>,
}

fn rank(signatures: &[Vec<usize>]) -> Vec<usize> {
    let distinct: BTreeSet<&Vec<usize>> = signatures.iter().collect();
    let order: Vec<&Vec<usize>> = distinct.into_iter().collect();
    signatures
        .iter()
        .map(|s| order.binary_search(&s).expect("present"))
        .collect()
}

fn cell_count(colors: &[usize]) -> usize {
    colors.iter().copied().max().map_or(0, |m| m + 1)
}

/// Equitable refinement. Each round sorts vertices by their colour and then
/// by the colour multisets of their out- and in-neighbours, so the result is
/// invariant under relabelling.
fn refine(rows: &[u64], mut colors: Vec<usize>) -> Vec<usize> {
    let n = rows.len();
    loop {
        let before = cell_count(&colors);
        let signatures: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let mut out: Vec<usize> = (0..n)
                    .filter(|&w| rows[v] >> w & 1 == 1)
                    .map(|w| colors[w])
                    .collect();
                let mut inn: Vec<usize> = (0..n)
                    .filter(|&w| rows[w] >> v & 1 == 1)
                    .map(|w| colors[w])
                    .collect();
                out.sort_unstable();
                inn.sort_unstable();
                let mut sig = vec![colors[v], out.len()];
                sig.extend(out);
                sig.push(usize::MAX);
                sig.extend(inn);
                sig
            })
            .collect();
        colors = rank(&signatures);
        if cell_count(&colors) == before {
            return colors;
        }
    }
}

fn permuted(rows: &[u64], colors: &[usize]) -> Vec<u64> {
    // discrete colouring: vertex v goes to position colors[v]
    let n = rows.len();
    let mut out = vec![0u64; n];
    for v in 0..n {
        for w in 0..n {
            if rows[v] >> w & 1 == 1 {
                out[colors[v]] |= 1 << colors[w];
            }
        }
    }
    out
}

fn search(rows: &[u64], colors: Vec<usize>, best: &mut Option<Vec<u64>>) {
    let colors = refine(rows, colors);
    let n = rows.len();
    let cells = cell_count(&colors);
    if cells == n {
        let leaf = permuted(rows, &colors);
        if best.as_ref().is_none_or(|b| leaf > *b) {
            *best = Some(leaf);
        }
        return;
    }
    // first smallest non-singleton cell
    let mut sizes = vec![0usize; cells];
    for &c in &colors {
        sizes[c] += 1;
    }
    let target = (0..cells)
        .filter(|&c| sizes[c] > 1)
        .min_by_key(|&c| (sizes[c], c))
        .expect("non-discrete");
    for v in (0..n).filter(|&v| colors[v] == target) {
        let split: Vec<usize> = (0..n)
            .map(|u| 2 * colors[u] + usize::from(u != v))
            .collect();
        search(
            rows,
            rank(&split.iter().map(|&c| vec![c]).collect::<Vec<_>>()),
            best,
        );
    }
}

/// Canonical form of a directed 0/1 matrix with at most 64 rows.
pub fn canonical_rows(rows: &[u64]) -> CanonicalForm {
    let n = rows.len();
    assert!(n <= 64, "canonical forms support at most 64 vertices");
    let mut best = None;
    search(rows, vec![0; n], &mut best);
    CanonicalForm {
        n,
        rows: best.unwrap_or_default(),
    }
}

fn graph_rows(g: &Graph) -> Vec<u64> {
    (0..g.vertex_count())
        .map(|v| g.neighbors(v).to_mask())
        .collect()
}

fn tournament_rows(t: &Tournament) -> Vec<u64> {
    (0..t.vertex_count())
        .map(|v| t.out_neighbors(v).to_mask())
        .collect()
}

pub fn canonical_graph_form(g: &Graph) -> CanonicalForm {
    canonical_rows(&graph_rows(g))
}

pub fn canonical_tournament_form(t: &Tournament) -> CanonicalForm {
    canonical_rows(&tournament_rows(t))
}

fn graph_from_form(form: &CanonicalForm) -> Graph {
    let n = form.n;
    let edges = (0..n).flat_map(|u| {
        (u + 1..n)
            .filter(move |&v| form.rows[u] >> v & 1 == 1)
            .map(move |v| (u, v))
    });
    Graph::from_edges(n, edges).expect("symmetric canonical rows")
}

fn tournament_from_form(form: &CanonicalForm) -> Tournament {
    let n = form.n;
    Tournament::from_beats(
        (0..n)
            .map(|v| VertexSet::from_mask(n, form.rows[v]))
            .collect(),
    )
    .expect("canonical rows of a tournament")
}

/// One representative of every isomorphism class of graphs on exactly `n`
/// vertices, in canonical-form order.
pub fn graphs_of_order(n: usize) -> Vec<Graph> {
    assert!(
        n <= MAX_ORDER,
        "enumeration supports at most {MAX_ORDER} vertices"
    );
    let mut level: BTreeSet<CanonicalForm> = BTreeSet::new();
    level.insert(CanonicalForm {
        n: 0,
        rows: Vec::new(),
    });
    for m in 1..=n {
        let mut next = BTreeSet::new();
        for form in &level {
            for nbrs in 0u64..1 << (m - 1) {
                let mut rows = form.rows.clone();
                for (v, row) in rows.iter_mut().enumerate() {
                    if nbrs >> v & 1 == 1 {
                        *row |= 1 << (m - 1);
                    }
                }
                rows.push(nbrs);
                next.insert(canonical_rows(&rows));
            }
        }
        level = next;
    }
    level.iter().map(graph_from_form).collect()
}

/// Every graph with at most `n` vertices up to isomorphism (including the
/// null graph), by increasing order.
pub fn graphs_up_to(n: usize) -> Vec<Graph> {
    (0..=n).flat_map(graphs_of_order).collect()
}

/// One representative per isomorphism class of `n`-vertex tournaments.
pub fn tournaments_of_order(n: usize) -> Vec<Tournament> {
    assert!(
        n <= MAX_ORDER,
        "enumeration supports at most {MAX_ORDER} vertices"
    );
    let mut level: BTreeSet<CanonicalForm> = BTreeSet::new();
    level.insert(CanonicalForm {
        n: 0,
        rows: Vec::new(),
    });
    for m in 1..=n {
        let mut next = BTreeSet::new();
        for form in &level {
            // bit v of `wins` set: new vertex beats v
            for wins in 0u64..1 << (m - 1) {
                let mut rows = form.rows.clone();
                for (v, row) in rows.iter_mut().enumerate() {
                    if wins >> v & 1 == 0 {
                        *row |= 1 << (m - 1);
                    }
                }
                rows.push(wins);
                next.insert(canonical_rows(&rows));
            }
        }
        level = next;
    }
    level.iter().map(tournament_from_form).collect()
}

pub fn tournaments_up_to(n: usize) -> Vec<Tournament> {
    (0..=n).flat_map(tournaments_of_order).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use rand::seq::SliceRandom;

    #[test]
    fn known_class_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| graphs_of_order(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
        let counts: Vec<usize> = (0..=6).map(|n| tournaments_of_order(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 4, 12, 56]);
    }

    #[test]
    fn relabelling_preserves_form() {
        let mut rng = generate::rng(9);
        for seed in 0..40 {
            let g = generate::gnp(9, 0.45, seed);
            let mut perm: Vec<usize> = (0..9).collect();
            perm.shuffle(&mut rng);
            let h = Graph::from_edges(9, g.edges().into_iter().map(|(u, v)| (perm[u], perm[v])))
                .unwrap();
            assert_eq!(canonical_graph_form(&g), canonical_graph_form(&h));
        }
        let petersen = generate::petersen();
        assert_ne!(
            canonical_graph_form(&petersen),
            canonical_graph_form(&generate::gnp(10, 0.33, 1))
        );
    }
}
