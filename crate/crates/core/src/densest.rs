//! Threshold dense-subgraph search by minimum cut.
//!
//! For an integer target `c`, decides whether some nonempty `S ⊆ W` has
//! `|E(G[S])| ≥ c|S|`, and returns the largest set maximizing
//! `K·|E(S)| − (cK − 1)·|S|` with `K = |W| + 1`. That objective is positive
//! exactly on the sets meeting the threshold, so the answer is exact.

use crate::graph::Graph;
use crate::vertex_set::VertexSet;

struct Dinic {
    head: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<i64>,
    next: Vec<usize>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

const NIL: usize = usize::MAX;

impl Dinic {
    fn new(nodes: usize) -> Self {
        Dinic {
            head: vec![NIL; nodes],
            to: Vec::new(),
            cap: Vec::new(),
            next: Vec::new(),
            level: vec![0; nodes],
            iter: vec![0; nodes],
        }
    }

    fn add_arc(&mut self, u: usize, v: usize, forward: i64, backward: i64) {
        for (a, b, c) in [(u, v, forward), (v, u, backward)] {
            self.to.push(b);
            self.cap.push(c);
            self.next.push(self.head[a]);
            self.head[a] = self.to.len() - 1;
        }
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let mut e = self.head[u];
            while e != NIL {
                let v = self.to[e];
                if self.cap[e] > 0 && self.level[v] < 0 {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
                e = self.next[e];
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: i64) -> i64 {
        if u == t {
            return pushed;
        }
        while self.iter[u] != NIL {
            let e = self.iter[u];
            let v = self.to[e];
            if self.cap[e] > 0 && self.level[v] == self.level[u] + 1 {
                let d = self.dfs(v, t, pushed.min(self.cap[e]));
                if d > 0 {
                    self.cap[e] -= d;
                    self.cap[e ^ 1] += d;
                    return d;
                }
            }
            self.iter[u] = self.next[e];
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut flow = 0;
        while self.bfs(s, t) {
            self.iter.clone_from(&self.head);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
        flow
    }

    /// Nodes that can still reach `t` in the residual graph.
    fn reaches_sink(&self, t: usize) -> Vec<bool> {
        let nodes = self.head.len();
        // reverse residual search: u reaches t if some arc u->v has residual cap and v reaches t
        let mut incoming: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nodes];
        for u in 0..nodes {
            let mut e = self.head[u];
            while e != NIL {
                incoming[self.to[e]].push((u, e));
                e = self.next[e];
            }
        }
        let mut seen = vec![false; nodes];
        seen[t] = true;
        let mut stack = vec![t];
        while let Some(v) = stack.pop() {
            for &(u, e) in &incoming[v] {
                if !seen[u] && self.cap[e] > 0 {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen
    }
}

/// Largest `S ⊆ within` maximizing the scaled excess, provided some nonempty
/// set has `|E(G[S])| ≥ c·|S|`; `None` otherwise. With `c = 0` any nonempty
/// `within` qualifies.
pub fn dense_subset_at_least(g: &Graph, within: &VertexSet, c: u64) -> Option<VertexSet> {
    let members = within.to_vec();
    let n = members.len();
    if n == 0 {
        return None;
    }
    if c == 0 {
        return Some(within.clone());
    }
    let k = n as i64 + 1;
    let c = c as i64;
    let max_degree = members
        .iter()
        .map(|&v| g.degree_within(v, within) as i64)
        .max()
        .unwrap_or(0);
    if max_degree < 2 * c {
        // a set meeting the threshold has a vertex of degree at least 2c
        return None;
    }
    let big = k * max_degree;
    let mut local = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in members.iter().enumerate() {
        local[v] = i;
    }
    let (s, t) = (n, n + 1);
    let mut net = Dinic::new(n + 2);
    for (i, &v) in members.iter().enumerate() {
        let degree = g.degree_within(v, within) as i64;
        net.add_arc(s, i, big, 0);
        net.add_arc(i, t, big + 2 * (c * k - 1) - k * degree, 0);
        for w in g
            .neighbors(v)
            .iter()
            .filter(|&w| w > v && within.contains(w))
        {
            net.add_arc(i, local[w], k, k);
        }
    }
    let cut = net.max_flow(s, t);
    if cut >= big * n as i64 {
        return None;
    }
    let to_sink = net.reaches_sink(t);
    let chosen = VertexSet::from_indices(
        g.vertex_count(),
        (0..n).filter(|&i| !to_sink[i]).map(|i| members[i]),
    );
    debug_assert!(!chosen.is_empty());
    Some(chosen)
}

pub fn has_dense_subset(g: &Graph, within: &VertexSet, c: u64) -> bool {
    dense_subset_at_least(g, within, c).is_some()
}
