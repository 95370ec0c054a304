//! Shortest paths under vertex or edge lengths, and exact longest simple
//! paths on small graphs.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use ordered_float::OrderedFloat;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Dense symmetric `n x n` matrix of path lengths. Disconnected pairs hold
/// `f64::INFINITY`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    fn filled(n: usize, value: f64) -> Self {
        Self { n, data: vec![value; n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> f64 {
        self.data[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[f64] {
        &self.data[u * self.n..(u + 1) * self.n]
    }

    fn row_mut(&mut self, u: usize) -> &mut [f64] {
        &mut self.data[u * self.n..(u + 1) * self.n]
    }
}

/// Which lengths a shortest-path computation reads.
#[derive(Debug, Clone, Copy)]
pub enum Lengths<'a> {
    /// Per-vertex lengths; a path costs the sum over all its vertices,
    /// endpoints included.
    Vertex(&'a [f64]),
    /// Per-edge lengths indexed by edge id.
    Edge(&'a [f64]),
}

/// One single-source run: distances, shortest-path-tree parents and the
/// order in which vertices were settled.
#[derive(Debug, Clone)]
pub(crate) struct ShortestPathTree {
    pub dist: Vec<f64>,
    /// `(parent vertex, edge id)` for every reached non-source vertex.
    pub parent: Vec<Option<(usize, usize)>>,
    pub settled: Vec<usize>,
}

/// Dijkstra from `source`, skipping vertices flagged in `blocked` (the
/// source itself must not be blocked).
pub(crate) fn shortest_path_tree(g: &Graph, lengths: Lengths<'_>, source: usize, blocked: Option<&[bool]>) -> ShortestPathTree {
    let n = g.n();
    let mut dist = vec![f64::INFINITY; n];
    let mut parent = vec![None; n];
    let mut done = vec![false; n];
    let mut settled = Vec::new();
    let mut heap = BinaryHeap::new();
    dist[source] = match lengths {
        Lengths::Vertex(x) => x[source],
        Lengths::Edge(_) => 0.0,
    };
    heap.push(Reverse((OrderedFloat(dist[source]), source)));
    while let Some(Reverse((OrderedFloat(d), v))) = heap.pop() {
        if done[v] {
            continue;
        }
        done[v] = true;
        settled.push(v);
        for (w, e) in g.incident(v) {
            if done[w] || blocked.is_some_and(|b| b[w]) {
                continue;
            }
            let step = match lengths {
                Lengths::Vertex(x) => x[w],
                Lengths::Edge(x) => x[e],
            };
            let nd = d + step;
            if nd < dist[w] {
                dist[w] = nd;
                parent[w] = Some((v, e));
                heap.push(Reverse((OrderedFloat(nd), w)));
            }
        }
    }
    ShortestPathTree { dist, parent, settled }
}

fn apsp(g: &Graph, lengths: Lengths<'_>, blocked: Option<&[bool]>) -> DistanceMatrix {
    let n = g.n();
    let mut d = DistanceMatrix::filled(n, f64::INFINITY);
    for s in 0..n {
        if blocked.is_some_and(|b| b[s]) {
            continue;
        }
        let tree = shortest_path_tree(g, lengths, s, blocked);
        d.row_mut(s).copy_from_slice(&tree.dist);
    }
    // Dijkstra sums in different orders from the two ends; keep the matrix
    // exactly symmetric.
    for u in 0..n {
        for v in u + 1..n {
            let m = d.get(u, v).min(d.get(v, u));
            d.data[u * n + v] = m;
            d.data[v * n + u] = m;
        }
    }
    d
}

/// All-pairs shortest paths where a path pays the length of every vertex
/// on it, both endpoints included, so `d[u][u] = x[u]`.
pub fn vertex_weighted_apsp(g: &Graph, x: &[f64]) -> DistanceMatrix {
    assert_eq!(x.len(), g.n(), "one length per vertex");
    apsp(g, Lengths::Vertex(x), None)
}

/// Vertex-weighted distances in the subgraph without the `blocked`
/// vertices. Rows and columns of blocked vertices are all infinite.
pub fn vertex_weighted_apsp_without(g: &Graph, x: &[f64], blocked: &[bool]) -> DistanceMatrix {
    assert_eq!(x.len(), g.n(), "one length per vertex");
    apsp(g, Lengths::Vertex(x), Some(blocked))
}

/// Standard edge-weighted all-pairs shortest paths; `d[u][u] = 0`.
pub fn edge_weighted_apsp(g: &Graph, x: &[f64]) -> DistanceMatrix {
    assert_eq!(x.len(), g.m(), "one length per edge");
    apsp(g, Lengths::Edge(x), None)
}

/// Largest subset-DP instance accepted by [`longest_path_exact`].
pub const LONGEST_PATH_MAX_N: usize = 20;

/// Maximum number of vertices on a simple path, with one witness path.
///
/// Dynamic program over vertex subsets: `ends[mask]` is the set of vertices
/// at which some path visiting exactly `mask` can end.
pub fn longest_path_exact(g: &Graph) -> Result<(usize, Vec<usize>)> {
    let n = g.n();
    if n > LONGEST_PATH_MAX_N {
        return Err(Error::Guard(format!("longest_path_exact needs n <= {LONGEST_PATH_MAX_N}, got {n}")));
    }
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let nbr: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0u32, |acc, &w| acc | 1 << w)).collect();
    let mut ends = vec![0u32; 1 << n];
    for v in 0..n {
        ends[1 << v] = 1 << v;
    }
    let mut best_mask = 1usize;
    for mask in 1usize..1 << n {
        let mut e = ends[mask];
        if e == 0 {
            continue;
        }
        if mask.count_ones() > best_mask.count_ones() {
            best_mask = mask;
        }
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            let mut ext = nbr[v] & !(mask as u32);
            while ext != 0 {
                let w = ext.trailing_zeros() as usize;
                ext &= ext - 1;
                ends[mask | 1 << w] |= 1 << w;
            }
        }
    }
    // Walk back through the table.
    let mut path = Vec::with_capacity(best_mask.count_ones() as usize);
    let mut mask = best_mask;
    let mut v = ends[mask].trailing_zeros() as usize;
    loop {
        path.push(v);
        let rest = mask & !(1 << v);
        if rest == 0 {
            break;
        }
        let cand = ends[rest] & nbr[v];
        debug_assert!(cand != 0);
        v = cand.trailing_zeros() as usize;
        mask = rest;
    }
    path.reverse();
    Ok((path.len(), path))
}

/// Exact search for a simple path on `k` vertices by depth-first
/// extension. Returns a witness if one exists.
pub fn find_kpath_exhaustive(g: &Graph, k: usize) -> Option<Vec<usize>> {
    if k == 0 {
        return Some(Vec::new());
    }
    if k > g.n() {
        return None;
    }
    fn extend(g: &Graph, k: usize, path: &mut Vec<usize>, on_path: &mut [bool]) -> bool {
        if path.len() == k {
            return true;
        }
        let last = *path.last().expect("path is non-empty");
        for &w in g.neighbors(last) {
            if !on_path[w] {
                on_path[w] = true;
                path.push(w);
                if extend(g, k, path, on_path) {
                    return true;
                }
                path.pop();
                on_path[w] = false;
            }
        }
        false
    }
    let mut on_path = vec![false; g.n()];
    let mut path = Vec::with_capacity(k);
    for s in 0..g.n() {
        on_path[s] = true;
        path.push(s);
        if extend(g, k, &mut path, &mut on_path) {
            return Some(path);
        }
        path.pop();
        on_path[s] = false;
    }
    None
}

/// `min(longest path vertex count, cap)`, by depth-first search that stops
/// extending once a path reaches `cap` vertices.
pub fn longest_path_capped(g: &Graph, cap: usize) -> usize {
    fn extend(g: &Graph, cap: usize, last: usize, len: usize, on_path: &mut [bool], best: &mut usize) {
        *best = (*best).max(len);
        if *best >= cap {
            return;
        }
        for &w in g.neighbors(last) {
            if !on_path[w] {
                on_path[w] = true;
                extend(g, cap, w, len + 1, on_path, best);
                on_path[w] = false;
                if *best >= cap {
                    return;
                }
            }
        }
    }
    let mut best = 0;
    let mut on_path = vec![false; g.n()];
    for s in 0..g.n() {
        on_path[s] = true;
        extend(g, cap, s, 1, &mut on_path, &mut best);
        on_path[s] = false;
        if best >= cap {
            break;
        }
    }
    best.min(cap)
}

pub(crate) fn is_simple_path(g: &Graph, path: &[usize]) -> bool {
    let mut seen = vec![false; g.n()];
    for (i, &v) in path.iter().enumerate() {
        if v >= g.n() || seen[v] {
            return false;
        }
        seen[v] = true;
        if i > 0 && !g.has_edge(path[i - 1], v) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{clique, cycle, gen_graph, path, star, GraphKind};
    use proptest::prelude::*;

    #[test]
    fn vertex_apsp_on_p3() {
        let d = vertex_weighted_apsp(&path(3), &[0.3, 0.2, 0.1]);
        assert!((d.get(0, 2) - 0.6).abs() < 1e-12);
        assert!((d.get(0, 0) - 0.3).abs() < 1e-12);
        assert_eq!(d.get(0, 2), d.get(2, 0));
    }

    #[test]
    fn zero_lengths_and_disconnected_pairs() {
        let g = gen_graph(GraphKind::RandomGnp { n: 10, p: 0.3 }, 5).unwrap();
        let lab = crate::graph::connected_components(&g, &[], &[]);
        let d = vertex_weighted_apsp(&g, &vec![0.0; 10]);
        for u in 0..10 {
            for v in 0..10 {
                if lab.label[u] == lab.label[v] {
                    assert_eq!(d.get(u, v), 0.0);
                } else {
                    assert_eq!(d.get(u, v), f64::INFINITY);
                }
            }
        }
        let d = vertex_weighted_apsp(&crate::graph::Graph::empty(2), &[0.5, 0.5]);
        assert_eq!(d.get(0, 1), f64::INFINITY);
    }

    #[test]
    fn edge_apsp_examples() {
        let d = edge_weighted_apsp(&path(3), &[0.4, 0.5]);
        assert!((d.get(0, 2) - 0.9).abs() < 1e-12);
        assert_eq!(d.get(1, 1), 0.0);
        let d = edge_weighted_apsp(&cycle(4), &[1.0; 4]);
        assert_eq!(d.get(0, 2), 2.0);
        let d = edge_weighted_apsp(&cycle(4), &[0.0; 4]);
        assert!(d.row(0).iter().all(|&v| v == 0.0));
    }

    #[test]
    fn blocked_vertices_lengthen_paths() {
        let g = cycle(4);
        let x = [0.1; 4];
        let mut blocked = vec![false; 4];
        blocked[1] = true;
        let d = vertex_weighted_apsp_without(&g, &x, &blocked);
        assert!((d.get(0, 2) - 0.3).abs() < 1e-12);
        assert_eq!(d.get(1, 1), f64::INFINITY);
    }

    #[test]
    fn longest_path_examples() {
        assert_eq!(longest_path_exact(&path(5)).unwrap().0, 5);
        assert_eq!(longest_path_exact(&clique(4)).unwrap().0, 4);
        let (len, witness) = longest_path_exact(&star(3)).unwrap();
        assert_eq!(len, 3);
        assert!(is_simple_path(&star(3), &witness));
        assert!(longest_path_exact(&path(21)).is_err());
        assert_eq!(longest_path_exact(&crate::graph::Graph::empty(0)).unwrap().0, 0);
    }

    #[test]
    fn exhaustive_kpath() {
        assert!(find_kpath_exhaustive(&star(5), 4).is_none());
        let p = find_kpath_exhaustive(&cycle(6), 6).unwrap();
        assert!(is_simple_path(&cycle(6), &p));
        assert!(find_kpath_exhaustive(&clique(3), 4).is_none());
    }

    // Longest path by enumerating every simple path, used only here.
    fn brute_longest(g: &crate::graph::Graph) -> usize {
        fn dfs(g: &crate::graph::Graph, v: usize, seen: &mut Vec<bool>, len: usize, best: &mut usize) {
            *best = (*best).max(len);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    dfs(g, w, seen, len + 1, best);
                    seen[w] = false;
                }
            }
        }
        let mut best = 0;
        for s in 0..g.n() {
            let mut seen = vec![false; g.n()];
            seen[s] = true;
            dfs(g, s, &mut seen, 1, &mut best);
        }
        best
    }

    proptest! {
        #[test]
        fn apsp_relaxation_inequalities(n in 1usize..14, p in 0.0f64..0.6, seed in any::<u64>(),
                                        xs in proptest::collection::vec(0.0f64..1.0, 14),
                                        es in proptest::collection::vec(0.0f64..1.0, 91)) {
            let g = gen_graph(GraphKind::RandomGnp { n, p }, seed).unwrap();
            let xv = &xs[..n];
            let d = vertex_weighted_apsp(&g, xv);
            let xe = &es[..g.m()];
            let de = edge_weighted_apsp(&g, xe);
            for u in 0..n {
                prop_assert_eq!(d.get(u, u), xv[u]);
                prop_assert_eq!(de.get(u, u), 0.0);
                for v in 0..n {
                    prop_assert_eq!(d.get(u, v), d.get(v, u));
                    prop_assert_eq!(de.get(u, v), de.get(v, u));
                }
                for (id, &(a, b)) in g.edges().iter().enumerate() {
                    for (v, w) in [(a, b), (b, a)] {
                        prop_assert!(d.get(u, w) <= d.get(u, v) + xv[w] + 1e-12);
                        prop_assert!(de.get(u, w) <= de.get(u, v) + xe[id] + 1e-12);
                    }
                }
            }
        }

        #[test]
        fn longest_path_matches_enumeration(n in 1usize..9, p in 0.0f64..0.7, seed in any::<u64>()) {
            let g = gen_graph(GraphKind::RandomGnp { n, p }, seed).unwrap();
            let (len, witness) = longest_path_exact(&g).unwrap();
            prop_assert_eq!(len, brute_longest(&g));
            prop_assert!(is_simple_path(&g, &witness));
            prop_assert_eq!(witness.len(), len);
            for cap in 0..=n + 1 {
                prop_assert_eq!(longest_path_capped(&g, cap), len.min(cap));
            }
        }
    }
}
