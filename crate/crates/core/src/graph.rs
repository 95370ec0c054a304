//! Undirected simple graphs, the edge-list text format, and residual
//! connectivity queries.
//!
//! A [`Graph`] is immutable once built. Removals (of vertices or edges) are
//! never applied to the graph itself; they are passed as overlays to the
//! queries that need them.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::rng::Rng;

/// Label carried by removed vertices in a [`ComponentLabeling`].
pub const REMOVED: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    // adj_edge[v][i] is the id of the edge (v, adj[v][i])
    adj_edge: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from an edge list. Self-loops, duplicate edges and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut canon = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!("edge ({u}, {v}) has an endpoint >= n = {n}")));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at vertex {u}")));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(format!("duplicate edge ({}, {})", w[0].0, w[0].1)));
        }
        Ok(Self::from_canonical(n, canon))
    }

    // `edges` must be sorted, canonical and free of duplicates.
    fn from_canonical(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut pairs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            pairs[u].push((v, id));
            pairs[v].push((u, id));
        }
        let mut adj = Vec::with_capacity(n);
        let mut adj_edge = Vec::with_capacity(n);
        for mut p in pairs {
            p.sort_unstable();
            adj.push(p.iter().map(|&(w, _)| w).collect());
            adj_edge.push(p.iter().map(|&(_, e)| e).collect());
        }
        Self { n, adj, adj_edge, edges }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_canonical(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Neighbors of `v` paired with the id of the connecting edge.
    pub fn incident(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj[v].iter().copied().zip(self.adj_edge[v].iter().copied())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Canonical edges `(u, v)` with `u < v`, sorted; the index is the edge id.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Subgraph induced by `vertices`. Vertex `i` of the result is
    /// `vertices[i]` of `self`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            if local[u] != usize::MAX && local[v] != usize::MAX {
                let (a, b) = (local[u], local[v]);
                edges.push((a.min(b), a.max(b)));
            }
        }
        edges.sort_unstable();
        Self::from_canonical(vertices.len(), edges)
    }

    /// Graph on the same vertex set without the edges whose ids are listed.
    pub fn without_edges(&self, removed_edges: &[usize]) -> Graph {
        let mut drop = vec![false; self.m()];
        for &e in removed_edges {
            drop[e] = true;
        }
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(id, _)| !drop[*id])
            .map(|(_, &e)| e)
            .collect();
        Self::from_canonical(self.n, edges)
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || connected_components(self, &[], &[]).count() == 1
    }

    /// Serializes in the edge-list text format accepted by [`parse_graph`].
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.m());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Parses the edge-list format: a header line `n m`, then `m` lines `u v`.
/// Blank lines and everything after a `#` are ignored.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::parse(line_no, format!("expected two integers, found {:?}", line)));
        }
        let a: usize = fields[0]
            .parse()
            .map_err(|_| Error::parse(line_no, format!("not a vertex id: {:?}", fields[0])))?;
        let b: usize = fields[1]
            .parse()
            .map_err(|_| Error::parse(line_no, format!("not a vertex id: {:?}", fields[1])))?;
        let Some((n, m, _)) = header else {
            header = Some((a, b, line_no));
            continue;
        };
        if edges.len() == m {
            return Err(Error::parse(line_no, format!("more than the declared {m} edges")));
        }
        if a >= n || b >= n {
            return Err(Error::parse(line_no, format!("vertex id out of range for n = {n}")));
        }
        if a == b {
            return Err(Error::parse(line_no, format!("self-loop at vertex {a}")));
        }
        let key = (a.min(b), a.max(b));
        if !seen.insert(key) {
            return Err(Error::parse(line_no, format!("duplicate edge ({}, {})", key.0, key.1)));
        }
        edges.push(key);
    }
    let Some((n, m, line_no)) = header else {
        return Err(Error::parse(1, "missing header line \"n m\""));
    };
    if edges.len() != m {
        return Err(Error::parse(line_no, format!("header declares {m} edges, found {}", edges.len())));
    }
    edges.sort_unstable();
    Ok(Graph::from_canonical(n, edges))
}

/// Parses a vertex-id list (one id per line, `#` comments allowed).
pub fn parse_vertex_list(text: &str, n: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let v: usize = line
            .parse()
            .map_err(|_| Error::parse(idx + 1, format!("not a vertex id: {:?}", line)))?;
        if v >= n {
            return Err(Error::parse(idx + 1, format!("vertex {v} out of range for n = {n}")));
        }
        out.push(v);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Connected components of the residual graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLabeling {
    /// Component id per vertex, or [`REMOVED`].
    pub label: Vec<usize>,
    pub sizes: Vec<usize>,
    pub red_counts: Option<Vec<usize>>,
}

impl ComponentLabeling {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn max_size(&self) -> usize {
        self.sizes.iter().copied().max().unwrap_or(0)
    }

    pub fn max_red(&self) -> usize {
        self.red_counts.as_ref().and_then(|r| r.iter().copied().max()).unwrap_or(0)
    }

    /// Vertex lists per component, each sorted ascending.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.sizes.len()];
        for (v, &c) in self.label.iter().enumerate() {
            if c != REMOVED {
                out[c].push(v);
            }
        }
        out
    }

    /// Fills in per-component red counts.
    pub fn with_red(mut self, red: &[usize]) -> Self {
        let mut counts = vec![0; self.sizes.len()];
        for &r in red {
            if self.label[r] != REMOVED {
                counts[self.label[r]] += 1;
            }
        }
        self.red_counts = Some(counts);
        self
    }
}

/// Labels the components of `g` minus the given vertex and edge ids.
/// Components are numbered in order of their smallest vertex.
pub fn connected_components(g: &Graph, removed_vertices: &[usize], removed_edges: &[usize]) -> ComponentLabeling {
    let mut vgone = vec![false; g.n()];
    for &v in removed_vertices {
        vgone[v] = true;
    }
    let mut egone = vec![false; g.m()];
    for &e in removed_edges {
        egone[e] = true;
    }
    components_masked(g, &vgone, &egone)
}

pub(crate) fn components_masked(g: &Graph, vgone: &[bool], egone: &[bool]) -> ComponentLabeling {
    let n = g.n();
    let mut label = vec![REMOVED; n];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        if vgone[s] || label[s] != REMOVED {
            continue;
        }
        let c = sizes.len();
        label[s] = c;
        queue.push_back(s);
        let mut size = 0;
        while let Some(v) = queue.pop_front() {
            size += 1;
            for (w, e) in g.incident(v) {
                if !vgone[w] && (egone.is_empty() || !egone[e]) && label[w] == REMOVED {
                    label[w] = c;
                    queue.push_back(w);
                }
            }
        }
        sizes.push(size);
    }
    ComponentLabeling { label, sizes, red_counts: None }
}

/// Graph families available to [`gen_graph`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphKind {
    RandomGnp { n: usize, p: f64 },
    Clique { n: usize },
    Cycle { n: usize },
    Path { n: usize },
    Star { leaves: usize },
}

/// Deterministic graph generator. `seed` only matters for `RandomGnp`.
pub fn gen_graph(kind: GraphKind, seed: u64) -> Result<Graph> {
    let mut edges = Vec::new();
    let n = match kind {
        GraphKind::RandomGnp { n, p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidInput(format!("edge probability {p} outside [0, 1]")));
            }
            let mut rng = Rng::new(seed);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.unit() < p {
                        edges.push((u, v));
                    }
                }
            }
            n
        }
        GraphKind::Clique { n } => {
            for u in 0..n {
                for v in u + 1..n {
                    edges.push((u, v));
                }
            }
            n
        }
        GraphKind::Cycle { n } => {
            if n > 0 && n < 3 {
                return Err(Error::InvalidInput(format!("a simple cycle needs at least 3 vertices, got {n}")));
            }
            for u in 0..n {
                let v = (u + 1) % n;
                edges.push((u.min(v), u.max(v)));
            }
            n
        }
        GraphKind::Path { n } => {
            for u in 1..n {
                edges.push((u - 1, u));
            }
            n
        }
        GraphKind::Star { leaves } => {
            for v in 1..=leaves {
                edges.push((0, v));
            }
            leaves + 1
        }
    };
    edges.sort_unstable();
    Ok(Graph::from_canonical(n, edges))
}

pub fn clique(n: usize) -> Graph {
    gen_graph(GraphKind::Clique { n }, 0).expect("clique parameters are always valid")
}

pub fn path(n: usize) -> Graph {
    gen_graph(GraphKind::Path { n }, 0).expect("path parameters are always valid")
}

pub fn cycle(n: usize) -> Graph {
    gen_graph(GraphKind::Cycle { n }, 0).expect("cycle needs n >= 3")
}

pub fn star(leaves: usize) -> Graph {
    gen_graph(GraphKind::Star { leaves }, 0).expect("star parameters are always valid")
}

/// Disjoint union; vertices of `b` are shifted by `a.n()`.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let shift = a.n();
    let mut edges = a.edges().to_vec();
    edges.extend(b.edges().iter().map(|&(u, v)| (u + shift, v + shift)));
    edges.sort_unstable();
    Graph::from_canonical(a.n() + b.n(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_path_and_triangle() {
        let p3 = parse_graph("3 2\n0 1\n1 2").unwrap();
        assert_eq!((p3.n(), p3.m()), (3, 2));
        assert_eq!(p3.neighbors(1), &[0, 2]);

        let iso = parse_graph("2 0\n").unwrap();
        assert_eq!((iso.n(), iso.m()), (2, 0));

        let k3 = parse_graph("# triangle\n3 3\n0 1\n1 2 # spoke\n0 2").unwrap();
        assert_eq!(k3, clique(3));
    }

    #[test]
    fn parse_errors_name_the_line() {
        let cases = [
            ("3 2\n0 1\n1 x", 3),
            ("3 1\n0 3", 2),
            ("3 2\n0 1\n1 0", 3),
            ("3 1\n1 1", 2),
            ("3 2\n0 1 2\n", 2),
            ("3 2\n0 1\n", 1),
        ];
        for (text, line) in cases {
            match parse_graph(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: expected parse error, got {other:?}"),
            }
        }
    }

    #[test]
    fn components_examples() {
        let p3 = path(3);
        let lab = connected_components(&p3, &[1], &[]);
        assert_eq!(lab.sizes, vec![1, 1]);
        assert_eq!(lab.label[1], REMOVED);

        let c4 = cycle(4);
        let e01 = c4.edge_id(0, 1).unwrap();
        let e23 = c4.edge_id(2, 3).unwrap();
        let lab = connected_components(&c4, &[], &[e01, e23]);
        assert_eq!(lab.members(), vec![vec![0, 3], vec![1, 2]]);

        let lab = connected_components(&clique(4), &[], &[]);
        assert_eq!(lab.sizes, vec![4]);
    }

    #[test]
    fn generators() {
        assert_eq!(clique(9).m(), 36);
        assert_eq!(cycle(6).m(), 6);
        let a = gen_graph(GraphKind::RandomGnp { n: 30, p: 0.1 }, 7).unwrap();
        let b = gen_graph(GraphKind::RandomGnp { n: 30, p: 0.1 }, 7).unwrap();
        assert_eq!(a, b);
        assert!(gen_graph(GraphKind::RandomGnp { n: 5, p: 1.5 }, 0).is_err());
        assert_eq!(star(3).degree(0), 3);
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = cycle(5);
        let h = g.induced(&[1, 2, 3]);
        assert_eq!(h.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn round_trip_text() {
        let g = gen_graph(GraphKind::RandomGnp { n: 12, p: 0.3 }, 1).unwrap();
        assert_eq!(parse_graph(&g.to_edge_list()).unwrap(), g);
    }

    proptest! {
        #[test]
        fn adjacency_is_symmetric(n in 0usize..20, p in 0.0f64..1.0, seed in any::<u64>()) {
            let g = gen_graph(GraphKind::RandomGnp { n, p }, seed).unwrap();
            for u in 0..n {
                for (v, e) in g.incident(u) {
                    prop_assert!(g.neighbors(v).contains(&u));
                    prop_assert_eq!(g.edge(e), (u.min(v), u.max(v)));
                }
            }
            prop_assert_eq!(g.adj.iter().map(Vec::len).sum::<usize>(), 2 * g.m());
        }

        #[test]
        fn components_partition_survivors(n in 1usize..25, p in 0.0f64..0.4, seed in any::<u64>(), cut in 0usize..8) {
            let g = gen_graph(GraphKind::RandomGnp { n, p }, seed).unwrap();
            let removed: Vec<usize> = (0..n).filter(|v| (v * 7 + seed as usize) % 8 < cut).collect();
            let lab = connected_components(&g, &removed, &[]);
            prop_assert_eq!(lab.sizes.iter().sum::<usize>(), n - removed.len());
            for &(u, v) in g.edges() {
                if lab.label[u] != REMOVED && lab.label[v] != REMOVED {
                    prop_assert_eq!(lab.label[u], lab.label[v]);
                }
            }
        }
    }
}
