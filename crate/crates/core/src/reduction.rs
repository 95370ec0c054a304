//! Reduction from Minimum k-Edge Coverage to k-Vertex Separator.
//!
//! For a source graph with `n` vertices and `m` edges and `M = n + 1`, the
//! target keeps the original vertices as a clique and adds `M` copies of
//! every edge, each copy adjacent to exactly the two endpoints. With
//! `k' = |V'| - M k`, removing a vertex set `T` of the source leaves a giant
//! component that fits in `k'` exactly when `T` induces at least `k` edges.
//!
//! Target vertex ids: originals keep `0..n`; copy `i` of edge `j` is
//! `n + j M + i`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{connected_components, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Original(usize),
    Copy { edge: usize, index: usize },
}

#[derive(Debug, Clone)]
pub struct ReductionArtifact {
    pub source: Graph,
    pub k: usize,
    /// Copies per source edge, `n + 1`.
    pub multiplicity: usize,
    pub target: Graph,
    pub k_prime: usize,
    pub roles: Vec<Role>,
}

impl ReductionArtifact {
    pub fn copy_id(&self, edge: usize, index: usize) -> usize {
        self.source.n() + edge * self.multiplicity + index
    }

    /// One line per target vertex: `id orig u` or `id copy e i`.
    pub fn role_map_text(&self) -> String {
        let mut out = String::new();
        for (id, role) in self.roles.iter().enumerate() {
            let _ = match role {
                Role::Original(u) => writeln!(out, "{id} orig {u}"),
                Role::Copy { edge, index } => writeln!(out, "{id} copy {edge} {index}"),
            };
        }
        out
    }
}

pub fn reduce_coverage_to_vsep(g: &Graph, k: usize) -> Result<ReductionArtifact> {
    let (n, m) = (g.n(), g.m());
    if k > m {
        return Err(Error::InvalidInput(format!("coverage target k = {k} exceeds m = {m}")));
    }
    let mult = n + 1;
    let total = n + mult * m;
    let mut edges = Vec::with_capacity(n * (n.saturating_sub(1)) / 2 + 2 * mult * m);
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    let mut roles: Vec<Role> = (0..n).map(Role::Original).collect();
    for (j, &(u, v)) in g.edges().iter().enumerate() {
        for i in 0..mult {
            let c = n + j * mult + i;
            edges.push((u, c));
            edges.push((v, c));
            roles.push(Role::Copy { edge: j, index: i });
        }
    }
    let target = Graph::from_edges(total, &edges)?;
    Ok(ReductionArtifact { source: g.clone(), k, multiplicity: mult, target, k_prime: total - mult * k, roles })
}

fn feasible(art: &ReductionArtifact, s: &[usize]) -> bool {
    connected_components(&art.target, s, &[]).max_size() <= art.k_prime
}

/// Rewrites a feasible separator of the target into one using original
/// vertices only, never growing it. For each edge copy `e_i = (u, v)` in
/// the set: drop it if both endpoints are in the set; otherwise swap it
/// for an endpoint not in the set.
pub fn normalize_vsep_solution(art: &ReductionArtifact, s: &[usize]) -> Result<Vec<usize>> {
    let n = art.source.n();
    if let Some(&bad) = s.iter().find(|&&v| v >= art.target.n()) {
        return Err(Error::InvalidInput(format!("vertex {bad} is not in the reduced graph")));
    }
    if !feasible(art, s) {
        return Err(Error::InvalidInput("input set is not a feasible separator of the reduced graph".into()));
    }
    let mut inside = vec![false; art.target.n()];
    for &v in s {
        inside[v] = true;
    }
    for c in n..art.target.n() {
        if !inside[c] {
            continue;
        }
        let Role::Copy { edge, .. } = art.roles[c] else { unreachable!() };
        let (u, v) = art.source.edge(edge);
        inside[c] = false;
        if !inside[u] {
            inside[u] = true;
        } else if !inside[v] {
            inside[v] = true;
        }
    }
    let out: Vec<usize> = (0..n).filter(|&v| inside[v]).collect();
    debug_assert!(out.len() <= s.len());
    if !feasible(art, &out) {
        return Err(Error::Internal("normalized separator is infeasible".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute::{brute_min_edge_coverage, brute_vsep_twins};
    use crate::graph::{clique, path};

    #[test]
    fn construction_sizes() {
        let a = reduce_coverage_to_vsep(&path(3), 2).unwrap();
        assert_eq!((a.multiplicity, a.target.n(), a.k_prime), (4, 11, 3));
        let a = reduce_coverage_to_vsep(&clique(3), 1).unwrap();
        assert_eq!((a.multiplicity, a.target.n(), a.k_prime), (4, 15, 11));
        let a = reduce_coverage_to_vsep(&path(2), 1).unwrap();
        assert_eq!((a.multiplicity, a.target.n(), a.k_prime), (3, 5, 2));
        assert!(reduce_coverage_to_vsep(&path(3), 3).is_err());
    }

    #[test]
    fn construction_structure() {
        let g = path(4);
        let a = reduce_coverage_to_vsep(&g, 1).unwrap();
        for u in 0..4 {
            for v in u + 1..4 {
                assert!(a.target.has_edge(u, v));
            }
        }
        for (j, &(u, v)) in g.edges().iter().enumerate() {
            for i in 0..a.multiplicity {
                assert_eq!(a.target.neighbors(a.copy_id(j, i)), &[u, v]);
            }
        }
        assert!(a.role_map_text().contains("5 copy 0 1"));
    }

    #[test]
    fn normalization_moves() {
        let g = path(3);
        let a = reduce_coverage_to_vsep(&g, 2).unwrap();
        assert_eq!(normalize_vsep_solution(&a, &[0, 1, 2]).unwrap(), vec![0, 1, 2]);
        // Both endpoints present: the copy is dropped.
        let s = [0, 1, 2, a.copy_id(0, 0)];
        assert_eq!(normalize_vsep_solution(&a, &s).unwrap(), vec![0, 1, 2]);
        // Copies whose endpoints are absent get swapped for an endpoint.
        let a = reduce_coverage_to_vsep(&path(2), 1).unwrap();
        let s = brute_vsep_twins(&a.target, a.k_prime).unwrap();
        let out = normalize_vsep_solution(&a, &s).unwrap();
        assert!(out.len() <= s.len() && out.iter().all(|&v| v < 2));
        let copy_only = [a.copy_id(0, 0), a.copy_id(0, 1), a.copy_id(0, 2)];
        // First copy: swapped for vertex 0. Second: vertex 0 is present, so
        // it is swapped for vertex 1. Third: both present, dropped.
        assert_eq!(normalize_vsep_solution(&a, &copy_only).unwrap(), vec![0, 1]);
        assert!(normalize_vsep_solution(&a, &[]).is_err());
    }

    #[test]
    fn small_equivalences() {
        for g in [path(3), clique(3), path(4), clique(4)] {
            for k in 1..=g.m() {
                let a = reduce_coverage_to_vsep(&g, k).unwrap();
                let cover = brute_min_edge_coverage(&g, k).unwrap().unwrap().len();
                let s = brute_vsep_twins(&a.target, a.k_prime).unwrap();
                assert_eq!(cover, s.len());
                assert_eq!(normalize_vsep_solution(&a, &s).unwrap().len(), cover);
            }
        }
    }
}
