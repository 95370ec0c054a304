//! Exhaustive generation of small graphs up to isomorphism.
//!
//! Graphs on `n` vertices come from those on `n - 1` by adding a vertex
//! with every possible neighborhood (a non-empty one for connected
//! graphs, since every connected graph has a vertex whose removal keeps it
//! connected). Duplicates are removed by a canonical code: the smallest
//! adjacency bit string over the leaves of an individualization-refinement
//! search, where interchangeable twin vertices are tried once.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const ENUMERATE_MAX_N: usize = 10;

type Cells = Vec<Vec<u8>>;

fn mask(cell: &[u8]) -> u16 {
    cell.iter().fold(0, |m, &v| m | 1 << v)
}

/// Splits cells by neighbor counts into each splitter cell until the
/// partition is equitable. Groups are ordered by increasing count.
fn refine(adj: &[u16], cells: &mut Cells) {
    'outer: loop {
        for s in 0..cells.len() {
            let smask = mask(&cells[s]);
            for i in 0..cells.len() {
                if cells[i].len() < 2 {
                    continue;
                }
                let count = |v: u8| (adj[v as usize] & smask).count_ones();
                let first = count(cells[i][0]);
                if cells[i].iter().all(|&v| count(v) == first) {
                    continue;
                }
                let mut cell = std::mem::take(&mut cells[i]);
                cell.sort_by_key(|&v| (count(v), v));
                let mut groups: Vec<Vec<u8>> = Vec::new();
                let mut last = None;
                for v in cell {
                    let c = count(v);
                    if last != Some(c) {
                        groups.push(Vec::new());
                        last = Some(c);
                    }
                    groups.last_mut().unwrap().push(v);
                }
                cells.splice(i..=i, groups);
                continue 'outer;
            }
        }
        return;
    }
}

fn leaf_code(adj: &[u16], cells: &Cells) -> u64 {
    let lab: Vec<usize> = cells.iter().map(|c| c[0] as usize).collect();
    let n = lab.len();
    let mut code = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            code = code << 1 | u64::from(adj[lab[i]] >> lab[j] & 1);
        }
    }
    code
}

fn twins(adj: &[u16], u: u8, v: u8) -> bool {
    adj[u as usize] & !(1 << v) == adj[v as usize] & !(1 << u)
}

fn search(adj: &[u16], cells: Cells, best: &mut u64) {
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        *best = (*best).min(leaf_code(adj, &cells));
        return;
    };
    let cell = cells[target].clone();
    let mut tried: Vec<u8> = Vec::new();
    for &v in &cell {
        if tried.iter().any(|&u| twins(adj, u, v)) {
            continue;
        }
        tried.push(v);
        let mut next = cells.clone();
        let rest: Vec<u8> = cell.iter().copied().filter(|&u| u != v).collect();
        next.splice(target..=target, [vec![v], rest]);
        refine(adj, &mut next);
        search(adj, next, best);
    }
}

/// Isomorphism-invariant code of the graph with adjacency bit masks `adj`.
/// The code of an `n`-vertex graph is its upper-triangle adjacency string
/// under a canonical labeling.
pub fn canonical_code(adj: &[u16]) -> u64 {
    let n = adj.len();
    assert!(n <= ENUMERATE_MAX_N + 1, "canonical codes are limited to small graphs");
    let mut cells: Cells = vec![(0..n as u8).collect()];
    if n == 0 {
        return 0;
    }
    refine(adj, &mut cells);
    let mut best = u64::MAX;
    search(adj, cells, &mut best);
    best
}

fn decode(n: usize, code: u64) -> Vec<u16> {
    let mut adj = vec![0u16; n];
    let mut bit = n * n.saturating_sub(1) / 2;
    for i in 0..n {
        for j in i + 1..n {
            bit -= 1;
            if code >> bit & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    adj
}

fn to_graph(adj: &[u16]) -> Graph {
    let n = adj.len();
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).filter(move |&j| adj[i] >> j & 1 == 1).map(move |j| (i, j))).collect();
    Graph::from_edges(n, &edges).expect("valid adjacency")
}

/// Canonical codes of all graphs on `n` vertices up to isomorphism
/// (connected ones only if `connected`), sorted.
pub fn graph_codes(n: usize, connected: bool) -> Result<Vec<u64>> {
    if n > ENUMERATE_MAX_N {
        return Err(Error::Guard(format!("graph enumeration limited to n <= {ENUMERATE_MAX_N}, got {n}")));
    }
    if n == 0 {
        return Ok(vec![0]);
    }
    let mut level: Vec<u64> = vec![0];
    for size in 2..=n {
        let mut seen = HashSet::new();
        let lowest = if connected { 1u16 } else { 0 };
        for &code in &level {
            let base = decode(size - 1, code);
            for nbrs in lowest..(1u16 << (size - 1)) {
                let mut adj = base.clone();
                adj.push(nbrs);
                for (v, a) in adj.iter_mut().enumerate().take(size - 1) {
                    if nbrs >> v & 1 == 1 {
                        *a |= 1 << (size - 1);
                    }
                }
                seen.insert(canonical_code(&adj));
            }
        }
        level = seen.into_iter().collect();
        level.sort_unstable();
    }
    Ok(level)
}

/// All graphs on `n` vertices up to isomorphism.
pub fn graphs_up_to_iso(n: usize, connected: bool) -> Result<Vec<Graph>> {
    Ok(graph_codes(n, connected)?.into_iter().map(|c| to_graph(&decode(n, c))).collect())
}

/// Adjacency masks of `g`, which must have at most 16 vertices.
pub fn adjacency_masks(g: &Graph) -> Vec<u16> {
    assert!(g.n() <= 16);
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u16, |m, &u| m | 1 << u)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, gen_graph, path, GraphKind};
    use crate::rng::Rng;
    use proptest::prelude::*;

    #[test]
    fn counts_match_known_sequences() {
        let connected = [1usize, 1, 2, 6, 21, 112, 853];
        for (i, &c) in connected.iter().enumerate() {
            assert_eq!(graph_codes(i + 1, true).unwrap().len(), c, "connected n = {}", i + 1);
        }
        let all = [1usize, 2, 4, 11, 34, 156];
        for (i, &c) in all.iter().enumerate() {
            assert_eq!(graph_codes(i + 1, false).unwrap().len(), c, "all n = {}", i + 1);
        }
    }

    #[test]
    fn roundtrip_and_connectivity() {
        for g in graphs_up_to_iso(5, true).unwrap() {
            assert!(g.is_connected());
            assert_eq!(canonical_code(&adjacency_masks(&g)), canonical_code(&adjacency_masks(&g.induced(&[4, 3, 2, 1, 0]))));
        }
        assert_ne!(canonical_code(&adjacency_masks(&path(5))), canonical_code(&adjacency_masks(&cycle(5))));
        assert_eq!(graphs_up_to_iso(4, true).unwrap().iter().filter(|g| g.m() == 6).count(), 1);
        assert!(graph_codes(ENUMERATE_MAX_N + 1, true).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn code_is_invariant_under_relabeling(n in 1usize..10, p in 0.0f64..1.0, gseed in 0u64..10_000, seed: u64) {
            let g = gen_graph(GraphKind::RandomGnp { n, p }, gseed).unwrap();
            let mut perm: Vec<usize> = (0..n).collect();
            Rng::new(seed).shuffle(&mut perm);
            let h = g.induced(&perm);
            let a = canonical_code(&adjacency_masks(&g));
            prop_assert_eq!(a, canonical_code(&adjacency_masks(&h)));
            // The code describes a graph isomorphic to the input.
            let back = decode(n, a);
            prop_assert_eq!(canonical_code(&back), a);
            prop_assert_eq!(back.iter().map(|m| m.count_ones() as usize).sum::<usize>(), 2 * g.m());
        }
    }
}
