//! Exhaustive solvers for small instances, used as exactness oracles.
//!
//! All of them enumerate candidate sets in increasing size and stop at the
//! first feasible one, so the returned set is a minimum.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::{connected_components, Graph};
use crate::paths::longest_path_exact;

pub const BRUTE_MAX_N: usize = 14;
pub const BRUTE_MAX_M: usize = 18;
pub const BRUTE_PTRANS_MAX_N: usize = 12;
pub const BRUTE_COVERAGE_MAX_N: usize = 12;
/// Size limit of [`brute_vsep_twins`].
pub const BRUTE_TWINS_MAX_N: usize = 80;
/// Size limit of [`esep_partition_dp`].
pub const PARTITION_DP_MAX_N: usize = 16;

fn guard(what: &str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        return Err(Error::Guard(format!("{what} = {value} exceeds the brute-force limit {limit}")));
    }
    Ok(())
}

fn first_feasible(universe: usize, mut ok: impl FnMut(&[usize]) -> bool) -> Vec<usize> {
    for size in 0..=universe {
        if let Some(s) = (0..universe).combinations(size).find(|s| ok(s)) {
            return s;
        }
    }
    unreachable!("removing everything is always feasible")
}

/// Minimum k-Vertex Separator.
pub fn brute_vsep(g: &Graph, k: usize) -> Result<Vec<usize>> {
    guard("n", g.n(), BRUTE_MAX_N)?;
    Ok(first_feasible(g.n(), |s| connected_components(g, s, &[]).max_size() <= k))
}

/// Minimum k-Edge Separator, as edge ids.
pub fn brute_esep(g: &Graph, k: usize) -> Result<Vec<usize>> {
    guard("m", g.m(), BRUTE_MAX_M)?;
    Ok(first_feasible(g.m(), |s| connected_components(g, &[], s).max_size() <= k))
}

/// Minimum k-Subset Vertex Separator for the red set `red`.
pub fn brute_ssep(g: &Graph, red: &[usize], k: usize) -> Result<Vec<usize>> {
    guard("n", g.n(), BRUTE_MAX_N)?;
    if red.iter().any(|&r| r >= g.n()) {
        return Err(Error::InvalidInput("red vertex out of range".into()));
    }
    Ok(first_feasible(g.n(), |s| connected_components(g, s, &[]).with_red(red).max_red() <= k))
}

/// Minimum k-Path Transversal.
pub fn brute_ptrans(g: &Graph, k: usize) -> Result<Vec<usize>> {
    guard("n", g.n(), BRUTE_PTRANS_MAX_N)?;
    let mut removed = vec![false; g.n()];
    Ok(first_feasible(g.n(), |s| {
        removed.iter_mut().for_each(|r| *r = false);
        for &v in s {
            removed[v] = true;
        }
        let keep: Vec<usize> = (0..g.n()).filter(|&v| !removed[v]).collect();
        longest_path_exact(&g.induced(&keep)).expect("within guard").0 < k
    }))
}

/// Minimum vertex set inducing at least `k` edges, or `None` when `k > m`.
pub fn brute_min_edge_coverage(g: &Graph, k: usize) -> Result<Option<Vec<usize>>> {
    guard("n", g.n(), BRUTE_COVERAGE_MAX_N)?;
    if k > g.m() {
        return Ok(None);
    }
    let mut inside = vec![false; g.n()];
    Ok(Some(first_feasible(g.n(), |t| {
        inside.iter_mut().for_each(|b| *b = false);
        for &v in t {
            inside[v] = true;
        }
        g.edges().iter().filter(|&&(u, v)| inside[u] && inside[v]).count() >= k
    })))
}

/// Classes of false twins (vertices with identical open neighborhoods),
/// each sorted, ordered by smallest member.
pub fn false_twin_classes(g: &Graph) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut by_nbrs: std::collections::HashMap<&[usize], usize> = std::collections::HashMap::new();
    for v in 0..g.n() {
        match by_nbrs.get(g.neighbors(v)) {
            Some(&c) => classes[c].push(v),
            None => {
                by_nbrs.insert(g.neighbors(v), classes.len());
                classes.push(vec![v]);
            }
        }
    }
    classes
}

/// Minimum k-Vertex Separator exploiting false twins: twins are swapped by
/// an automorphism, so only how many of each class are removed matters,
/// and the removed members can be taken as the first ones. Suited to
/// instances with few classes and a small optimum.
pub fn brute_vsep_twins(g: &Graph, k: usize) -> Result<Vec<usize>> {
    guard("n", g.n(), BRUTE_TWINS_MAX_N)?;
    let classes = false_twin_classes(g);
    let caps: Vec<usize> = classes.iter().map(Vec::len).collect();
    let mut counts = vec![0usize; classes.len()];
    for total in 0..=g.n() {
        if let Some(s) = counts_with_sum(&caps, total, 0, &mut counts, &mut |c| {
            let s: Vec<usize> = c.iter().zip(&classes).flat_map(|(&t, cls)| cls[..t].iter().copied()).collect();
            (connected_components(g, &s, &[]).max_size() <= k).then_some(s)
        }) {
            let mut s = s;
            s.sort_unstable();
            return Ok(s);
        }
    }
    unreachable!("removing everything is always feasible")
}

fn counts_with_sum<T>(caps: &[usize], left: usize, i: usize, counts: &mut [usize], f: &mut impl FnMut(&[usize]) -> Option<T>) -> Option<T> {
    if i == caps.len() {
        return if left == 0 { f(counts) } else { None };
    }
    let rest: usize = caps[i + 1..].iter().sum();
    let lo = left.saturating_sub(rest);
    for t in lo..=caps[i].min(left) {
        counts[i] = t;
        if let Some(r) = counts_with_sum(caps, left - t, i + 1, counts, f) {
            return Some(r);
        }
    }
    counts[i] = 0;
    None
}

/// Minimum k-Edge Separator value by a DP over vertex subsets: the most
/// edges that can stay inside parts of a partition into sets of at most
/// `k` vertices, subtracted from `m`.
pub fn esep_partition_dp(g: &Graph, k: usize) -> Result<usize> {
    let n = g.n();
    guard("n", n, PARTITION_DP_MAX_N)?;
    let full = (1usize << n) - 1;
    let mut internal = vec![0usize; full + 1];
    for mask in 1..=full {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let extra = g.neighbors(low).iter().filter(|&&u| rest >> u & 1 == 1).count();
        internal[mask] = internal[rest] + extra;
    }
    let mut best = vec![0usize; full + 1];
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut sub = rest;
        let mut value = 0;
        loop {
            let part = sub | low;
            if part.count_ones() as usize <= k {
                value = value.max(internal[part] + best[mask ^ part]);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        best[mask] = value;
    }
    Ok(g.m() - best[full])
}
