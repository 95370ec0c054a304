//! Turning decompositions into feasible solutions, and checking solutions.
//!
//! After rounding every component is only a constant factor above `k`, so
//! the remaining work is done exactly: minimum vertex separators by
//! enumeration in increasing size, and for edges a single exact balanced
//! cut per oversized component.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{connected_components, Graph};
use crate::ldd::DecompositionResult;
use crate::paths::{longest_path_capped, longest_path_exact};
use crate::spreading::Mode;

/// Largest component [`exact_balanced_bcut`] will enumerate.
pub const BCUT_MAX_N: usize = 24;
/// Largest component the subset cleanup solves exactly.
pub const SSEP_EXACT_MAX_N: usize = 20;
/// Components up to this size get an exact longest-path DP during
/// verification; larger ones a depth-first search capped at `k`.
pub const VERIFY_EXACT_MAX_N: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Vsep,
    Esep,
    Ssep,
    Ptrans,
}

impl Problem {
    pub fn name(self) -> &'static str {
        match self {
            Problem::Vsep => "vsep",
            Problem::Esep => "esep",
            Problem::Ssep => "ssep",
            Problem::Ptrans => "ptrans",
        }
    }

    /// Spreading-LP mode used by the separator pipelines.
    pub fn mode(self) -> Option<Mode> {
        match self {
            Problem::Vsep => Some(Mode::Vertex),
            Problem::Esep => Some(Mode::Edge),
            Problem::Ssep => Some(Mode::Subset),
            Problem::Ptrans => None,
        }
    }

    /// True when solutions are edge ids rather than vertex ids.
    pub fn removes_edges(self) -> bool {
        self == Problem::Esep
    }
}

impl std::str::FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vsep" => Ok(Problem::Vsep),
            "esep" => Ok(Problem::Esep),
            "ssep" => Ok(Problem::Ssep),
            "ptrans" => Ok(Problem::Ptrans),
            _ => Err(Error::InvalidInput(format!("unknown problem {s:?}"))),
        }
    }
}

/// The measured quantity a solution is judged by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    MaxComponentSize(usize),
    MaxRedCount(usize),
    /// Vertex count of the longest simple path left.
    LongestPath(usize),
}

impl Certificate {
    pub fn value(self) -> usize {
        match self {
            Certificate::MaxComponentSize(v) | Certificate::MaxRedCount(v) | Certificate::LongestPath(v) => v,
        }
    }

    pub fn satisfies(self, k: usize) -> bool {
        match self {
            Certificate::LongestPath(l) => l < k,
            other => other.value() <= k,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Costs {
    pub heavy: usize,
    pub rounding: usize,
    pub cleanup: usize,
    pub total: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparatorSolution {
    pub problem: Problem,
    pub k: usize,
    /// Sorted vertex ids, or edge ids for `esep`.
    pub removed: Vec<usize>,
    pub certificate: Certificate,
    pub costs: Costs,
}

impl SeparatorSolution {
    pub fn cost(&self) -> usize {
        self.removed.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub component: Vec<usize>,
    pub value: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub feasible: bool,
    pub certificate: Certificate,
    pub violations: Vec<Violation>,
}

/// Recomputes the residual graph of `removed` and checks the problem's
/// bound on every component.
pub fn verify_solution(g: &Graph, problem: Problem, k: usize, red: &[usize], removed: &[usize]) -> Result<VerificationReport> {
    let limit = if problem.removes_edges() { g.m() } else { g.n() };
    if let Some(&bad) = removed.iter().find(|&&id| id >= limit) {
        let what = if problem.removes_edges() { "edge" } else { "vertex" };
        return Err(Error::InvalidInput(format!("{what} id {bad} out of range (< {limit})")));
    }
    if let Some(&bad) = red.iter().find(|&&v| v >= g.n()) {
        return Err(Error::InvalidInput(format!("red vertex {bad} out of range")));
    }
    let labeling = if problem.removes_edges() {
        connected_components(g, &[], removed)
    } else {
        connected_components(g, removed, &[])
    }
    .with_red(red);
    let reds = labeling.red_counts.clone().unwrap_or_default();
    let mut violations = Vec::new();
    let mut worst = 0;
    for (c, members) in labeling.members().into_iter().enumerate() {
        let value = match problem {
            Problem::Vsep | Problem::Esep => members.len(),
            Problem::Ssep => reds[c],
            Problem::Ptrans => {
                let sub = g.induced(&members);
                if members.len() <= VERIFY_EXACT_MAX_N {
                    longest_path_exact(&sub)?.0
                } else {
                    longest_path_capped(&sub, k)
                }
            }
        };
        worst = worst.max(value);
        let bad = match problem {
            Problem::Ptrans => value >= k,
            _ => value > k,
        };
        if bad {
            violations.push(Violation { component: members, value });
        }
    }
    let certificate = match problem {
        Problem::Vsep | Problem::Esep => Certificate::MaxComponentSize(worst),
        Problem::Ssep => Certificate::MaxRedCount(worst),
        Problem::Ptrans => Certificate::LongestPath(worst),
    };
    Ok(VerificationReport { feasible: violations.is_empty(), certificate, violations })
}

/// Minimum set `S` with every component of `gc - S` on at most `k`
/// vertices, by enumeration in increasing `|S|`. Guarded to `n <= 4k`.
pub fn exact_component_vsep(gc: &Graph, k: usize) -> Result<Vec<usize>> {
    let n = gc.n();
    if n > 4 * k.max(1) {
        return Err(Error::Guard(format!("exact vertex separator limited to 4k = {} vertices, got {n}", 4 * k)));
    }
    smallest_feasible_set(n, |s| connected_components(gc, s, &[]).max_size() <= k)
}

/// Minimum vertex set leaving every component of `gc` with at most `k` red
/// vertices, by enumeration in increasing size.
pub fn exact_component_ssep(gc: &Graph, red: &[usize], k: usize) -> Result<Vec<usize>> {
    let n = gc.n();
    if n > SSEP_EXACT_MAX_N {
        return Err(Error::Guard(format!("exact subset separator limited to {SSEP_EXACT_MAX_N} vertices, got {n}")));
    }
    smallest_feasible_set(n, |s| connected_components(gc, s, &[]).with_red(red).max_red() <= k)
}

fn smallest_feasible_set(n: usize, mut feasible: impl FnMut(&[usize]) -> bool) -> Result<Vec<usize>> {
    for size in 0..=n {
        for s in (0..n).combinations(size) {
            if feasible(&s) {
                return Ok(s);
            }
        }
    }
    Err(Error::Internal("removing every vertex must be feasible".into()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedCut {
    /// Cut edge ids of `gc`.
    pub edges: Vec<usize>,
    /// The side `S`, sorted.
    pub side: Vec<usize>,
    pub sizes: (usize, usize),
}

/// Exact minimum edge cut over all `S` with `ceil(bn) <= |S| <= floor((1-b)n)`
/// where `b = b_num / b_den` lies in `(0, 1/2]`.
pub fn exact_balanced_bcut(gc: &Graph, b_num: usize, b_den: usize) -> Result<BalancedCut> {
    let n = gc.n();
    if b_den == 0 || b_num == 0 || 2 * b_num > b_den {
        return Err(Error::InvalidInput(format!("balance {b_num}/{b_den} outside (0, 1/2]")));
    }
    if n > BCUT_MAX_N {
        return Err(Error::Guard(format!("balanced cut enumeration limited to {BCUT_MAX_N} vertices, got {n}")));
    }
    let lo = (b_num * n).div_ceil(b_den);
    let hi = (b_den - b_num) * n / b_den;
    if n == 0 || lo > hi {
        return Err(Error::InvalidInput(format!("no side size in [{lo}, {hi}] for n = {n}")));
    }
    let edges = gc.edges();
    let mut best: Option<(usize, u32)> = None;
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size < lo || size > hi {
            continue;
        }
        let cut = edges.iter().filter(|&&(u, v)| (mask >> u & 1) != (mask >> v & 1)).count();
        if best.is_none_or(|(c, _)| cut < c) {
            best = Some((cut, mask));
        }
    }
    let (_, mask) = best.expect("range is non-empty");
    let side: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
    let cut_edges = (0..gc.m())
        .filter(|&e| {
            let (u, v) = gc.edge(e);
            (mask >> u & 1) != (mask >> v & 1)
        })
        .collect();
    Ok(BalancedCut { edges: cut_edges, sizes: (side.len(), n - side.len()), side })
}

fn component_members(g: &Graph, partial: &DecompositionResult) -> Vec<Vec<usize>> {
    debug_assert_eq!(partial.labeling.label.len(), g.n());
    partial.labeling.members()
}

fn finish(g: &Graph, problem: Problem, k: usize, red: &[usize], partial: &DecompositionResult, extra: Vec<usize>) -> Result<SeparatorSolution> {
    let rounding = partial.removed.len();
    let mut removed: Vec<usize> = partial.removed.iter().chain(&partial.heavy_removed).chain(&extra).copied().collect();
    removed.sort_unstable();
    let before = removed.len();
    removed.dedup();
    if removed.len() != before {
        return Err(Error::Internal("cleanup removed an element twice".into()));
    }
    let report = verify_solution(g, problem, k, red, &removed)?;
    if !report.feasible {
        return Err(Error::Verification(format!("{} cleanup left {} violating component(s)", problem.name(), report.violations.len())));
    }
    let costs = Costs { heavy: partial.heavy_removed.len(), rounding, cleanup: extra.len(), total: removed.len() };
    Ok(SeparatorSolution { problem, k, removed, certificate: report.certificate, costs })
}

/// Exact per-component vertex separators on top of a decomposition.
pub fn vsep_cleanup(g: &Graph, partial: &DecompositionResult, k: usize) -> Result<SeparatorSolution> {
    let mut extra = Vec::new();
    for members in component_members(g, partial) {
        if members.len() > k {
            let local = exact_component_vsep(&g.induced(&members), k)?;
            extra.extend(local.into_iter().map(|i| members[i]));
        }
    }
    finish(g, Problem::Vsep, k, &[], partial, extra)
}

/// Per-component cleanup for the subset problem: exact for components up to
/// [`SSEP_EXACT_MAX_N`] vertices, otherwise the surplus red vertices with
/// the largest ids are removed.
pub fn ssep_cleanup(g: &Graph, partial: &DecompositionResult, red: &[usize], k: usize) -> Result<SeparatorSolution> {
    let mut is_red = vec![false; g.n()];
    for &r in red {
        is_red[r] = true;
    }
    let mut extra = Vec::new();
    for members in component_members(g, partial) {
        let reds: Vec<usize> = members.iter().copied().filter(|&v| is_red[v]).collect();
        if reds.len() <= k {
            continue;
        }
        if members.len() <= SSEP_EXACT_MAX_N {
            let local_red: Vec<usize> = (0..members.len()).filter(|&i| is_red[members[i]]).collect();
            let local = exact_component_ssep(&g.induced(&members), &local_red, k)?;
            extra.extend(local.into_iter().map(|i| members[i]));
        } else {
            extra.extend_from_slice(&reds[k..]);
        }
    }
    finish(g, Problem::Ssep, k, red, partial, extra)
}

/// Splits one oversized component by exact balanced cuts. Sides still above
/// `k` are split again; at most two levels are expected.
fn split_component(g: &Graph, members: &[usize], k: usize, depth: usize, out: &mut Vec<usize>) -> Result<()> {
    assert!(depth <= 2, "balanced-cut recursion deeper than 2");
    let s = members.len();
    let gc = g.induced(members);
    let cut = exact_balanced_bcut(&gc, s - k, s)?;
    for &e in &cut.edges {
        let (a, b) = gc.edge(e);
        out.push(g.edge_id(members[a], members[b]).expect("induced edge exists"));
    }
    let rest = connected_components(&gc, &[], &cut.edges);
    for part in rest.members() {
        if part.len() > k {
            let global: Vec<usize> = part.iter().map(|&i| members[i]).collect();
            split_component(g, &global, k, depth + 1, out)?;
        }
    }
    Ok(())
}

/// Edge cleanup: each component of size `k' > k` gets one exact balanced
/// cut with `b = (k' - k)/k'`, which leaves both sides within `k`.
/// Components must have at most `ceil(3k/2)` vertices.
pub fn esep_cleanup(g: &Graph, partial: &DecompositionResult, k: usize) -> Result<SeparatorSolution> {
    let cap = (3 * k).div_ceil(2);
    let mut extra = Vec::new();
    for members in component_members(g, partial) {
        if members.len() > cap {
            return Err(Error::Guard(format!("component of {} vertices exceeds ceil(3k/2) = {cap}", members.len())));
        }
        if members.len() > k {
            split_component(g, &members, k, 1, &mut extra)?;
        }
    }
    extra.sort_unstable();
    finish(g, Problem::Esep, k, &[], partial, extra)
}
