//! Minimum-weight simple paths on exactly `k` vertices.
//!
//! [`min_weight_kpath`] uses randomized color coding: each trial colors the
//! vertices with `k` colors uniformly at random and finds the lightest path
//! whose vertices have pairwise distinct colors by a DP over (color subset,
//! end vertex). A fixed path is colorful with probability `k!/k^k >= e^-k`,
//! so `ceil(e^k ln(1/delta))` trials miss the optimum with probability at
//! most `delta`. [`exact_min_weight_kpath`] is the deterministic DP over
//! vertex subsets used to check it.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::paths::is_simple_path;
use crate::rng::Rng;

pub const DEFAULT_DELTA: f64 = 1e-3;
/// Largest `k` accepted by the color-coding DP.
pub const MAX_COLORS: usize = 16;
/// Largest graph accepted by [`exact_min_weight_kpath`].
pub const EXACT_MAX_N: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColorCodingParams {
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    pub delta: f64,
}

/// `ceil(e^k ln(1/delta))`.
pub fn required_trials(k: usize, delta: f64) -> usize {
    ((k as f64).exp() * (1.0 / delta).ln()).ceil() as usize
}

impl ColorCodingParams {
    pub fn new(k: usize, seed: u64, delta: f64) -> Self {
        Self { k, trials: required_trials(k, delta), seed, delta }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 || self.k > MAX_COLORS {
            return Err(Error::InvalidInput(format!("color coding needs 2 <= k <= {MAX_COLORS}, got {}", self.k)));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::InvalidInput(format!("failure budget {} outside (0, 1)", self.delta)));
        }
        if self.trials < required_trials(self.k, self.delta) {
            return Err(Error::InvalidInput(format!(
                "{} trials is below ceil(e^k ln(1/delta)) = {}",
                self.trials,
                required_trials(self.k, self.delta)
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KPathResult {
    pub found: bool,
    /// Sum of `x` over the path; 0 when nothing was found.
    pub weight: f64,
    pub path: Vec<usize>,
}

impl KPathResult {
    fn none() -> Self {
        Self { found: false, weight: 0.0, path: Vec::new() }
    }
}

fn path_weight(x: &[f64], path: &[usize]) -> f64 {
    path.iter().map(|&v| x[v]).sum()
}

/// Verifies a DP witness and orients it so the smaller endpoint comes first.
fn witness(g: &Graph, x: &[f64], k: usize, mut path: Vec<usize>, weight: f64) -> KPathResult {
    if path.first() > path.last() {
        path.reverse();
    }
    assert!(path.len() == k && is_simple_path(g, &path), "invalid k-path witness {path:?}");
    let w = path_weight(x, &path);
    assert!((w - weight).abs() <= 1e-9 * (1.0 + w.abs()), "witness weight {w} differs from DP value {weight}");
    KPathResult { found: true, weight: w, path }
}

/// Colorful-path DP for one coloring. Returns the lightest colorful path,
/// ties going to the smaller end vertex and then the smaller predecessor.
fn colorful_best(g: &Graph, x: &[f64], k: usize, color: &[usize], dp: &mut [f64], pred: &mut [usize]) -> Option<(f64, Vec<usize>)> {
    let n = g.n();
    let full = (1usize << k) - 1;
    dp.iter_mut().for_each(|v| *v = f64::INFINITY);
    for v in 0..n {
        let m = 1 << color[v];
        dp[m * n + v] = x[v];
        pred[m * n + v] = usize::MAX;
    }
    for mask in 1..full {
        for v in 0..n {
            let cur = dp[mask * n + v];
            if !cur.is_finite() {
                continue;
            }
            for &u in g.neighbors(v) {
                let bit = 1 << color[u];
                if mask & bit != 0 {
                    continue;
                }
                let nm = mask | bit;
                let cand = cur + x[u];
                let slot = nm * n + u;
                if cand < dp[slot] || (cand == dp[slot] && v < pred[slot]) {
                    dp[slot] = cand;
                    pred[slot] = v;
                }
            }
        }
    }
    let end = (0..n).filter(|&v| dp[full * n + v].is_finite()).min_by(|&a, &b| dp[full * n + a].total_cmp(&dp[full * n + b]))?;
    let weight = dp[full * n + end];
    let mut path = Vec::with_capacity(k);
    let (mut mask, mut v) = (full, end);
    loop {
        path.push(v);
        let p = pred[mask * n + v];
        if p == usize::MAX {
            break;
        }
        mask &= !(1 << color[v]);
        v = p;
    }
    path.reverse();
    Some((weight, path))
}

/// Lightest simple path on `params.k` vertices under vertex weights `x`,
/// found with probability at least `1 - delta`. A reported path is always
/// real, so the weight never undercuts the true optimum.
pub fn min_weight_kpath(g: &Graph, x: &[f64], params: &ColorCodingParams) -> Result<KPathResult> {
    params.validate()?;
    if x.len() != g.n() {
        return Err(Error::InvalidInput(format!("expected {} vertex weights, got {}", g.n(), x.len())));
    }
    let (n, k) = (g.n(), params.k);
    if k > n {
        return Ok(KPathResult::none());
    }
    let mut sorted = x.to_vec();
    sorted.sort_by(f64::total_cmp);
    let floor: f64 = sorted[..k].iter().sum();

    let mut rng = Rng::new(params.seed);
    let mut color = vec![0usize; n];
    let mut dp = vec![0.0; (1 << k) * n];
    let mut pred = vec![0usize; (1 << k) * n];
    let mut best: Option<(f64, Vec<usize>)> = None;
    for _ in 0..params.trials {
        for c in color.iter_mut() {
            *c = rng.index(k);
        }
        if let Some((w, p)) = colorful_best(g, x, k, &color, &mut dp, &mut pred) {
            if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
                best = Some((w, p));
            }
        }
        if best.as_ref().is_some_and(|(bw, _)| *bw <= floor) {
            break;
        }
    }
    Ok(match best {
        Some((w, p)) => witness(g, x, k, p, w),
        None => KPathResult::none(),
    })
}

/// Existence test: some simple path on `params.k` vertices. A negative
/// answer is wrong with probability at most `delta`; a positive one carries
/// a verified witness.
pub fn find_kpath(g: &Graph, params: &ColorCodingParams) -> Result<KPathResult> {
    min_weight_kpath(g, &vec![0.0; g.n()], params)
}

/// Exact lightest `k`-vertex path by DP over (vertex subset, end vertex),
/// for graphs with at most [`EXACT_MAX_N`] vertices.
pub fn exact_min_weight_kpath(g: &Graph, x: &[f64], k: usize) -> Result<KPathResult> {
    let n = g.n();
    if n > EXACT_MAX_N {
        return Err(Error::Guard(format!("exact k-path DP limited to n <= {EXACT_MAX_N}, got {n}")));
    }
    if x.len() != n {
        return Err(Error::InvalidInput(format!("expected {n} vertex weights, got {}", x.len())));
    }
    if k == 0 || k > n {
        return Ok(KPathResult::none());
    }
    let size = 1usize << n;
    let mut dp = vec![f64::INFINITY; size * n];
    let mut pred = vec![usize::MAX; size * n];
    for v in 0..n {
        dp[(1 << v) * n + v] = x[v];
    }
    let mut best: Option<(f64, usize, usize)> = None;
    for mask in 1..size {
        let pc = mask.count_ones() as usize;
        if pc > k {
            continue;
        }
        for v in 0..n {
            let cur = dp[mask * n + v];
            if !cur.is_finite() {
                continue;
            }
            if pc == k {
                if best.is_none_or(|(bw, _, _)| cur < bw) {
                    best = Some((cur, mask, v));
                }
                continue;
            }
            for &u in g.neighbors(v) {
                if mask >> u & 1 == 1 {
                    continue;
                }
                let slot = (mask | 1 << u) * n + u;
                let cand = cur + x[u];
                if cand < dp[slot] {
                    dp[slot] = cand;
                    pred[slot] = v;
                }
            }
        }
    }
    let Some((w, mut mask, mut v)) = best else {
        return Ok(KPathResult::none());
    };
    let mut path = Vec::with_capacity(k);
    loop {
        path.push(v);
        let p = pred[mask * n + v];
        if p == usize::MAX {
            break;
        }
        mask &= !(1 << v);
        v = p;
    }
    path.reverse();
    Ok(witness(g, x, k, path, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{clique, cycle, gen_graph, path, star, GraphKind};
    use proptest::prelude::*;

    fn params(k: usize, seed: u64) -> ColorCodingParams {
        ColorCodingParams::new(k, seed, DEFAULT_DELTA)
    }

    /// Lightest k-path by plain DFS over all simple paths.
    fn dfs_min(g: &Graph, x: &[f64], k: usize) -> Option<f64> {
        fn go(g: &Graph, x: &[f64], k: usize, path: &mut Vec<usize>, used: &mut [bool], w: f64, best: &mut Option<f64>) {
            if path.len() == k {
                if best.is_none_or(|b| w < b) {
                    *best = Some(w);
                }
                return;
            }
            let last = *path.last().unwrap();
            for &u in g.neighbors(last) {
                if !used[u] {
                    used[u] = true;
                    path.push(u);
                    go(g, x, k, path, used, w + x[u], best);
                    path.pop();
                    used[u] = false;
                }
            }
        }
        let mut best = None;
        let mut used = vec![false; g.n()];
        for s in 0..g.n() {
            used[s] = true;
            go(g, x, k, &mut vec![s], &mut used, x[s], &mut best);
            used[s] = false;
        }
        best
    }

    #[test]
    fn color_coding_examples() {
        let r = min_weight_kpath(&path(5), &[0.5, 0.0, 0.0, 0.0, 0.5], &params(3, 1)).unwrap();
        assert_eq!((r.found, r.weight, r.path), (true, 0.0, vec![1, 2, 3]));
        let r = min_weight_kpath(&clique(4), &[0.5; 4], &params(2, 1)).unwrap();
        assert_eq!(r.weight, 1.0);
        let g = gen_graph(GraphKind::RandomGnp { n: 12, p: 0.4 }, 3).unwrap();
        let x: Vec<f64> = (0..12).map(|i| ((i * 7) % 5) as f64 / 10.0).collect();
        let a = min_weight_kpath(&g, &x, &params(4, 9)).unwrap();
        let b = exact_min_weight_kpath(&g, &x, 4).unwrap();
        assert!((a.weight - b.weight).abs() < 1e-12);
    }

    #[test]
    fn find_kpath_examples() {
        assert!(find_kpath(&cycle(6), &params(6, 2)).unwrap().found);
        assert!(!find_kpath(&star(5), &params(4, 2)).unwrap().found);
        assert!(!find_kpath(&clique(3), &params(4, 2)).unwrap().found);
    }

    #[test]
    fn exact_examples() {
        let x: Vec<f64> = (1..=5).map(|i| i as f64 / 10.0).collect();
        let r = exact_min_weight_kpath(&path(5), &x, 5).unwrap();
        assert!((r.weight - 1.5).abs() < 1e-12);
        assert_eq!(r.path.len(), 5);
        let r = exact_min_weight_kpath(&clique(3), &[0.1, 0.2, 0.3], 3).unwrap();
        assert!((r.weight - 0.6).abs() < 1e-12);
        assert!(!exact_min_weight_kpath(&Graph::empty(4), &[0.0; 4], 2).unwrap().found);
        assert!(matches!(exact_min_weight_kpath(&Graph::empty(17), &[0.0; 17], 2), Err(Error::Guard(_))));
    }

    #[test]
    fn params_validation() {
        assert_eq!(required_trials(3, 1e-3), 139);
        let mut p = params(3, 0);
        p.trials -= 1;
        assert!(p.validate().is_err());
        assert!(params(1, 0).validate().is_err());
        assert!(ColorCodingParams::new(3, 0, 1.5).validate().is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]
        #[test]
        fn exact_matches_dfs(n in 1usize..10, p in 0.2f64..0.8, gseed in 0u64..500, k in 1usize..6,
                             xs in proptest::collection::vec(0u32..8, 10)) {
            let g = gen_graph(GraphKind::RandomGnp { n, p }, gseed).unwrap();
            let x: Vec<f64> = xs[..n].iter().map(|&v| v as f64 / 8.0).collect();
            let r = exact_min_weight_kpath(&g, &x, k).unwrap();
            match dfs_min(&g, &x, k) {
                Some(w) => prop_assert!(r.found && (r.weight - w).abs() < 1e-12),
                None => prop_assert!(!r.found),
            }
        }

        #[test]
        fn power_of_two_scaling(n in 3usize..11, gseed in 0u64..500, k in 2usize..5, seed: u64, e in -4i32..5,
                                xs in proptest::collection::vec(0u32..16, 11)) {
            let g = gen_graph(GraphKind::RandomGnp { n, p: 0.4 }, gseed).unwrap();
            let x: Vec<f64> = xs[..n].iter().map(|&v| v as f64 / 16.0).collect();
            let c = 2f64.powi(e);
            let scaled: Vec<f64> = x.iter().map(|v| v * c).collect();
            let a = min_weight_kpath(&g, &x, &params(k, seed)).unwrap();
            let b = min_weight_kpath(&g, &scaled, &params(k, seed)).unwrap();
            prop_assert_eq!(&a.path, &b.path);
            prop_assert_eq!(a.weight * c, b.weight);
        }
    }
}
