//! k-Path Transversal: remove the fewest vertices so that no simple path
//! on `k` vertices survives.
//!
//! The pipeline solves the path LP (`min sum x` with `sum_{v in P} x_v >= 1`
//! for every `k`-path `P`) by row generation with the color-coding oracle,
//! calls vertices with `x_v >= 1/k` red, separates the red vertices into
//! groups of at most `2k^3` with the subset decomposition at `k^3` and
//! `eps = 1/4`, then solves each remaining component exactly by branching on
//! the vertices of a surviving `k`-path.

use crate::cleanup::{verify_solution, Certificate, Costs, Problem, SeparatorSolution};
use crate::error::{Error, Result};
use crate::graph::{connected_components, Graph};
use crate::kpath::{min_weight_kpath, ColorCodingParams, DEFAULT_DELTA};
use crate::ldd::{component_bound, decompose, DecompositionParams};
use crate::lp::{lp_solve_with_separation, LinearProgram, Row, TOL_SEPARATION};
use crate::paths::find_kpath_exhaustive;
use crate::rng::derive_seed;
use crate::spreading::{build_path_lp_initial, solve_spreading, Mode, SpreadingConfig};

/// Slack below `1/k` still classified red.
pub const RED_TOL: f64 = 1e-9;
pub const PTRANS_MAX_K: usize = 5;
/// Extra oracle runs with fresh seeds before a "no violated path" answer
/// is accepted.
pub const CONFIRMATIONS: usize = 2;
/// Decomposition radius parameter used for the red-vertex separation.
pub const PTRANS_EPSILON: f64 = 0.25;

const LP_STREAM: u64 = 0x7061_7468;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathLpParams {
    pub seed: u64,
    pub delta: f64,
    pub max_rounds: usize,
}

impl Default for PathLpParams {
    fn default() -> Self {
        Self { seed: 0, delta: DEFAULT_DELTA, max_rounds: 5000 }
    }
}

#[derive(Debug, Clone)]
pub struct PathLpSolution {
    pub x: Vec<f64>,
    pub frac: f64,
    pub rounds: usize,
    /// The LP with all generated path rows.
    pub lp: LinearProgram,
}

/// Solves the path LP by row generation. Each oracle call uses its own
/// seed; an empty answer is re-checked [`CONFIRMATIONS`] more times.
pub fn solve_path_lp(g: &Graph, k: usize, params: &PathLpParams) -> Result<PathLpSolution> {
    let lp = build_path_lp_initial(g, k)?;
    ColorCodingParams::new(k, 0, params.delta).validate()?;
    let base = derive_seed(params.seed, LP_STREAM);
    let mut calls = 0u64;
    let oracle = |x: &[f64]| -> Vec<Row> {
        for _ in 0..=CONFIRMATIONS {
            let cc = ColorCodingParams::new(k, derive_seed(base, calls), params.delta);
            calls += 1;
            let r = min_weight_kpath(g, x, &cc).expect("validated color-coding parameters");
            if r.found && r.weight < 1.0 - TOL_SEPARATION {
                let mut coeffs: Vec<(usize, f64)> = r.path.iter().map(|&v| (v, 1.0)).collect();
                coeffs.sort_unstable_by_key(|&(v, _)| v);
                return vec![Row::ge(coeffs, 1.0)];
            }
            if !r.found {
                break;
            }
        }
        Vec::new()
    };
    let out = lp_solve_with_separation(&lp, oracle, TOL_SEPARATION, params.max_rounds)?;
    let x: Vec<f64> = out.solution.values.iter().map(|v| v.max(0.0)).collect();
    let frac = x.iter().sum();
    Ok(PathLpSolution { x, frac, rounds: out.rounds, lp: out.lp })
}

/// Vertices with `x_v >= 1/k` (up to [`RED_TOL`]).
pub fn extract_red(x: &[f64], k: usize) -> Vec<usize> {
    let t = 1.0 / k as f64 - RED_TOL;
    (0..x.len()).filter(|&v| x[v] >= t).collect()
}

fn has_kpath(g: &Graph, removed: &[bool], k: usize) -> Option<Vec<usize>> {
    let keep: Vec<usize> = (0..g.n()).filter(|&v| !removed[v]).collect();
    let sub = g.induced(&keep);
    find_kpath_exhaustive(&sub, k).map(|p| p.into_iter().map(|i| keep[i]).collect())
}

/// Size of a greedy packing of vertex-disjoint `k`-paths; a lower bound on
/// the vertices still to remove.
fn packing_bound(g: &Graph, removed: &[bool], k: usize) -> usize {
    let mut used = removed.to_vec();
    let mut count = 0;
    while let Some(p) = has_kpath(g, &used, k) {
        for v in p {
            used[v] = true;
        }
        count += 1;
    }
    count
}

struct Branch<'a> {
    g: &'a Graph,
    k: usize,
    depth_limit: usize,
    best: Option<Vec<usize>>,
    nodes: usize,
}

impl Branch<'_> {
    fn run(&mut self, removed: &mut Vec<bool>, chosen: &mut Vec<usize>) {
        self.nodes += 1;
        let Some(path) = has_kpath(self.g, removed, self.k) else {
            if self.best.as_ref().is_none_or(|b| chosen.len() < b.len()) {
                self.best = Some(chosen.clone());
            }
            return;
        };
        if chosen.len() >= self.depth_limit {
            return;
        }
        let bound = chosen.len() + packing_bound(self.g, removed, self.k);
        if self.best.as_ref().is_some_and(|b| bound >= b.len()) {
            return;
        }
        for v in path {
            removed[v] = true;
            chosen.push(v);
            self.run(removed, chosen);
            chosen.pop();
            removed[v] = false;
        }
    }
}

/// Minimum vertex set of `gc` hitting every `k`-path, by branching on the
/// vertices of a surviving path with incumbent and packing-bound pruning.
/// `incumbent` seeds the search with a known feasible set. Returns `None`
/// only when no solution within `depth_limit` removals exists.
pub fn branch_component(gc: &Graph, k: usize, depth_limit: usize, incumbent: Option<Vec<usize>>) -> Result<Option<Vec<usize>>> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("path transversal needs k >= 2, got {k}")));
    }
    let incumbent = incumbent.filter(|s| {
        let mut mask = vec![false; gc.n()];
        for &v in s {
            mask[v] = true;
        }
        s.len() <= depth_limit && has_kpath(gc, &mask, k).is_none()
    });
    let mut b = Branch { g: gc, k, depth_limit, best: incumbent, nodes: 0 };
    b.run(&mut vec![false; gc.n()], &mut Vec::new());
    Ok(b.best.map(|mut s| {
        s.sort_unstable();
        s
    }))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtransParams {
    pub seed: u64,
    pub trials: usize,
    pub delta: f64,
    pub max_rounds: usize,
}

impl Default for PtransParams {
    fn default() -> Self {
        Self { seed: 0, trials: 10, delta: DEFAULT_DELTA, max_rounds: 5000 }
    }
}

#[derive(Debug, Clone)]
pub struct TransversalState {
    pub x: Vec<f64>,
    pub frac: f64,
    pub lp_rounds: usize,
    pub red: Vec<usize>,
    pub subset_sep_removed: Vec<usize>,
    /// Per residual component: its vertices and the branching solution.
    pub components: Vec<(Vec<usize>, Vec<usize>)>,
    pub removed: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct PtransOutcome {
    pub solution: SeparatorSolution,
    pub state: TransversalState,
}

/// The full k-Path Transversal pipeline for `2 <= k <= 5`.
pub fn solve_ptrans(g: &Graph, k: usize, params: &PtransParams) -> Result<PtransOutcome> {
    if !(2..=PTRANS_MAX_K).contains(&k) {
        return Err(Error::Guard(format!("path transversal supports 2 <= k <= {PTRANS_MAX_K}, got {k}")));
    }
    let n = g.n();
    let lp = solve_path_lp(g, k, &PathLpParams { seed: params.seed, delta: params.delta, max_rounds: params.max_rounds })?;
    let red = extract_red(&lp.x, k);
    let big = k * k * k;

    let mut subset_removed = Vec::new();
    let mut heavy = 0;
    let mut rounding = 0;
    if big < red.len() {
        let sol = solve_spreading(g, Mode::Subset, big, &red, SpreadingConfig { max_rounds: Some(50 * n.max(1) + params.max_rounds), ..Default::default() })?;
        let dp = DecompositionParams::new(PTRANS_EPSILON, params.seed, params.trials);
        let dec = decompose(g, &sol, &dp)?;
        let bound = component_bound(Mode::Subset, big, PTRANS_EPSILON);
        if dec.max_red > bound {
            return Err(Error::Internal(format!("red count {} exceeds {bound} after separation", dec.max_red)));
        }
        heavy = dec.heavy_removed.len();
        rounding = dec.removed.len();
        subset_removed = dec.removed.iter().chain(&dec.heavy_removed).copied().collect();
        subset_removed.sort_unstable();
    }

    let mut is_red = vec![false; n];
    for &r in &red {
        is_red[r] = true;
    }
    let labeling = connected_components(g, &subset_removed, &[]);
    let mut removed = subset_removed.clone();
    let mut components = Vec::new();
    let mut cleanup = 0;
    for members in labeling.members() {
        let gc = g.induced(&members);
        let local_red: Vec<usize> = (0..members.len()).filter(|&i| is_red[members[i]]).collect();
        let depth = 2 * big;
        let local = branch_component(&gc, k, depth, Some(local_red))?.ok_or_else(|| {
            Error::Internal(format!("no transversal within depth {depth} for a component of {} vertices", members.len()))
        })?;
        let global: Vec<usize> = local.iter().map(|&i| members[i]).collect();
        cleanup += global.len();
        removed.extend_from_slice(&global);
        components.push((members, global));
    }
    removed.sort_unstable();

    let report = verify_solution(g, Problem::Ptrans, k, &[], &removed)?;
    if !report.feasible {
        return Err(Error::Verification(format!("{} component(s) still contain a {k}-path", report.violations.len())));
    }
    debug_assert!(matches!(report.certificate, Certificate::LongestPath(l) if l < k));
    let solution = SeparatorSolution {
        problem: Problem::Ptrans,
        k,
        removed: removed.clone(),
        certificate: report.certificate,
        costs: Costs { heavy, rounding, cleanup, total: removed.len() },
    };
    let state = TransversalState {
        x: lp.x,
        frac: lp.frac,
        lp_rounds: lp.rounds,
        red,
        subset_sep_removed: subset_removed,
        components,
        removed,
    };
    Ok(PtransOutcome { solution, state })
}
