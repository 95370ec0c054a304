//! Spreading-metric relaxations for the three separator problems and the
//! initial path-transversal LP.
//!
//! The compact LPs follow the textbook layout with explicit distance and
//! proximity variables:
//!
//! * lengths `x` (one per vertex, or one per edge in edge mode),
//! * `d[u][v]` for every ordered pair, tied to `x` by `d[u][u] = x_u`
//!   (edge mode: `0`) and `d[u][w] <= d[u][v] + len(v, w)` along every edge,
//! * `f[u][v] >= 1 - d[u][v]`, `f >= 0`,
//! * radius rows `sum_u f[v][u] <= k` (subset mode sums over red `u` only).
//!
//! They have `O(n^2)` columns and `O(nm)` rows, which the dense simplex
//! handles for small graphs only. [`LpRoute::Projected`] solves the same
//! relaxation over `x` alone: for fixed `x` the best `d` is the shortest-path
//! metric and the best `f` is `max(1 - d, 0)`, so each radius row becomes the
//! convex piecewise-linear constraint `sum_u max(1 - dist_x(v, u), 0) <= k`.
//! It is enforced by row generation, one supporting cut per violated centre,
//! read off the centre's shortest-path tree. Both routes have the same
//! optimum; the tests check this on small graphs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lp::{lp_solve, lp_solve_with_separation, LinearProgram, LpSolution, LpStatus, Row, TOL_FEAS, TOL_SEPARATION};
use crate::paths::{edge_weighted_apsp, shortest_path_tree, vertex_weighted_apsp, DistanceMatrix, Lengths};

/// Slack allowed on radius rows after normalization.
pub const RADIUS_TOL: f64 = 1e-6;
/// Bisection steps when repairing an LP point into a feasible core.
const REPAIR_STEPS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Vertex,
    Edge,
    Subset,
}

impl Mode {
    /// Number of length variables for this mode on `g`.
    pub fn num_lengths(self, g: &Graph) -> usize {
        match self {
            Mode::Edge => g.m(),
            Mode::Vertex | Mode::Subset => g.n(),
        }
    }
}

/// How the relaxation is solved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LpRoute {
    /// Row generation over the length variables only.
    #[default]
    Projected,
    /// The full compact LP with explicit `d` and `f` columns.
    Compact,
}

/// Column layout of the compact LPs.
#[derive(Debug, Clone, Copy)]
pub struct CompactLayout {
    pub lengths: usize,
    pub n: usize,
}

impl CompactLayout {
    pub fn of(g: &Graph, mode: Mode) -> Self {
        Self { lengths: mode.num_lengths(g), n: g.n() }
    }

    pub fn x(&self, i: usize) -> usize {
        i
    }

    pub fn d(&self, u: usize, v: usize) -> usize {
        self.lengths + u * self.n + v
    }

    pub fn f(&self, u: usize, v: usize) -> usize {
        self.lengths + self.n * self.n + u * self.n + v
    }

    pub fn num_vars(&self) -> usize {
        self.lengths + 2 * self.n * self.n
    }
}

fn check_k(k: usize, min: usize) -> Result<()> {
    if k < min {
        return Err(Error::InvalidInput(format!("size bound k must be at least {min}, got {k}")));
    }
    Ok(())
}

/// Sorted, deduplicated red set; errors if any id is outside the graph.
pub fn normalize_red(g: &Graph, red: &[usize]) -> Result<Vec<usize>> {
    if let Some(&v) = red.iter().find(|&&v| v >= g.n()) {
        return Err(Error::InvalidInput(format!("red vertex {v} is not a vertex of the graph (n = {})", g.n())));
    }
    let mut r = red.to_vec();
    r.sort_unstable();
    r.dedup();
    Ok(r)
}

fn build_compact(g: &Graph, mode: Mode, k: usize, red: Option<&[usize]>) -> LinearProgram {
    let n = g.n();
    let lay = CompactLayout::of(g, mode);
    let mut lp = LinearProgram::new(lay.num_vars());
    for i in 0..lay.lengths {
        lp.set_cost(lay.x(i), 1.0);
    }
    for u in 0..n {
        match mode {
            Mode::Edge => lp.add_row(Row::eq(vec![(lay.d(u, u), 1.0)], 0.0)),
            _ => lp.add_row(Row::eq(vec![(lay.d(u, u), 1.0), (lay.x(u), -1.0)], 0.0)),
        }
        for (id, &(a, b)) in g.edges().iter().enumerate() {
            for (v, w) in [(a, b), (b, a)] {
                let len = match mode {
                    Mode::Edge => lay.x(id),
                    _ => lay.x(w),
                };
                lp.add_row(Row::le(vec![(lay.d(u, w), 1.0), (lay.d(u, v), -1.0), (len, -1.0)], 0.0));
            }
        }
    }
    for u in 0..n {
        for v in 0..n {
            lp.add_row(Row::ge(vec![(lay.f(u, v), 1.0), (lay.d(u, v), 1.0)], 1.0));
        }
    }
    let all: Vec<usize> = (0..n).collect();
    let scope = red.unwrap_or(&all);
    for v in 0..n {
        lp.add_row(Row::le(scope.iter().map(|&u| (lay.f(v, u), 1.0)).collect(), k as f64));
    }
    lp
}

/// Compact spreading-metric LP for k-Vertex Separator.
pub fn build_vertex_separator_lp(g: &Graph, k: usize) -> Result<LinearProgram> {
    check_k(k, 1)?;
    Ok(build_compact(g, Mode::Vertex, k, None))
}

/// Compact spreading-metric LP for k-Edge Separator (edge lengths,
/// `d[u][u] = 0`).
pub fn build_edge_separator_lp(g: &Graph, k: usize) -> Result<LinearProgram> {
    check_k(k, 1)?;
    Ok(build_compact(g, Mode::Edge, k, None))
}

/// Compact LP for k-Subset Vertex Separator: the vertex LP with radius rows
/// summing over `red` only. Proximity columns are kept for every pair.
pub fn build_subset_separator_lp(g: &Graph, red: &[usize], k: usize) -> Result<LinearProgram> {
    let red = normalize_red(g, red)?;
    check_k(k, 1)?;
    Ok(build_compact(g, Mode::Subset, k, Some(&red)))
}

/// Path-transversal LP before any path rows: one variable per vertex and
/// objective `sum x`. Rows `sum_{v in P} x_v >= 1` are added by separation.
pub fn build_path_lp_initial(g: &Graph, k: usize) -> Result<LinearProgram> {
    check_k(k, 2)?;
    let mut lp = LinearProgram::new(g.n());
    for v in 0..g.n() {
        lp.set_cost(v, 1.0);
    }
    Ok(lp)
}

/// A normalized fractional solution: lengths, the shortest-path metric they
/// induce, and proximities `f = max(1 - d, 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpreadingSolution {
    pub mode: Mode,
    pub k: usize,
    /// Vertex lengths (vertex/subset mode) or edge lengths by edge id.
    pub x: Vec<f64>,
    pub d: DistanceMatrix,
    /// Row-major `n x n` proximities.
    pub f: Vec<f64>,
    /// LP objective, `sum x`.
    pub frac: f64,
    /// Red vertices (subset mode; empty otherwise).
    pub red: Vec<usize>,
    /// Separation rounds used (0 for the compact route).
    pub rounds: usize,
}

impl SpreadingSolution {
    pub fn n(&self) -> usize {
        self.d.n()
    }

    pub fn proximity(&self, u: usize, v: usize) -> f64 {
        self.f[u * self.n() + v]
    }

    /// Left-hand side of the radius row centred at `v`.
    pub fn radius_sum(&self, v: usize) -> f64 {
        match self.mode {
            Mode::Subset => self.red.iter().map(|&u| self.proximity(v, u)).sum(),
            _ => (0..self.n()).map(|u| self.proximity(v, u)).sum(),
        }
    }
}

/// Builds the canonical `(x, d, f)` form from lengths alone and re-checks
/// every radius row.
pub fn spreading_from_lengths(g: &Graph, mode: Mode, k: usize, red: &[usize], x: Vec<f64>) -> Result<SpreadingSolution> {
    if x.len() != mode.num_lengths(g) {
        return Err(Error::InvalidInput(format!("expected {} lengths, got {}", mode.num_lengths(g), x.len())));
    }
    let x: Vec<f64> = x.into_iter().map(|v| v.max(0.0)).collect();
    let d = match mode {
        Mode::Edge => edge_weighted_apsp(g, &x),
        _ => vertex_weighted_apsp(g, &x),
    };
    let n = g.n();
    let mut f = vec![0.0; n * n];
    for u in 0..n {
        for (v, &duv) in d.row(u).iter().enumerate() {
            f[u * n + v] = (1.0 - duv).max(0.0);
        }
    }
    let frac = x.iter().sum();
    let red = if mode == Mode::Subset { normalize_red(g, red)? } else { Vec::new() };
    let sol = SpreadingSolution { mode, k, x, d, f, frac, red, rounds: 0 };
    for v in 0..n {
        let s = sol.radius_sum(v);
        if s > k as f64 + RADIUS_TOL {
            return Err(Error::Internal(format!("radius row at vertex {v} violated after normalization: {s} > {k}")));
        }
    }
    Ok(sol)
}

/// Normalizes a raw LP optimum. Both solve routes put the length variables
/// first, so only the leading `x` block of `raw` is read.
pub fn normalize_solution(g: &Graph, raw: &LpSolution, mode: Mode, k: usize, red: &[usize]) -> Result<SpreadingSolution> {
    if raw.status != LpStatus::Optimal {
        return Err(Error::InvalidInput(format!("cannot normalize a {:?} LP solution", raw.status)));
    }
    let len = mode.num_lengths(g);
    if raw.values.len() < len {
        return Err(Error::InvalidInput("LP solution has fewer values than length variables".into()));
    }
    spreading_from_lengths(g, mode, k, red, raw.values[..len].to_vec())
}

/// Supporting cuts of the projected radius constraints at `x`: one row
/// per centre whose radius sum exceeds `k` by more than `tol`.
pub fn radius_cuts(g: &Graph, mode: Mode, k: usize, red: &[usize], x: &[f64], tol: f64) -> Vec<Row> {
    let n = g.n();
    let lengths = match mode {
        Mode::Edge => Lengths::Edge(x),
        _ => Lengths::Vertex(x),
    };
    let mut in_scope = vec![mode != Mode::Subset; n];
    if mode == Mode::Subset {
        for &r in red {
            in_scope[r] = true;
        }
    }
    let mut cuts = Vec::new();
    let mut count = vec![0usize; n];
    for v in 0..n {
        let tree = shortest_path_tree(g, lengths, v, None);
        let mut members = 0usize;
        let mut total = 0.0;
        for &u in &tree.settled {
            if in_scope[u] && tree.dist[u] < 1.0 {
                members += 1;
                total += 1.0 - tree.dist[u];
            }
        }
        if total <= k as f64 + tol {
            continue;
        }
        // Each coefficient counts the ball members whose tree path to the
        // centre uses that vertex (or edge).
        count.iter_mut().for_each(|c| *c = 0);
        let mut coeffs = Vec::new();
        for &u in tree.settled.iter().rev() {
            if in_scope[u] && tree.dist[u] < 1.0 {
                count[u] += 1;
            }
            if count[u] == 0 {
                continue;
            }
            match mode {
                Mode::Edge => {
                    if let Some((p, e)) = tree.parent[u] {
                        coeffs.push((e, count[u] as f64));
                        count[p] += count[u];
                    }
                }
                _ => {
                    coeffs.push((u, count[u] as f64));
                    if let Some((p, _)) = tree.parent[u] {
                        count[p] += count[u];
                    }
                }
            }
        }
        coeffs.sort_unstable_by_key(|&(j, _)| j);
        cuts.push(Row::ge(coeffs, members as f64 - k as f64));
    }
    cuts
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SpreadingConfig {
    pub route: LpRoute,
    /// Round cap for the projected route; defaults to `50 n`.
    pub max_rounds: Option<usize>,
}

/// Solves the relaxation for `mode` and returns its normalized solution.
/// When no component can exceed the bound (`k >= n`, or `k >= |red|` in
/// subset mode) the zero solution is returned without solving.
pub fn solve_spreading(g: &Graph, mode: Mode, k: usize, red: &[usize], cfg: SpreadingConfig) -> Result<SpreadingSolution> {
    check_k(k, 1)?;
    let red = if mode == Mode::Subset { normalize_red(g, red)? } else { Vec::new() };
    let trivial = match mode {
        Mode::Subset => k >= red.len(),
        _ => k >= g.n(),
    };
    if trivial {
        return spreading_from_lengths(g, mode, k, &red, vec![0.0; mode.num_lengths(g)]);
    }
    match cfg.route {
        LpRoute::Compact => {
            let lp = build_compact(g, mode, k, (mode == Mode::Subset).then_some(&red[..]));
            let raw = lp_solve(&lp, TOL_FEAS)?;
            if raw.status != LpStatus::Optimal {
                return Err(Error::Internal(format!("compact spreading LP ended {:?}", raw.status)));
            }
            normalize_solution(g, &raw, mode, k, &red)
        }
        LpRoute::Projected => solve_projected(g, mode, k, &red, cfg.max_rounds.unwrap_or(50 * g.n().max(1))),
    }
}

/// Whether `x` satisfies every radius row exactly.
fn radius_feasible(g: &Graph, mode: Mode, k: usize, red: &[usize], x: &[f64]) -> bool {
    radius_cuts(g, mode, k, red, x, 0.0).is_empty()
}

/// A feasible point near `x`: every length raised to at least the smallest
/// floor (to within `2^-REPAIR_STEPS`) that satisfies all radius rows. A
/// floor of 1 always works.
fn repair(g: &Graph, mode: Mode, k: usize, red: &[usize], x: &[f64]) -> Vec<f64> {
    let lift = |t: f64| x.iter().map(|&v| v.max(t)).collect::<Vec<f64>>();
    if radius_feasible(g, mode, k, red, x) {
        return x.to_vec();
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..REPAIR_STEPS {
        let mid = 0.5 * (lo + hi);
        if radius_feasible(g, mode, k, red, &lift(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    lift(hi)
}

/// Row generation over the lengths with in-out stabilization: cuts are
/// taken at the midpoint of the LP point and a feasible core point. The
/// core is the cheapest repaired LP point seen so far, or the midpoint
/// itself once that turns out feasible.
fn solve_projected(g: &Graph, mode: Mode, k: usize, red: &[usize], max_rounds: usize) -> Result<SpreadingSolution> {
    let mut lp = LinearProgram::new(mode.num_lengths(g));
    for i in 0..lp.num_vars {
        lp.set_cost(i, 1.0);
    }
    let mut core = vec![1.0; lp.num_vars];
    let mut core_cost = lp.num_vars as f64;
    let oracle = |x: &[f64]| {
        let fixed = repair(g, mode, k, red, x);
        let cost: f64 = fixed.iter().sum();
        if cost < core_cost {
            (core, core_cost) = (fixed, cost);
        }
        let mid: Vec<f64> = x.iter().zip(&core).map(|(a, b)| 0.5 * (a + b)).collect();
        let deep: Vec<Row> = radius_cuts(g, mode, k, red, &mid, TOL_SEPARATION)
            .into_iter()
            .filter(|r| r.violation(x) > TOL_SEPARATION)
            .collect();
        if !deep.is_empty() {
            return deep;
        }
        if radius_feasible(g, mode, k, red, &mid) {
            core_cost = mid.iter().sum();
            core = mid;
        }
        radius_cuts(g, mode, k, red, x, TOL_SEPARATION)
    };
    let out = lp_solve_with_separation(&lp, oracle, TOL_SEPARATION, max_rounds)?;
    if out.solution.status != LpStatus::Optimal {
        return Err(Error::Internal(format!("projected spreading LP ended {:?}", out.solution.status)));
    }
    let mut sol = normalize_solution(g, &out.solution, mode, k, red)?;
    sol.rounds = out.rounds;
    Ok(sol)
}

/// The integral point of the compact LP induced by a feasible removal set:
/// `x` is its indicator, `d` the induced shortest-path metric and `f` the
/// same-component indicator. Pairs in different components of `g` get
/// distance 1.
pub fn integral_assignment(g: &Graph, mode: Mode, removed: &[usize]) -> Vec<f64> {
    let lay = CompactLayout::of(g, mode);
    let mut values = vec![0.0; lay.num_vars()];
    for &r in removed {
        values[lay.x(r)] = 1.0;
    }
    let x = values[..lay.lengths].to_vec();
    let d = match mode {
        Mode::Edge => edge_weighted_apsp(g, &x),
        _ => vertex_weighted_apsp(g, &x),
    };
    let (vgone, egone): (Vec<usize>, Vec<usize>) = match mode {
        Mode::Edge => (Vec::new(), removed.to_vec()),
        _ => (removed.to_vec(), Vec::new()),
    };
    let lab = crate::graph::connected_components(g, &vgone, &egone);
    let n = g.n();
    for u in 0..n {
        for v in 0..n {
            let duv = d.get(u, v);
            values[lay.d(u, v)] = if duv.is_finite() { duv } else { 1.0 };
            let same = lab.label[u] != crate::graph::REMOVED && lab.label[u] == lab.label[v];
            values[lay.f(u, v)] = if same { 1.0 } else { 0.0 };
        }
    }
    values
}
