//! Randomized low-diameter decomposition of a spreading metric.
//!
//! One trial draws a radius `X` uniformly from `[eps/2, eps]` and a random
//! scan order, then visits every centre `w` in that order against the
//! distance matrix computed once at the start. Vertices on the boundary of
//! the ball around `w` are removed, vertices strictly inside it are
//! disconnected and become owned by `w`. The scan never updates distances,
//! and it visits centres that are already removed or disconnected too.
//!
//! Randomness is consumed in a fixed order: first `X`, then the shuffle.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{connected_components, ComponentLabeling, Graph, REMOVED};
use crate::paths::{edge_weighted_apsp, vertex_weighted_apsp_without, DistanceMatrix};
use crate::rng::{trial_seed, Rng};
use crate::spreading::{Mode, SpreadingSolution};

/// Inclusive slack of the heavy-vertex threshold.
pub const HEAVY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecompositionParams {
    pub epsilon: f64,
    pub seed: u64,
    pub trials: usize,
    /// Record a per-centre log of every scan.
    pub trace: bool,
}

impl DecompositionParams {
    pub fn new(epsilon: f64, seed: u64, trials: usize) -> Self {
        Self { epsilon, seed, trials, trace: false }
    }

    pub fn validate(&self, mode: Mode) -> Result<()> {
        let ok = match mode {
            Mode::Edge => self.epsilon > 0.0 && self.epsilon <= 0.5,
            _ => self.epsilon > 0.0 && self.epsilon < 0.5,
        };
        if !ok {
            let range = if mode == Mode::Edge { "(0, 1/2]" } else { "(0, 1/2)" };
            return Err(Error::InvalidInput(format!("epsilon {} outside {range}", self.epsilon)));
        }
        if self.trials == 0 {
            return Err(Error::InvalidInput("trials must be at least 1".into()));
        }
        Ok(())
    }
}

/// One visited centre: what it removed and what it disconnected.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceEntry {
    pub center: usize,
    /// Vertex ids, or edge ids in edge mode.
    pub removed: Vec<usize>,
    pub disconnected: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionResult {
    pub mode: Mode,
    /// Vertices (vertex/subset mode) or edge ids (edge mode) cut by the scan.
    pub removed: Vec<usize>,
    /// Vertices pruned for having length at least `eps`.
    pub heavy_removed: Vec<usize>,
    /// Components of the residual graph, with red counts in subset mode.
    pub labeling: ComponentLabeling,
    pub cost: usize,
    pub chosen_x: f64,
    pub max_size: usize,
    pub max_red: usize,
    /// Owning centre of every disconnected vertex.
    pub owner: Vec<Option<usize>>,
    pub seed: u64,
    /// Costs of all trials when produced by [`best_of_trials`].
    pub trial_costs: Vec<usize>,
    pub chosen_trial: usize,
    pub trace: Option<Vec<TraceEntry>>,
}

fn ceil_ratio(k: usize, denom: f64) -> usize {
    let r = k as f64 / denom;
    // Absorb rounding in `1 - 2 eps` for eps like 1/3.
    (r - 1e-9).ceil().max(0.0) as usize
}

/// Per-component bound guaranteed by one trial: vertices in vertex and
/// edge mode, red vertices in subset mode.
pub fn component_bound(mode: Mode, k: usize, epsilon: f64) -> usize {
    match mode {
        Mode::Edge => ceil_ratio(k, 1.0 - epsilon),
        _ => ceil_ratio(k, 1.0 - 2.0 * epsilon),
    }
}

pub fn harmonic(p: usize) -> f64 {
    (1..=p).map(|i| 1.0 / i as f64).sum()
}

/// Upper bound on the expected cost of a single trial for an LP value
/// `frac`: `frac/eps + (2/eps) H_p frac` with `p = ceil(k/(1-2eps))`. Edge
/// mode has no pruning term and uses `p = ceil(2k/(1-eps))`.
pub fn expected_cost_bound(mode: Mode, k: usize, epsilon: f64, frac: f64) -> f64 {
    match mode {
        Mode::Edge => 2.0 / epsilon * harmonic(ceil_ratio(2 * k, 1.0 - epsilon)) * frac,
        _ => frac / epsilon + 2.0 / epsilon * harmonic(component_bound(mode, k, epsilon)) * frac,
    }
}

/// Vertices with length at least `epsilon` (up to [`HEAVY_TOL`]).
pub fn heavy_prune(sol: &SpreadingSolution, epsilon: f64) -> Vec<usize> {
    debug_assert!(sol.mode != Mode::Edge, "heavy pruning reads vertex lengths");
    let heavy: Vec<usize> = (0..sol.x.len()).filter(|&v| sol.x[v] >= epsilon - HEAVY_TOL).collect();
    let slack = sol.frac / epsilon + sol.x.len() as f64 * HEAVY_TOL / epsilon;
    debug_assert!(heavy.len() as f64 <= slack + 1e-6, "{} heavy vertices exceed frac/eps = {slack}", heavy.len());
    heavy
}

fn check_input(g: &Graph, sol: &SpreadingSolution, params: &DecompositionParams, mode: Mode) -> Result<()> {
    if sol.mode != mode {
        return Err(Error::InvalidInput(format!("{mode:?} decomposition given a {:?} solution", sol.mode)));
    }
    if sol.n() != g.n() || sol.x.len() != mode.num_lengths(g) {
        return Err(Error::InvalidInput("solution does not match the graph".into()));
    }
    params.validate(mode)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Alive,
    Heavy,
    Removed,
    Disconnected(usize),
}

fn draw(rng: &mut Rng, epsilon: f64) -> f64 {
    epsilon / 2.0 + rng.unit() * epsilon / 2.0
}

/// Checks the structural guarantees of a finished scan.
fn certify(
    g: &Graph,
    mode: Mode,
    k: usize,
    epsilon: f64,
    labeling: &ComponentLabeling,
    owner: &[Option<usize>],
    d: &DistanceMatrix,
    x: f64,
) -> Result<()> {
    for members in labeling.members() {
        let owners: Vec<Option<usize>> = members.iter().map(|&v| owner[v]).collect();
        if let Some(w) = owners.iter().flatten().next().copied() {
            for (&v, o) in members.iter().zip(&owners) {
                if *o != Some(w) {
                    return Err(Error::Internal(format!("vertex {v} shares a component with the ball of {w} but is not owned by it")));
                }
                let inside = match mode {
                    Mode::Edge => d.get(w, v) <= x,
                    _ => d.get(w, v) < x,
                };
                if !inside {
                    return Err(Error::Internal(format!("vertex {v} owned by {w} lies outside its ball")));
                }
            }
        }
    }
    let bound = component_bound(mode, k, epsilon);
    let worst = match mode {
        Mode::Subset => labeling.max_red(),
        _ => labeling.max_size(),
    };
    if worst > bound {
        return Err(Error::Internal(format!("residual component of weight {worst} exceeds the bound {bound} (n = {})", g.n())));
    }
    Ok(())
}

fn scan_vertex(g: &Graph, sol: &SpreadingSolution, params: &DecompositionParams, mode: Mode) -> Result<DecompositionResult> {
    check_input(g, sol, params, mode)?;
    let n = g.n();
    let heavy = heavy_prune(sol, params.epsilon);
    let mut state = vec![State::Alive; n];
    let mut blocked = vec![false; n];
    for &v in &heavy {
        state[v] = State::Heavy;
        blocked[v] = true;
    }
    let d = vertex_weighted_apsp_without(g, &sol.x, &blocked);
    let mut rng = Rng::new(params.seed);
    let x = draw(&mut rng, params.epsilon);
    let mut order: Vec<usize> = match mode {
        Mode::Subset => sol.red.iter().copied().filter(|&v| !blocked[v]).collect(),
        _ => (0..n).filter(|&v| !blocked[v]).collect(),
    };
    rng.shuffle(&mut order);

    let mut removed = Vec::new();
    let mut trace = params.trace.then(Vec::new);
    for &w in &order {
        let mut entry = TraceEntry { center: w, removed: Vec::new(), disconnected: Vec::new() };
        for v in 0..n {
            if state[v] != State::Alive {
                continue;
            }
            let dv = d.get(w, v);
            if !dv.is_finite() {
                continue;
            }
            if dv - sol.x[v] <= x && x <= dv {
                state[v] = State::Removed;
                removed.push(v);
                entry.removed.push(v);
            } else if dv < x {
                state[v] = State::Disconnected(w);
                entry.disconnected.push(v);
            }
        }
        if let Some(t) = trace.as_mut() {
            t.push(entry);
        }
    }
    for &w in &order {
        if state[w] == State::Alive {
            return Err(Error::Internal(format!("scanned vertex {w} ended neither removed nor disconnected")));
        }
    }
    removed.sort_unstable();
    let owner: Vec<Option<usize>> = state
        .iter()
        .map(|s| match s {
            State::Disconnected(w) => Some(*w),
            _ => None,
        })
        .collect();
    let mut gone = removed.clone();
    gone.extend_from_slice(&heavy);
    let mut labeling = connected_components(g, &gone, &[]);
    if mode == Mode::Subset {
        labeling = labeling.with_red(&sol.red);
    }
    certify(g, mode, sol.k, params.epsilon, &labeling, &owner, &d, x)?;
    Ok(DecompositionResult {
        mode,
        cost: removed.len() + heavy.len(),
        removed,
        heavy_removed: heavy,
        max_size: labeling.max_size(),
        max_red: labeling.max_red(),
        labeling,
        chosen_x: x,
        owner,
        seed: params.seed,
        trial_costs: Vec::new(),
        chosen_trial: 0,
        trace,
    })
}

/// One trial of the vertex-mode decomposition.
pub fn ldd_vertex(g: &Graph, sol: &SpreadingSolution, params: &DecompositionParams) -> Result<DecompositionResult> {
    scan_vertex(g, sol, params, Mode::Vertex)
}

/// One trial of the subset decomposition: the scan visits surviving red
/// vertices only, and only red counts are bounded.
pub fn ldd_subset(g: &Graph, sol: &SpreadingSolution, params: &DecompositionParams) -> Result<DecompositionResult> {
    scan_vertex(g, sol, params, Mode::Subset)
}

/// One trial of the edge decomposition. Each centre takes every vertex not
/// yet disconnected within distance `X` and cuts it off from the rest.
pub fn ldd_edge(g: &Graph, sol: &SpreadingSolution, params: &DecompositionParams) -> Result<DecompositionResult> {
    check_input(g, sol, params, Mode::Edge)?;
    let n = g.n();
    let d = edge_weighted_apsp(g, &sol.x);
    let mut rng = Rng::new(params.seed);
    let x = draw(&mut rng, params.epsilon);
    let mut order: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut order);

    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut cut = vec![false; g.m()];
    let mut removed = Vec::new();
    let mut trace = params.trace.then(Vec::new);
    let mut in_ball = vec![false; n];
    for &w in &order {
        let ball: Vec<usize> = (0..n).filter(|&v| owner[v].is_none() && d.get(w, v) <= x).collect();
        for &v in &ball {
            in_ball[v] = true;
        }
        let mut entry = TraceEntry { center: w, removed: Vec::new(), disconnected: ball.clone() };
        for &v in &ball {
            for (u, e) in g.incident(v) {
                if !in_ball[u] && owner[u].is_none() && !cut[e] {
                    cut[e] = true;
                    removed.push(e);
                    entry.removed.push(e);
                }
            }
        }
        for &v in &ball {
            in_ball[v] = false;
            owner[v] = Some(w);
        }
        if let Some(t) = trace.as_mut() {
            t.push(entry);
        }
    }
    if let Some(v) = (0..n).find(|&v| owner[v].is_none()) {
        return Err(Error::Internal(format!("vertex {v} was never disconnected")));
    }
    removed.sort_unstable();
    let labeling = connected_components(g, &[], &removed);
    certify(g, Mode::Edge, sol.k, params.epsilon, &labeling, &owner, &d, x)?;
    Ok(DecompositionResult {
        mode: Mode::Edge,
        cost: removed.len(),
        removed,
        heavy_removed: Vec::new(),
        max_size: labeling.max_size(),
        max_red: 0,
        labeling,
        chosen_x: x,
        owner,
        seed: params.seed,
        trial_costs: Vec::new(),
        chosen_trial: 0,
        trace,
    })
}

/// Runs `params.trials` independent trials and keeps the cheapest (the
/// earliest on ties). Trial `t` uses [`trial_seed`]`(params.seed, t)`.
pub fn best_of_trials<F>(runner: F, params: &DecompositionParams) -> Result<DecompositionResult>
where
    F: Fn(&DecompositionParams) -> Result<DecompositionResult>,
{
    if params.trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    let mut best: Option<DecompositionResult> = None;
    let mut costs = Vec::with_capacity(params.trials);
    for t in 0..params.trials {
        let p = DecompositionParams { seed: trial_seed(params.seed, t), trials: 1, ..*params };
        let mut r = runner(&p)?;
        costs.push(r.cost);
        if best.as_ref().is_none_or(|b| r.cost < b.cost) {
            r.chosen_trial = t;
            best = Some(r);
        }
    }
    let mut best = best.expect("at least one trial");
    best.trial_costs = costs;
    Ok(best)
}

/// Best-of-trials decomposition for whichever mode `sol` was solved in.
pub fn decompose(g: &Graph, sol: &SpreadingSolution, params: &DecompositionParams) -> Result<DecompositionResult> {
    match sol.mode {
        Mode::Vertex => best_of_trials(|p| ldd_vertex(g, sol, p), params),
        Mode::Subset => best_of_trials(|p| ldd_subset(g, sol, p), params),
        Mode::Edge => best_of_trials(|p| ldd_edge(g, sol, p), params),
    }
}

/// True when the scan and pruning removals are disjoint and no pruned
/// vertex appears in the residual labeling.
pub fn removed_set_is_disjoint(r: &DecompositionResult) -> bool {
    r.removed.iter().all(|v| !r.heavy_removed.contains(v)) && r.labeling.label.len() == r.owner.len()
        && r.heavy_removed.iter().all(|&v| r.labeling.label[v] == REMOVED)
}
