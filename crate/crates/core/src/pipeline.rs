//! End-to-end solvers: relaxation, rounding, cleanup and verification, with
//! a versioned JSON report.

use std::time::Instant;

use serde::Serialize;

use crate::cleanup::{esep_cleanup, ssep_cleanup, vsep_cleanup, Certificate, Costs, Problem};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kpath::DEFAULT_DELTA;
use crate::ldd::{decompose, DecompositionParams, TraceEntry};
use crate::spreading::{normalize_red, solve_spreading, LpRoute, SpreadingConfig};
use crate::transversal::{solve_ptrans, PtransParams, PTRANS_EPSILON};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_TRIALS: usize = 10;

/// Default decomposition parameter per problem.
pub fn default_epsilon(problem: Problem) -> f64 {
    match problem {
        Problem::Esep => 1.0 / 3.0,
        Problem::Vsep | Problem::Ssep | Problem::Ptrans => 0.25,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveConfig {
    pub problem: Problem,
    pub k: usize,
    /// `None` picks [`default_epsilon`]; ignored for `ptrans`.
    pub epsilon: Option<f64>,
    pub seed: u64,
    pub trials: usize,
    /// Red vertices for `ssep`.
    pub red: Vec<usize>,
    /// Color-coding failure budget for `ptrans`.
    pub delta: f64,
    /// Cutting-plane round cap; `None` uses the per-problem default.
    pub max_rounds: Option<usize>,
    pub route: LpRoute,
    pub trace: bool,
}

impl SolveConfig {
    pub fn new(problem: Problem, k: usize) -> Self {
        Self {
            problem,
            k,
            epsilon: None,
            seed: 0,
            trials: DEFAULT_TRIALS,
            red: Vec::new(),
            delta: DEFAULT_DELTA,
            max_rounds: None,
            route: LpRoute::Projected,
            trace: false,
        }
    }

    pub fn epsilon(&self) -> f64 {
        match self.problem {
            Problem::Ptrans => PTRANS_EPSILON,
            p => self.epsilon.unwrap_or_else(|| default_epsilon(p)),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Timings {
    pub lp: f64,
    pub rounding: f64,
    pub cleanup: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub schema: u32,
    pub problem: Problem,
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub frac: f64,
    pub costs: Costs,
    pub certificate: Certificate,
    pub removed: Vec<usize>,
    pub times_ms: Timings,
    pub seed: u64,
    pub epsilon: f64,
    pub trials: usize,
    pub trial_costs: Vec<usize>,
    pub chosen_trial: usize,
    pub lp_rounds: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub red_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceEntry>>,
}

impl SolveReport {
    /// The report with wall-clock fields zeroed, for reproducibility checks.
    pub fn without_timings(mut self) -> Self {
        self.times_ms = Timings::default();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Short human-readable summary.
    pub fn to_text(&self) -> String {
        let cert = match self.certificate {
            Certificate::MaxComponentSize(v) => format!("max component size {v}"),
            Certificate::MaxRedCount(v) => format!("max red count {v}"),
            Certificate::LongestPath(v) => format!("longest path {v}"),
        };
        format!(
            "problem {} k={} n={} m={}\nfrac {:.6}\ncost {} (heavy {}, rounding {}, cleanup {})\ntrials {:?}, chosen {}\ncertificate: {cert}\nremoved {:?}\n",
            self.problem.name(),
            self.k,
            self.n,
            self.m,
            self.frac,
            self.costs.total,
            self.costs.heavy,
            self.costs.rounding,
            self.costs.cleanup,
            self.trial_costs,
            self.chosen_trial,
            self.removed
        )
    }
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// Solves `cfg.problem` on `g` and returns a verified report.
pub fn solve(g: &Graph, cfg: &SolveConfig) -> Result<SolveReport> {
    if cfg.k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    if cfg.trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    let eps = cfg.epsilon();
    if cfg.problem == Problem::Ptrans {
        let params = PtransParams {
            seed: cfg.seed,
            trials: cfg.trials,
            delta: cfg.delta,
            max_rounds: cfg.max_rounds.unwrap_or(PtransParams::default().max_rounds),
        };
        let t = Instant::now();
        let out = solve_ptrans(g, cfg.k, &params)?;
        let total = ms(t);
        return Ok(SolveReport {
            schema: SCHEMA_VERSION,
            problem: cfg.problem,
            k: cfg.k,
            n: g.n(),
            m: g.m(),
            frac: out.state.frac,
            costs: out.solution.costs,
            certificate: out.solution.certificate,
            removed: out.solution.removed,
            times_ms: Timings { lp: total, rounding: 0.0, cleanup: 0.0 },
            seed: cfg.seed,
            epsilon: eps,
            trials: cfg.trials,
            trial_costs: Vec::new(),
            chosen_trial: 0,
            lp_rounds: out.state.lp_rounds,
            red_count: Some(out.state.red.len()),
            trace: None,
        });
    }

    let mode = cfg.problem.mode().expect("separator problems have a mode");
    let red = if cfg.problem == Problem::Ssep { normalize_red(g, &cfg.red)? } else { Vec::new() };
    let params = DecompositionParams { trace: cfg.trace, ..DecompositionParams::new(eps, cfg.seed, cfg.trials) };
    params.validate(mode)?;

    let t = Instant::now();
    let sol = solve_spreading(g, mode, cfg.k, &red, SpreadingConfig { route: cfg.route, max_rounds: cfg.max_rounds })?;
    let lp_ms = ms(t);

    let t = Instant::now();
    let dec = decompose(g, &sol, &params)?;
    let rounding_ms = ms(t);

    let t = Instant::now();
    let fin = match cfg.problem {
        Problem::Vsep => vsep_cleanup(g, &dec, cfg.k)?,
        Problem::Esep => esep_cleanup(g, &dec, cfg.k)?,
        Problem::Ssep => ssep_cleanup(g, &dec, &red, cfg.k)?,
        Problem::Ptrans => unreachable!(),
    };
    let cleanup_ms = ms(t);

    Ok(SolveReport {
        schema: SCHEMA_VERSION,
        problem: cfg.problem,
        k: cfg.k,
        n: g.n(),
        m: g.m(),
        frac: sol.frac,
        costs: fin.costs,
        certificate: fin.certificate,
        removed: fin.removed,
        times_ms: Timings { lp: lp_ms, rounding: rounding_ms, cleanup: cleanup_ms },
        seed: cfg.seed,
        epsilon: eps,
        trials: cfg.trials,
        trial_costs: dec.trial_costs,
        chosen_trial: dec.chosen_trial,
        lp_rounds: sol.rounds,
        red_count: (cfg.problem == Problem::Ssep).then_some(red.len()),
        trace: dec.trace,
    })
}
