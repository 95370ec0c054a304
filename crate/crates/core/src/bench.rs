//! Benchmark suites: a JSON list of instance families, solved per seed and
//! compared against brute-force optima where those are affordable.
//!
//! ```json
//! { "instances": [
//!     { "name": "gnp", "graph": { "kind": "random", "n": 20, "p": 0.15 },
//!       "problem": "vsep", "k": [3], "seeds": 10 },
//!     { "graph": { "kind": "clique", "n": 9 }, "problem": "ptrans", "k": 3, "seeds": [1] }
//! ] }
//! ```
//!
//! `seeds` is a count (seeds `0..count`) or an explicit list. Random graphs
//! are drawn with the run seed, so each seed is a fresh instance. `ssep`
//! entries take `red`, defaulting to the even vertices.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::brute::{brute_ptrans, brute_ssep, brute_vsep, esep_partition_dp, BRUTE_MAX_N, BRUTE_PTRANS_MAX_N, PARTITION_DP_MAX_N};
use crate::cleanup::{verify_solution, Problem};
use crate::error::{Error, Result};
use crate::graph::{gen_graph, parse_graph, Graph, GraphKind};
use crate::pipeline::{solve, SolveConfig, Timings, DEFAULT_TRIALS};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GraphSpec {
    Random { n: usize, p: f64 },
    Clique { n: usize },
    Cycle { n: usize },
    Path { n: usize },
    Star { leaves: usize },
    File { path: PathBuf },
}

impl GraphSpec {
    pub fn build(&self, seed: u64) -> Result<Graph> {
        let kind = match *self {
            GraphSpec::Random { n, p } => GraphKind::RandomGnp { n, p },
            GraphSpec::Clique { n } => GraphKind::Clique { n },
            GraphSpec::Cycle { n } => GraphKind::Cycle { n },
            GraphSpec::Path { n } => GraphKind::Path { n },
            GraphSpec::Star { leaves } => GraphKind::Star { leaves },
            GraphSpec::File { ref path } => return parse_graph(&std::fs::read_to_string(path)?),
        };
        gen_graph(kind, seed)
    }

    fn label(&self) -> String {
        match self {
            GraphSpec::Random { n, p } => format!("G({n},{p})"),
            GraphSpec::Clique { n } => format!("K{n}"),
            GraphSpec::Cycle { n } => format!("C{n}"),
            GraphSpec::Path { n } => format!("P{n}"),
            GraphSpec::Star { leaves } => format!("S{leaves}"),
            GraphSpec::File { path } => path.display().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany {
    One(usize),
    Many(Vec<usize>),
}

impl OneOrMany {
    fn values(&self) -> Vec<usize> {
        match self {
            OneOrMany::One(k) => vec![*k],
            OneOrMany::Many(ks) => ks.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Seeds {
    Count(u64),
    List(Vec<u64>),
}

impl Seeds {
    fn values(&self) -> Vec<u64> {
        match self {
            Seeds::Count(c) => (0..*c).collect(),
            Seeds::List(s) => s.clone(),
        }
    }
}

fn one_seed() -> Seeds {
    Seeds::Count(1)
}

fn default_trials() -> usize {
    DEFAULT_TRIALS
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct InstanceSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub graph: GraphSpec,
    pub problem: Problem,
    pub k: OneOrMany,
    #[serde(default = "one_seed")]
    pub seeds: Seeds,
    #[serde(default)]
    pub epsilon: Option<f64>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub red: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
pub struct Suite {
    #[serde(default)]
    pub instances: Vec<InstanceSpec>,
}

impl Suite {
    pub fn parse(text: &str) -> Result<Suite> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub instance: String,
    pub problem: Problem,
    pub k: usize,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub frac: Option<f64>,
    pub opt: Option<usize>,
    pub cost: Option<usize>,
    /// `cost / opt`, when the optimum is known and positive.
    pub ratio: Option<f64>,
    pub feasible: bool,
    pub times_ms: Timings,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Aggregates {
    pub rows: usize,
    pub feasible: usize,
    pub failures: usize,
    pub mean_frac: Option<f64>,
    pub mean_cost: Option<f64>,
    pub mean_ratio: Option<f64>,
    pub max_ratio: Option<f64>,
    /// Mean of `cost / frac` over rows with a positive LP value.
    pub mean_cost_over_frac: Option<f64>,
    /// Rows where `frac <= opt <= cost` failed.
    pub sandwich_violations: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct BenchReport {
    pub schema: u32,
    pub rows: Vec<BenchRow>,
    pub aggregates: Aggregates,
}

/// Brute-force optimum, when the instance is within the oracle guards.
pub fn brute_opt(g: &Graph, problem: Problem, k: usize, red: &[usize]) -> Option<usize> {
    match problem {
        Problem::Vsep if g.n() <= BRUTE_MAX_N => brute_vsep(g, k).ok().map(|s| s.len()),
        Problem::Esep if g.n() <= PARTITION_DP_MAX_N => esep_partition_dp(g, k).ok(),
        Problem::Ssep if g.n() <= BRUTE_MAX_N => brute_ssep(g, red, k).ok().map(|s| s.len()),
        Problem::Ptrans if g.n() <= BRUTE_PTRANS_MAX_N => brute_ptrans(g, k).ok().map(|s| s.len()),
        _ => None,
    }
}

fn mean(xs: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, count) = xs.fold((0.0, 0usize), |(s, c), x| (s + x, c + 1));
    (count > 0).then(|| sum / count as f64)
}

fn run_row(spec: &InstanceSpec, label: &str, k: usize, seed: u64) -> BenchRow {
    let mut row = BenchRow {
        instance: label.to_string(),
        problem: spec.problem,
        k,
        seed,
        n: 0,
        m: 0,
        frac: None,
        opt: None,
        cost: None,
        ratio: None,
        feasible: false,
        times_ms: Timings::default(),
        error: None,
    };
    let g = match spec.graph.build(seed) {
        Ok(g) => g,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    (row.n, row.m) = (g.n(), g.m());
    let red: Vec<usize> = match &spec.red {
        Some(r) => r.clone(),
        None if spec.problem == Problem::Ssep => (0..g.n()).step_by(2).collect(),
        None => Vec::new(),
    };
    let cfg = SolveConfig { epsilon: spec.epsilon, seed, trials: spec.trials, red: red.clone(), ..SolveConfig::new(spec.problem, k) };
    match solve(&g, &cfg) {
        Ok(rep) => {
            row.frac = Some(rep.frac);
            row.cost = Some(rep.costs.total);
            row.times_ms = rep.times_ms;
            row.feasible = verify_solution(&g, spec.problem, k, &red, &rep.removed).is_ok_and(|v| v.feasible);
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row.opt = brute_opt(&g, spec.problem, k, &red);
    if let (Some(c), Some(o)) = (row.cost, row.opt) {
        row.ratio = (o > 0).then(|| c as f64 / o as f64);
    }
    row
}

pub fn aggregate(rows: &[BenchRow]) -> Aggregates {
    let solved = || rows.iter().filter(|r| r.cost.is_some());
    let ratios: Vec<f64> = rows.iter().filter_map(|r| r.ratio).collect();
    let sandwich_violations = rows
        .iter()
        .filter(|r| match (r.frac, r.opt, r.cost) {
            (Some(f), Some(o), Some(c)) => f > o as f64 + 1e-6 || o > c,
            _ => false,
        })
        .count();
    Aggregates {
        rows: rows.len(),
        feasible: rows.iter().filter(|r| r.feasible).count(),
        failures: rows.iter().filter(|r| r.error.is_some()).count(),
        mean_frac: mean(solved().filter_map(|r| r.frac)),
        mean_cost: mean(solved().filter_map(|r| r.cost.map(|c| c as f64))),
        mean_ratio: mean(ratios.iter().copied()),
        max_ratio: ratios.iter().copied().reduce(f64::max),
        mean_cost_over_frac: mean(solved().filter(|r| r.frac > Some(1e-9)).map(|r| r.cost.unwrap() as f64 / r.frac.unwrap())),
        sandwich_violations,
    }
}

/// Runs every (instance, k, seed) combination in suite order. Failures are
/// recorded in the row rather than aborting the run.
pub fn run_suite(suite: &Suite) -> BenchReport {
    let mut rows = Vec::new();
    for spec in &suite.instances {
        let label = spec.name.clone().unwrap_or_else(|| spec.graph.label());
        for k in spec.k.values() {
            for seed in spec.seeds.values() {
                rows.push(run_row(spec, &label, k, seed));
            }
        }
    }
    let aggregates = aggregate(&rows);
    BenchReport { schema: crate::pipeline::SCHEMA_VERSION, rows, aggregates }
}

fn opt_f(x: Option<f64>) -> String {
    x.map_or("-".into(), |v| format!("{v:.3}"))
}

fn opt_u(x: Option<usize>) -> String {
    x.map_or("-".into(), |v| v.to_string())
}

impl BenchReport {
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<16} {:<7} {:>3} {:>6} {:>4} {:>5} {:>9} {:>5} {:>5} {:>6} {:>4} {:>10}",
            "instance", "problem", "k", "seed", "n", "m", "frac", "opt", "cost", "ratio", "ok", "ms"
        );
        for r in &self.rows {
            let ms = r.times_ms.lp + r.times_ms.rounding + r.times_ms.cleanup;
            let _ = writeln!(
                out,
                "{:<16} {:<7} {:>3} {:>6} {:>4} {:>5} {:>9} {:>5} {:>5} {:>6} {:>4} {:>10.1}{}",
                r.instance,
                r.problem.name(),
                r.k,
                r.seed,
                r.n,
                r.m,
                opt_f(r.frac),
                opt_u(r.opt),
                opt_u(r.cost),
                opt_f(r.ratio),
                if r.feasible { "yes" } else { "no" },
                ms,
                r.error.as_ref().map_or(String::new(), |e| format!("  error: {e}"))
            );
        }
        let a = &self.aggregates;
        let _ = writeln!(
            out,
            "rows {} feasible {} failures {} | mean frac {} mean cost {} mean ratio {} max ratio {} mean cost/frac {} | sandwich violations {}",
            a.rows,
            a.feasible,
            a.failures,
            opt_f(a.mean_frac),
            opt_f(a.mean_cost),
            opt_f(a.mean_ratio),
            opt_f(a.max_ratio),
            opt_f(a.mean_cost_over_frac),
            a.sandwich_violations
        );
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
