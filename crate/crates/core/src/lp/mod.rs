//! A small, deterministic linear-programming engine.
//!
//! [`lp_solve`] handles general minimization LPs over nonnegative variables
//! with a two-phase simplex on a dense tableau. [`lp_solve_with_separation`]
//! drives row generation against a separation oracle; for inequality LPs
//! with nonnegative costs and no upper bounds it keeps the dual LP warm
//! across rounds so each new cut costs only a few pivots.

mod format;
mod tableau;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use tableau::{Outcome, Tableau, PIVOT_TOL};

pub use format::to_lp_format;

/// Default primal feasibility tolerance.
pub const TOL_FEAS: f64 = 1e-7;
/// A row counts as violated during separation only beyond this margin.
pub const TOL_SEPARATION: f64 = 1e-6;
/// Cut columns of the warm dual whose primal slack exceeds this are dropped.
const PURGE_SLACK: f64 = 1e-7;
const PURGE_AGE: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Ge,
    Le,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub coeffs: Vec<(usize, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

impl Row {
    pub fn new(coeffs: Vec<(usize, f64)>, sense: Sense, rhs: f64) -> Self {
        Self { coeffs, sense, rhs }
    }

    pub fn ge(coeffs: Vec<(usize, f64)>, rhs: f64) -> Self {
        Self::new(coeffs, Sense::Ge, rhs)
    }

    pub fn le(coeffs: Vec<(usize, f64)>, rhs: f64) -> Self {
        Self::new(coeffs, Sense::Le, rhs)
    }

    pub fn eq(coeffs: Vec<(usize, f64)>, rhs: f64) -> Self {
        Self::new(coeffs, Sense::Eq, rhs)
    }

    pub fn activity(&self, values: &[f64]) -> f64 {
        self.coeffs.iter().map(|&(j, a)| a * values[j]).sum()
    }

    /// How far `values` is from satisfying the row (0 when satisfied).
    pub fn violation(&self, values: &[f64]) -> f64 {
        let lhs = self.activity(values);
        match self.sense {
            Sense::Ge => (self.rhs - lhs).max(0.0),
            Sense::Le => (lhs - self.rhs).max(0.0),
            Sense::Eq => (lhs - self.rhs).abs(),
        }
    }

}

/// `min c^T x` subject to the rows, `0 <= x <= upper`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<(usize, f64)>,
    pub rows: Vec<Row>,
    pub upper: Vec<Option<f64>>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        Self { num_vars, objective: Vec::new(), rows: Vec::new(), upper: vec![None; num_vars] }
    }

    pub fn set_cost(&mut self, var: usize, cost: f64) {
        self.objective.push((var, cost));
    }

    pub fn add_row(&mut self, row: Row) {
        self.rows.push(row);
    }

    pub fn set_upper(&mut self, var: usize, bound: f64) {
        self.upper[var] = Some(bound);
    }

    pub fn dense_cost(&self) -> Vec<f64> {
        let mut c = vec![0.0; self.num_vars];
        for &(j, v) in &self.objective {
            c[j] += v;
        }
        c
    }

    pub fn validate(&self) -> Result<()> {
        for (i, row) in self.rows.iter().enumerate() {
            if !row.rhs.is_finite() {
                return Err(Error::InvalidInput(format!("row {i} has non-finite rhs")));
            }
            if let Some(&(j, _)) = row.coeffs.iter().find(|&&(j, a)| j >= self.num_vars || !a.is_finite()) {
                return Err(Error::InvalidInput(format!("row {i} references bad coefficient at column {j}")));
            }
        }
        if self.objective.iter().any(|&(j, c)| j >= self.num_vars || !c.is_finite()) {
            return Err(Error::InvalidInput("objective references a bad column".into()));
        }
        if self.upper.len() != self.num_vars {
            return Err(Error::InvalidInput("upper bound vector has the wrong length".into()));
        }
        Ok(())
    }

    /// Inequality rows, nonnegative costs and no upper bounds: the form the
    /// warm dual of the separation loop accepts.
    fn warm_startable(&self) -> bool {
        self.upper.iter().all(Option::is_none) && self.rows.iter().all(|r| r.sense != Sense::Eq) && self.dense_cost().iter().all(|&c| c >= 0.0)
    }

    pub fn objective_value(&self, values: &[f64]) -> f64 {
        self.objective.iter().map(|&(j, c)| c * values[j]).sum()
    }

    /// Largest row or bound violation of `values`.
    pub fn max_violation(&self, values: &[f64]) -> f64 {
        let rows = self.rows.iter().map(|r| r.violation(values)).fold(0.0, f64::max);
        let bounds = values
            .iter()
            .zip(&self.upper)
            .map(|(&v, u)| (-v).max(u.map_or(0.0, |u| v - u)))
            .fold(0.0, f64::max);
        rows.max(bounds)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    /// The pivot budget ran out; never observed on well-scaled inputs.
    IterationLimit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpSolution {
    pub status: LpStatus,
    pub values: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
}

impl LpSolution {
    fn empty(status: LpStatus, num_vars: usize, iterations: usize) -> Self {
        Self { status, values: vec![0.0; num_vars], objective: 0.0, iterations }
    }
}

fn iteration_budget(rows: usize, cols: usize) -> usize {
    100_000 + 50 * (rows + cols)
}

/// Solves `lp` with a two-phase simplex. Infeasibility and unboundedness
/// are reported through [`LpSolution::status`].
pub fn lp_solve(lp: &LinearProgram, tol_feas: f64) -> Result<LpSolution> {
    lp.validate()?;
    let n = lp.num_vars;

    // Standard form rows with nonnegative right-hand sides.
    let mut std_rows: Vec<(Vec<(usize, f64)>, Sense, f64)> = Vec::with_capacity(lp.rows.len());
    for row in &lp.rows {
        let mut coeffs = row.coeffs.clone();
        let (mut sense, mut rhs) = (row.sense, row.rhs);
        if rhs < 0.0 {
            coeffs.iter_mut().for_each(|c| c.1 = -c.1);
            rhs = -rhs;
            sense = match sense {
                Sense::Ge => Sense::Le,
                Sense::Le => Sense::Ge,
                Sense::Eq => Sense::Eq,
            };
        }
        std_rows.push((coeffs, sense, rhs));
    }
    for (j, u) in lp.upper.iter().enumerate() {
        if let Some(u) = *u {
            if u < 0.0 {
                return Ok(LpSolution::empty(LpStatus::Infeasible, n, 0));
            }
            std_rows.push((vec![(j, 1.0)], Sense::Le, u));
        }
    }

    let m = std_rows.len();
    let slack_count = std_rows.iter().filter(|r| r.1 != Sense::Eq).count();
    let art_count = std_rows.iter().filter(|r| r.1 != Sense::Le).count();
    let cols = n + slack_count + art_count;
    let mut rows = vec![vec![0.0; cols]; m];
    let mut rhs = vec![0.0; m];
    let mut basis = vec![0; m];
    let mut is_art = vec![false; cols];
    let (mut next_slack, mut next_art) = (n, n + slack_count);
    for (i, (coeffs, sense, b)) in std_rows.iter().enumerate() {
        for &(j, a) in coeffs {
            rows[i][j] += a;
        }
        rhs[i] = *b;
        match sense {
            Sense::Le => {
                rows[i][next_slack] = 1.0;
                basis[i] = next_slack;
                next_slack += 1;
            }
            Sense::Ge => {
                rows[i][next_slack] = -1.0;
                next_slack += 1;
                rows[i][next_art] = 1.0;
                basis[i] = next_art;
                is_art[next_art] = true;
                next_art += 1;
            }
            Sense::Eq => {
                rows[i][next_art] = 1.0;
                basis[i] = next_art;
                is_art[next_art] = true;
                next_art += 1;
            }
        }
    }
    let mut t = Tableau::new(rows, rhs, basis, cols);
    let budget = iteration_budget(m, cols);

    if art_count > 0 {
        let phase1: Vec<f64> = is_art.iter().map(|&a| if a { 1.0 } else { 0.0 }).collect();
        t.set_objective(&phase1);
        match t.primal_simplex(budget) {
            Outcome::Optimal => {}
            Outcome::IterationLimit => return Ok(LpSolution::empty(LpStatus::IterationLimit, n, t.iterations)),
            Outcome::Unbounded => unreachable!("phase one is bounded below by zero"),
        }
        let scale = 1.0 + t.rhs.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        if t.objective() > tol_feas * scale {
            return Ok(LpSolution::empty(LpStatus::Infeasible, n, t.iterations));
        }
        // Drive zero-level artificials out of the basis where possible.
        for r in 0..m {
            if is_art[t.basis[r]] {
                if let Some(c) = (0..cols).find(|&j| !is_art[j] && t.rows[r][j].abs() > PIVOT_TOL) {
                    t.pivot(r, c);
                }
            }
        }
        for j in 0..cols {
            t.blocked[j] = is_art[j];
        }
    }

    let mut cost = vec![0.0; cols];
    cost[..n].copy_from_slice(&lp.dense_cost());
    t.set_objective(&cost);
    let outcome = t.primal_simplex(budget);
    let status = match outcome {
        Outcome::Optimal => LpStatus::Optimal,
        Outcome::Unbounded => LpStatus::Unbounded,
        Outcome::IterationLimit => LpStatus::IterationLimit,
    };
    let mut values = vec![0.0; n];
    for (r, &b) in t.basis.iter().enumerate() {
        if b < n {
            values[b] = t.rhs[r].max(0.0);
        }
    }
    let objective = lp.objective_value(&values);
    Ok(LpSolution { status, values, objective, iterations: t.iterations })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum DualCol {
    /// Slack of the dual row owned by a primal variable.
    Slack(usize),
    /// `y` column of an LP row.
    Cut(usize),
}

/// Sign that turns `row` into a `>=` row, or `None` for equalities.
fn orientation(row: &Row) -> Option<f64> {
    match row.sense {
        Sense::Ge => Some(1.0),
        Sense::Le => Some(-1.0),
        Sense::Eq => None,
    }
}

/// Warm-started dual of `min c^T x, A x >= b, x >= 0` with `c >= 0`:
/// `max b^T y, A^T y <= c, y >= 0`, kept as `min -b^T y`. The slack basis
/// is feasible for any `A` and `b`, so cuts (new `y` columns) never need a
/// phase one.
struct WarmDual {
    tab: Tableau,
    kind: Vec<DualCol>,
    /// Tableau column of each primal variable's slack.
    slack: Vec<usize>,
    /// Consecutive purge checks each column has been slack.
    age: Vec<usize>,
}

impl WarmDual {
    fn new(cost: &[f64]) -> Self {
        let n = cost.len();
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0.0; n];
                r[i] = 1.0;
                r
            })
            .collect();
        let tab = Tableau::new(rows, cost.to_vec(), (0..n).collect(), n);
        Self { tab, kind: (0..n).map(DualCol::Slack).collect(), slack: (0..n).collect(), age: vec![0; n] }
    }

    fn from_rows(cost: &[f64], rows: &[Row], ids: impl IntoIterator<Item = usize>) -> Self {
        let mut d = Self::new(cost);
        for id in ids {
            d.add_cut(&rows[id], id);
        }
        d
    }

    fn active(&self) -> impl Iterator<Item = usize> + '_ {
        self.kind.iter().filter_map(|k| match *k {
            DualCol::Cut(id) => Some(id),
            DualCol::Slack(_) => None,
        })
    }

    /// Drops non-basic cut columns whose primal row has been slack by more
    /// than `tol` for `PURGE_AGE` consecutive checks. Their dual value is
    /// zero, so the basis stays optimal.
    fn purge(&mut self, tol: f64) {
        let cols = self.tab.cols();
        let mut in_basis = vec![false; cols];
        for &b in &self.tab.basis {
            in_basis[b] = true;
        }
        for j in 0..cols {
            let slack = matches!(self.kind[j], DualCol::Cut(_)) && !in_basis[j] && self.tab.obj[j] > tol;
            self.age[j] = if slack { self.age[j] + 1 } else { 0 };
        }
        let keep: Vec<bool> = (0..cols).map(|j| self.age[j] < PURGE_AGE).collect();
        if keep.iter().all(|&k| k) {
            return;
        }
        let mut new_index = vec![usize::MAX; cols];
        let mut next = 0;
        for j in 0..cols {
            if keep[j] {
                new_index[j] = next;
                next += 1;
            }
        }
        fn retain<T>(v: &mut Vec<T>, keep: &[bool]) {
            let mut j = 0;
            v.retain(|_| {
                j += 1;
                keep[j - 1]
            });
        }
        for row in &mut self.tab.rows {
            retain(row, &keep);
        }
        retain(&mut self.tab.obj, &keep);
        retain(&mut self.tab.blocked, &keep);
        retain(&mut self.kind, &keep);
        retain(&mut self.age, &keep);
        for b in &mut self.tab.basis {
            *b = new_index[*b];
        }
        for s in &mut self.slack {
            *s = new_index[*s];
        }
    }

    fn add_cut(&mut self, row: &Row, id: usize) {
        let s = orientation(row).expect("warm dual rows are inequalities");
        // B^-1 a from the slack columns, reduced cost -b - pi^T a where the
        // slack reduced costs hold -pi.
        let mut col = vec![0.0; self.tab.rows.len()];
        let mut red = -s * row.rhs;
        for &(j, a) in &row.coeffs {
            let sj = self.slack[j];
            for (c, r) in col.iter_mut().zip(&self.tab.rows) {
                *c += s * a * r[sj];
            }
            red += s * a * self.tab.obj[sj];
        }
        self.tab.push_column(&col, red);
        self.kind.push(DualCol::Cut(id));
        self.age.push(0);
    }

    fn solve(&mut self) -> (LpStatus, Vec<f64>) {
        let budget = iteration_budget(self.tab.rows.len(), self.tab.cols());
        let n = self.slack.len();
        match self.tab.primal_simplex(budget) {
            Outcome::Optimal => (LpStatus::Optimal, self.slack.iter().map(|&s| self.tab.obj[s].max(0.0)).collect()),
            // An unbounded dual means the primal rows are infeasible.
            Outcome::Unbounded => (LpStatus::Infeasible, vec![0.0; n]),
            Outcome::IterationLimit => (LpStatus::IterationLimit, vec![0.0; n]),
        }
    }
}

/// Result of a row-generation solve.
#[derive(Debug, Clone)]
pub struct SeparationOutcome {
    pub solution: LpSolution,
    /// The input LP with every generated row appended.
    pub lp: LinearProgram,
    pub rounds: usize,
    /// Objective after each solve, first entry before any cut.
    pub objective_trace: Vec<f64>,
}

/// Cutting-plane loop: solve, ask `oracle` for rows violated by the current
/// point, add them, repeat. The oracle may return several rows per call;
/// rows violated by no more than `tol` are ignored. Exceeding `max_rounds`
/// rounds that add rows yields [`Error::NonConvergence`] with the last
/// iterate.
pub fn lp_solve_with_separation<F>(lp: &LinearProgram, mut oracle: F, tol: f64, max_rounds: usize) -> Result<SeparationOutcome>
where
    F: FnMut(&[f64]) -> Vec<Row>,
{
    let mut lp = lp.clone();
    let mut solution = lp_solve(&lp, TOL_FEAS)?;
    let mut trace = vec![solution.objective];
    let mut dual: Option<WarmDual> = None;
    let mut rounds = 0;
    let mut total_iterations = solution.iterations;
    loop {
        if solution.status != LpStatus::Optimal {
            solution.iterations = total_iterations;
            return Ok(SeparationOutcome { solution, lp, rounds, objective_trace: trace });
        }
        let cuts: Vec<Row> = oracle(&solution.values).into_iter().filter(|r| r.violation(&solution.values) > tol).collect();
        if cuts.is_empty() {
            solution.iterations = total_iterations;
            return Ok(SeparationOutcome { solution, lp, rounds, objective_trace: trace });
        }
        if rounds >= max_rounds {
            solution.iterations = total_iterations;
            return Err(Error::NonConvergence { rounds, last: Box::new(solution) });
        }
        rounds += 1;
        for cut in &cuts {
            if cut.coeffs.iter().any(|&(j, _)| j >= lp.num_vars) {
                return Err(Error::InvalidInput("oracle returned a row with an out-of-range column".into()));
            }
        }
        let first = lp.rows.len();
        lp.rows.extend(cuts);

        if !lp.warm_startable() {
            dual = None;
        } else if dual.is_none() {
            dual = Some(WarmDual::from_rows(&lp.dense_cost(), &lp.rows, 0..first));
        }
        solution = match dual.as_mut() {
            Some(d) => {
                let before = d.tab.iterations;
                d.purge(PURGE_SLACK);
                for id in first..lp.rows.len() {
                    d.add_cut(&lp.rows[id], id);
                }
                let (status, values) = d.solve();
                let iterations = d.tab.iterations - before;
                let mut sol = LpSolution { status, objective: lp.objective_value(&values), values, iterations };
                // Long warm runs accumulate rounding error; fall back to a
                // fresh factorization when the point drifts or pivoting stalls.
                let drift = d.active().map(|id| lp.rows[id].violation(&sol.values)).fold(0.0, f64::max);
                let stalled = sol.status == LpStatus::IterationLimit;
                if stalled || (sol.status == LpStatus::Optimal && drift > TOL_FEAS) {
                    let active: Vec<usize> = d.active().collect();
                    let mut fresh = WarmDual::from_rows(&lp.dense_cost(), &lp.rows, active);
                    let (status, values) = fresh.solve();
                    sol = LpSolution { status, objective: lp.objective_value(&values), values, iterations: fresh.tab.iterations };
                    *d = fresh;
                }
                sol
            }
            None => lp_solve(&lp, TOL_FEAS)?,
        };
        total_iterations += solution.iterations;
        trace.push(solution.objective);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;
    use proptest::prelude::*;

    fn solve(lp: &LinearProgram) -> LpSolution {
        lp_solve(lp, TOL_FEAS).unwrap()
    }

    #[test]
    fn single_binding_row() {
        let mut lp = LinearProgram::new(1);
        lp.set_cost(0, 1.0);
        lp.add_row(Row::ge(vec![(0, 1.0)], 1.0));
        let s = solve(&lp);
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.values[0] - 1.0).abs() < 1e-9);
        assert!((s.objective - 1.0).abs() < 1e-9);
    }

    #[test]
    fn two_variable_example() {
        let mut lp = LinearProgram::new(2);
        lp.set_cost(0, 1.0);
        lp.set_cost(1, 1.0);
        lp.add_row(Row::ge(vec![(0, 1.0), (1, 1.0)], 2.0));
        lp.add_row(Row::ge(vec![(0, 1.0)], 0.5));
        let s = solve(&lp);
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective - 2.0).abs() < 1e-9);
        assert!(lp.max_violation(&s.values) < 1e-9);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.set_cost(0, 1.0);
        lp.add_row(Row::le(vec![(0, 1.0)], -1.0));
        assert_eq!(solve(&lp).status, LpStatus::Infeasible);

        let mut lp = LinearProgram::new(2);
        lp.set_cost(0, -1.0);
        lp.add_row(Row::ge(vec![(0, 1.0), (1, -1.0)], 0.0));
        assert_eq!(solve(&lp).status, LpStatus::Unbounded);
    }

    #[test]
    fn equality_and_upper_bounds() {
        // min -x - 2y, x + y = 3, y <= 2  ->  x = 1, y = 2, objective -5.
        let mut lp = LinearProgram::new(2);
        lp.set_cost(0, -1.0);
        lp.set_cost(1, -2.0);
        lp.add_row(Row::eq(vec![(0, 1.0), (1, 1.0)], 3.0));
        lp.set_upper(1, 2.0);
        let s = solve(&lp);
        assert!((s.objective + 5.0).abs() < 1e-9);
        assert!((s.values[1] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(2);
        lp.set_cost(0, 1.0);
        lp.set_cost(1, 1.0);
        lp.add_row(Row::eq(vec![(0, 1.0), (1, 1.0)], 1.0));
        lp.add_row(Row::eq(vec![(0, 2.0), (1, 2.0)], 2.0));
        let s = solve(&lp);
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective - 1.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_columns() {
        let mut lp = LinearProgram::new(1);
        lp.add_row(Row::ge(vec![(3, 1.0)], 1.0));
        assert!(lp_solve(&lp, TOL_FEAS).is_err());
    }

    #[test]
    fn separation_without_cuts_matches_plain_solve() {
        let mut lp = LinearProgram::new(2);
        lp.set_cost(0, 1.0);
        lp.set_cost(1, 3.0);
        lp.add_row(Row::ge(vec![(0, 1.0), (1, 2.0)], 2.0));
        let out = lp_solve_with_separation(&lp, |_| Vec::new(), TOL_SEPARATION, 10).unwrap();
        assert_eq!(out.solution, solve(&lp));
        assert_eq!(out.rounds, 0);
    }

    #[test]
    fn zero_rounds_with_violation_is_an_error() {
        let mut lp = LinearProgram::new(1);
        lp.set_cost(0, 1.0);
        let res = lp_solve_with_separation(&lp, |_| vec![Row::ge(vec![(0, 1.0)], 1.0)], TOL_SEPARATION, 0);
        assert!(matches!(res, Err(Error::NonConvergence { rounds: 0, .. })));
    }

    #[test]
    fn covering_cuts_converge_monotonically() {
        // Lazily enforce x_i + x_j >= 1 for all pairs of 5 variables; the
        // optimum is 2.5 with every variable at 1/2.
        let mut lp = LinearProgram::new(5);
        for i in 0..5 {
            lp.set_cost(i, 1.0);
        }
        let oracle = |x: &[f64]| {
            let mut worst: Option<(f64, usize, usize)> = None;
            for i in 0..5 {
                for j in i + 1..5 {
                    let s = x[i] + x[j];
                    if worst.is_none_or(|w| s < w.0) {
                        worst = Some((s, i, j));
                    }
                }
            }
            let (_, i, j) = worst.unwrap();
            vec![Row::ge(vec![(i, 1.0), (j, 1.0)], 1.0)]
        };
        let out = lp_solve_with_separation(&lp, oracle, TOL_SEPARATION, 100).unwrap();
        assert!((out.solution.objective - 2.5).abs() < 1e-7, "{}", out.solution.objective);
        assert!(out.objective_trace.windows(2).all(|w| w[1] >= w[0] - 1e-9));
        assert_eq!(out.lp.rows.len(), out.rounds);
        assert!(out.lp.max_violation(&out.solution.values) <= TOL_FEAS);
    }

    #[test]
    fn lp_format_dump_mentions_every_row() {
        let mut lp = LinearProgram::new(2);
        lp.set_cost(0, 1.0);
        lp.add_row(Row::ge(vec![(0, 1.0), (1, -2.5)], 1.0));
        lp.add_row(Row::eq(vec![(1, 1.0)], 0.0));
        lp.set_upper(1, 4.0);
        let text = to_lp_format(&lp);
        assert!(text.starts_with("\\"));
        assert!(text.contains("Minimize"));
        assert!(text.contains("c0: + 1 x0 - 2.5 x1 >= 1"));
        assert!(text.contains("c1: + 1 x1 = 0"));
        assert!(text.contains("x1 <= 4"));
        assert!(text.trim_end().ends_with("End"));
    }

    // Random LP with a planted optimal vertex: pick x* >= 0 with a random
    // support, make rows tight at x* and choose costs inside the cone of the
    // tight rows so x* is optimal; extra loose rows stay satisfied.
    fn planted(seed: u64) -> (LinearProgram, f64) {
        let mut rng = Rng::new(seed);
        let n = 2 + rng.index(5);
        let xstar: Vec<f64> = (0..n).map(|_| if rng.unit() < 0.7 { 0.5 + rng.unit() * 2.0 } else { 0.0 }).collect();
        let mut lp = LinearProgram::new(n);
        let mut cost = vec![0.0; n];
        let tight = n + rng.index(3);
        for _ in 0..tight {
            let a: Vec<f64> = (0..n).map(|_| rng.unit() * 2.0).collect();
            let b: f64 = a.iter().zip(&xstar).map(|(a, x)| a * x).sum();
            let w = rng.unit() + 0.1;
            for j in 0..n {
                cost[j] += w * a[j];
            }
            lp.add_row(Row::ge(a.iter().copied().enumerate().collect(), b));
        }
        // Zero coordinates get an extra positive cost via the bound x_j >= 0.
        for j in 0..n {
            if xstar[j] == 0.0 {
                cost[j] += rng.unit() + 0.1;
            }
        }
        for _ in 0..rng.index(4) {
            let a: Vec<f64> = (0..n).map(|_| rng.unit() * 2.0 - 1.0).collect();
            let act: f64 = a.iter().zip(&xstar).map(|(a, x)| a * x).sum();
            lp.add_row(Row::le(a.iter().copied().enumerate().collect(), act + 1.0 + rng.unit()));
        }
        for (j, c) in cost.iter().enumerate() {
            lp.set_cost(j, *c);
        }
        let opt = cost.iter().zip(&xstar).map(|(c, x)| c * x).sum();
        (lp, opt)
    }

    proptest! {
        #[test]
        fn recovers_planted_optimum(seed in any::<u64>()) {
            let (lp, opt) = planted(seed);
            let s = solve(&lp);
            prop_assert_eq!(s.status, LpStatus::Optimal);
            prop_assert!((s.objective - opt).abs() <= 1e-7 * (1.0 + opt.abs()), "got {} want {}", s.objective, opt);
            prop_assert!(lp.max_violation(&s.values) <= TOL_FEAS);
        }

        #[test]
        fn deterministic(seed in any::<u64>()) {
            let (lp, _) = planted(seed);
            let a = solve(&lp);
            let b = solve(&lp);
            prop_assert_eq!(a.values.iter().map(|v| v.to_bits()).collect::<Vec<_>>(),
                            b.values.iter().map(|v| v.to_bits()).collect::<Vec<_>>());
        }
    }
}
