//! Dense simplex tableau shared by the two-phase solver and the warm-started
//! covering dual used during row generation.

/// Entries smaller than this are never used as pivots.
pub(crate) const PIVOT_TOL: f64 = 1e-9;
/// Smallest entry the ratio test will pivot on.
const RATIO_PIVOT_TOL: f64 = 1e-7;
/// Feasibility slack of the Harris ratio test.
const HARRIS_TOL: f64 = 1e-9;
/// Reduced cost below `-PRICE_TOL` makes a column attractive.
pub(crate) const PRICE_TOL: f64 = 1e-9;
/// Consecutive degenerate pivots before switching to Bland's rule.
const BLAND_AFTER: usize = 50;
/// Objective improvement below which a pivot counts as degenerate.
const DEGENERATE_GAIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Outcome {
    Optimal,
    Unbounded,
    IterationLimit,
}

#[derive(Debug, Clone)]
pub(crate) struct Tableau {
    /// Constraint rows, `B^-1 A`.
    pub rows: Vec<Vec<f64>>,
    /// Current basic values, `B^-1 b`.
    pub rhs: Vec<f64>,
    /// Reduced costs.
    pub obj: Vec<f64>,
    /// Negated objective value of the current basis.
    pub obj_rhs: f64,
    pub basis: Vec<usize>,
    /// Columns that may never enter the basis.
    pub blocked: Vec<bool>,
    pub iterations: usize,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<f64>>, rhs: Vec<f64>, basis: Vec<usize>, cols: usize) -> Self {
        Self {
            rows,
            rhs,
            obj: vec![0.0; cols],
            obj_rhs: 0.0,
            basis,
            blocked: vec![false; cols],
            iterations: 0,
        }
    }

    pub fn cols(&self) -> usize {
        self.obj.len()
    }

    /// Installs `cost` as the objective and prices out the current basis.
    pub fn set_objective(&mut self, cost: &[f64]) {
        self.obj.copy_from_slice(cost);
        self.obj_rhs = 0.0;
        for r in 0..self.rows.len() {
            let cb = cost[self.basis[r]];
            if cb != 0.0 {
                for (o, a) in self.obj.iter_mut().zip(&self.rows[r]) {
                    *o -= cb * a;
                }
                self.obj_rhs -= cb * self.rhs[r];
            }
        }
    }

    /// Current objective value `c_B^T x_B`.
    pub fn objective(&self) -> f64 {
        -self.obj_rhs
    }

    pub fn pivot(&mut self, r: usize, c: usize) {
        let inv = 1.0 / self.rows[r][c];
        for a in self.rows[r].iter_mut() {
            *a *= inv;
        }
        self.rhs[r] *= inv;
        self.rows[r][c] = 1.0;
        let (pivot_row, pivot_rhs) = (self.rows[r].clone(), self.rhs[r]);
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][c];
            if f != 0.0 {
                for (a, p) in self.rows[i].iter_mut().zip(&pivot_row) {
                    *a -= f * p;
                }
                self.rows[i][c] = 0.0;
                self.rhs[i] -= f * pivot_rhs;
                if self.rhs[i] < 0.0 && self.rhs[i] > -PIVOT_TOL {
                    self.rhs[i] = 0.0;
                }
            }
        }
        let f = self.obj[c];
        if f != 0.0 {
            for (o, p) in self.obj.iter_mut().zip(&pivot_row) {
                *o -= f * p;
            }
            self.obj[c] = 0.0;
            self.obj_rhs -= f * pivot_rhs;
        }
        self.basis[r] = c;
        self.iterations += 1;
    }

    /// Primal simplex from a primal-feasible basis. Steepest-edge pricing;
    /// a run of degenerate pivots switches to Bland's rule until the
    /// objective moves again, so no basis repeats.
    pub fn primal_simplex(&mut self, max_iterations: usize) -> Outcome {
        let mut bland = false;
        let mut degenerate_run = 0;
        let start = self.iterations;
        loop {
            if self.iterations - start >= max_iterations {
                return Outcome::IterationLimit;
            }
            let entering = if bland {
                (0..self.cols()).find(|&j| !self.blocked[j] && self.obj[j] < -PRICE_TOL)
            } else {
                self.steepest_entering()
            };
            let Some(c) = entering else {
                return Outcome::Optimal;
            };
            let Some(r) = self.leaving_row(c, bland) else {
                return Outcome::Unbounded;
            };
            let ratio = self.rhs[r].max(0.0) / self.rows[r][c];
            // Degeneracy is judged by the objective change, so pivots that
            // move by rounding noise do not reset the anti-cycling mode.
            if ratio * -self.obj[c] <= DEGENERATE_GAIN {
                degenerate_run += 1;
                if degenerate_run >= BLAND_AFTER {
                    bland = true;
                }
            } else {
                degenerate_run = 0;
                bland = false;
            }
            self.pivot(r, c);
        }
    }

    /// Attractive column with the largest `obj_j^2 / (1 + |B^-1 a_j|^2)`,
    /// ties to the smallest index.
    fn steepest_entering(&self) -> Option<usize> {
        let cand: Vec<usize> = (0..self.cols()).filter(|&j| !self.blocked[j] && self.obj[j] < -PRICE_TOL).collect();
        let mut norm = vec![1.0; cand.len()];
        for row in &self.rows {
            for (w, &j) in norm.iter_mut().zip(&cand) {
                *w += row[j] * row[j];
            }
        }
        let mut best: Option<(usize, f64)> = None;
        for (&j, w) in cand.iter().zip(norm) {
            let score = self.obj[j] * self.obj[j] / w;
            if best.is_none_or(|(_, s)| score > s) {
                best = Some((j, score));
            }
        }
        best.map(|(j, _)| j)
    }

    /// Ratio test for entering column `c`. Bland mode takes the exact
    /// minimum ratio with ties to the smallest basic index. Otherwise a
    /// Harris two-pass test: bound the step with rows relaxed by
    /// `HARRIS_TOL`, then take the largest pivot within that bound.
    fn leaving_row(&self, c: usize, bland: bool) -> Option<usize> {
        let candidates = || (0..self.rows.len()).filter(move |&r| self.rows[r][c] > RATIO_PIVOT_TOL);
        if bland {
            let mut best: Option<(usize, f64)> = None;
            for r in candidates() {
                let ratio = self.rhs[r].max(0.0) / self.rows[r][c];
                best = match best {
                    Some((lr, lratio)) if ratio > lratio + 1e-12 || (ratio >= lratio - 1e-12 && self.basis[r] > self.basis[lr]) => Some((lr, lratio)),
                    _ => Some((r, ratio)),
                };
            }
            return best.map(|(r, _)| r);
        }
        let bound = candidates().map(|r| (self.rhs[r].max(0.0) + HARRIS_TOL) / self.rows[r][c]).fold(f64::INFINITY, f64::min);
        if bound == f64::INFINITY {
            return None;
        }
        candidates()
            .filter(|&r| self.rhs[r].max(0.0) / self.rows[r][c] <= bound)
            .max_by(|&a, &b| self.rows[a][c].total_cmp(&self.rows[b][c]).then(b.cmp(&a)))
    }

    /// Appends a column already expressed in the current basis (`B^-1 a`)
    /// with reduced cost `red`.
    pub fn push_column(&mut self, tableau_col: &[f64], red: f64) {
        for (row, &v) in self.rows.iter_mut().zip(tableau_col) {
            row.push(v);
        }
        self.obj.push(red);
        self.blocked.push(false);
    }
}
