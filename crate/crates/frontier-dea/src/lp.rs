//! Dense linear programming over nonnegative variables.
//!
//! Problems are stated in constraint form (`<=`, `==`, `>=` rows, every
//! variable bounded below by zero) and solved with a two-phase simplex on a
//! dense tableau. The envelopment problems this crate builds are small,
//! dense, and often heavily degenerate (near-duplicate columns), so the
//! solver is tuned for robustness over speed: rows are equilibrated, reduced
//! costs are recomputed from the cost vector each iteration, a two-pass
//! ratio test keeps pivot elements well-scaled, the tableau is periodically
//! rebuilt from pristine data, and the final basis is re-solved with
//! iterative refinement and verified feasible before a solution is returned.
//! Entering columns are scanned in Bland order, and on degenerate stalls the
//! pivot rules collapse to pure Bland, whose anti-cycling property
//! guarantees termination.

use crate::error::{Error, Result};

/// Default pivot and feasibility tolerance. Tableau entries with magnitude
/// below the tolerance are treated as zero.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Optimization direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

/// Constraint relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// One linear constraint `coefficients . x <relation> rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coefficients: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

impl Constraint {
    pub fn new(coefficients: Vec<f64>, relation: Relation, rhs: f64) -> Self {
        Self {
            coefficients,
            relation,
            rhs,
        }
    }
}

/// A linear program over `variable_count()` nonnegative variables.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn minimize(objective: Vec<f64>) -> Self {
        Self {
            sense: Sense::Minimize,
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn maximize(objective: Vec<f64>) -> Self {
        Self {
            sense: Sense::Maximize,
            objective,
            constraints: Vec::new(),
        }
    }

    /// Append a constraint row.
    pub fn subject_to(mut self, coefficients: Vec<f64>, relation: Relation, rhs: f64) -> Self {
        self.constraints.push(Constraint::new(coefficients, relation, rhs));
        self
    }

    pub fn variable_count(&self) -> usize {
        self.objective.len()
    }

    /// Check dimensions and finiteness; distinct from infeasibility.
    pub fn validate(&self) -> Result<()> {
        let n = self.objective.len();
        if n == 0 {
            return Err(Error::Validation(
                "linear program must have at least one variable".into(),
            ));
        }
        if self.objective.iter().any(|c| !c.is_finite()) {
            return Err(Error::Validation(
                "objective coefficients must be finite".into(),
            ));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coefficients.len() != n {
                return Err(Error::Validation(format!(
                    "constraint {} has {} coefficients, expected {}",
                    i,
                    c.coefficients.len(),
                    n
                )));
            }
            if c.coefficients.iter().any(|v| !v.is_finite()) || !c.rhs.is_finite() {
                return Err(Error::Validation(format!(
                    "constraint {i} has non-finite entries"
                )));
            }
        }
        Ok(())
    }
}

/// Solver verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Outcome of [`solve`]. `objective_value` and `variable_values` are present
/// exactly when `status` is `Optimal`.
#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    pub objective_value: Option<f64>,
    pub variable_values: Option<Vec<f64>>,
    pub iterations: usize,
}

impl LpSolution {
    /// Objective value and variable values, when optimal.
    pub fn optimal(&self) -> Option<(f64, &[f64])> {
        match (self.objective_value, self.variable_values.as_deref()) {
            (Some(v), Some(x)) if self.status == LpStatus::Optimal => Some((v, x)),
            _ => None,
        }
    }
}

/// Solve `lp` to optimality, or report infeasibility/unboundedness.
///
/// Deterministic: identical inputs produce identical outputs. Every optimal
/// basis is re-solved against the pristine input and verified feasible; if
/// verification fails (near-singular bases on pathological data), the solve
/// deterministically retries with a coarser pivot tolerance, which treats
/// the offending near-zero entries as zeros. The verification gate stays
/// fixed to the caller's tolerance.
pub fn solve(lp: &LinearProgram, tolerance: f64) -> Result<LpSolution> {
    lp.validate()?;
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(Error::Validation(format!(
            "tolerance must be positive and finite, got {tolerance}"
        )));
    }
    let verify_gate = tolerance * 1e4;
    let mut pivot_tol = tolerance;
    let mut worst = 0.0_f64;
    for _ in 0..3 {
        match Tableau::build(lp, pivot_tol).run(lp, verify_gate)? {
            RunOutcome::Solved(solution) => return Ok(solution),
            RunOutcome::NumericallyUnstable(violation) => {
                worst = worst.max(violation);
                pivot_tol = (pivot_tol * 100.0).min(1e-6);
            }
        }
    }
    Err(Error::Internal(format!(
        "no pivot tolerance produced a verified optimal basis \
         (worst scaled violation {worst:e})"
    )))
}

/// True iff `point` satisfies every constraint and nonnegativity bound of
/// `lp` within `tolerance` (scaled by constraint magnitude, so monetary-sized
/// coefficients do not produce spurious violations).
pub fn check_feasible(lp: &LinearProgram, point: &[f64], tolerance: f64) -> Result<bool> {
    lp.validate()?;
    if point.len() != lp.variable_count() {
        return Err(Error::Validation(format!(
            "point has {} entries, expected {}",
            point.len(),
            lp.variable_count()
        )));
    }
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(Error::Validation(format!(
            "tolerance must be positive and finite, got {tolerance}"
        )));
    }
    for &x in point {
        if !x.is_finite() || x < -tolerance {
            return Ok(false);
        }
    }
    for c in &lp.constraints {
        let lhs: f64 = c
            .coefficients
            .iter()
            .zip(point)
            .map(|(a, x)| a * x)
            .sum();
        let scale = 1.0_f64.max(lhs.abs()).max(c.rhs.abs());
        let slack = tolerance * scale;
        let ok = match c.relation {
            Relation::Le => lhs <= c.rhs + slack,
            Relation::Ge => lhs >= c.rhs - slack,
            Relation::Eq => (lhs - c.rhs).abs() <= slack,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

enum PhaseEnd {
    Optimal,
    Unbounded,
}

enum RunOutcome {
    Solved(LpSolution),
    /// The optimal basis failed feasibility verification; carries the worst
    /// scaled violation observed.
    NumericallyUnstable(f64),
}

/// Largest scaled constraint or bound violation of `point`, for diagnostics.
fn worst_violation(lp: &LinearProgram, point: &[f64]) -> f64 {
    let mut worst = point.iter().fold(0.0_f64, |acc, x| acc.max(-x));
    for c in &lp.constraints {
        let lhs: f64 = c.coefficients.iter().zip(point).map(|(a, x)| a * x).sum();
        let scale = 1.0_f64.max(lhs.abs()).max(c.rhs.abs());
        let gap = match c.relation {
            Relation::Le => lhs - c.rhs,
            Relation::Ge => c.rhs - lhs,
            Relation::Eq => (lhs - c.rhs).abs(),
        };
        worst = worst.max(gap / scale);
    }
    worst
}

/// Gaussian elimination with partial pivoting; `None` for numerically
/// singular systems.
fn solve_square(matrix: &[Vec<f64>], rhs: &[f64]) -> Option<Vec<f64>> {
    let m = rhs.len();
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    let mut b = rhs.to_vec();
    for col in 0..m {
        let pivot_row = (col..m).max_by(|&r1, &r2| {
            a[r1][col]
                .abs()
                .partial_cmp(&a[r2][col].abs())
                .expect("finite entries")
        })?;
        if a[pivot_row][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for row in 0..m {
            if row != col {
                let f = a[row][col] / a[col][col];
                if f != 0.0 {
                    for k in col..m {
                        a[row][k] -= f * a[col][k];
                    }
                    b[row] -= f * b[col];
                }
            }
        }
    }
    Some((0..m).map(|i| b[i] / a[i][i]).collect())
}

/// Degenerate pivots tolerated before the pivot rules fall back to pure
/// Bland, whose anti-cycling property guarantees termination.
const STALL_LIMIT: usize = 30;

/// Entering columns whose best eligible pivot element falls below this are
/// nearly dependent on the current basis; healthier candidates are tried
/// first so near-duplicate data cannot force destabilizing pivots.
const HEALTHY_PIVOT: f64 = 1e-5;

/// Pivots between tableau rebuilds from the pristine data. Refactorizing
/// bounds the error a pivot sequence can accumulate in the rows.
const REFRESH_INTERVAL: usize = 16;

struct Tableau {
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    basis: Vec<usize>,
    in_basis: Vec<bool>,
    /// Cost vector of the active phase.
    cost: Vec<f64>,
    /// Pristine equilibrated rows and right-hand sides, kept aside so the
    /// final basic solution can be re-solved free of pivot drift.
    initial_rows: Vec<Vec<f64>>,
    initial_rhs: Vec<f64>,
    n_struct: usize,
    art_start: usize,
    n_total: usize,
    tol: f64,
    iterations: usize,
    max_iterations: usize,
    degenerate_streak: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram, tol: f64) -> Self {
        let n = lp.variable_count();
        let m = lp.constraints.len();

        // Equilibrate each row to O(1) entries so the pivot tolerance is
        // meaningful for monetary-scale data, then normalize to a
        // nonnegative right-hand side. Positive row scaling leaves the
        // feasible set and the optimum untouched.
        let mut normalized: Vec<(Vec<f64>, Relation, f64)> = Vec::with_capacity(m);
        for c in &lp.constraints {
            let scale = c
                .coefficients
                .iter()
                .fold(0.0_f64, |acc, v| acc.max(v.abs()))
                .max(f64::MIN_POSITIVE);
            let flip = c.rhs < 0.0;
            let sign = if flip { -1.0 } else { 1.0 };
            let coeffs: Vec<f64> = c.coefficients.iter().map(|v| sign * v / scale).collect();
            let rel = match (c.relation, flip) {
                (Relation::Le, true) => Relation::Ge,
                (Relation::Ge, true) => Relation::Le,
                (rel, _) => rel,
            };
            normalized.push((coeffs, rel, sign * c.rhs / scale));
        }

        let n_slack = normalized
            .iter()
            .filter(|(_, rel, _)| *rel != Relation::Eq)
            .count();
        let n_art = normalized
            .iter()
            .filter(|(_, rel, _)| *rel != Relation::Le)
            .count();
        let art_start = n + n_slack;
        let n_total = art_start + n_art;

        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut next_slack = n;
        let mut next_art = art_start;
        for (coeffs, rel, b) in normalized {
            let mut row = vec![0.0; n_total];
            row[..n].copy_from_slice(&coeffs);
            match rel {
                Relation::Le => {
                    row[next_slack] = 1.0;
                    basis.push(next_slack);
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = -1.0;
                    next_slack += 1;
                    row[next_art] = 1.0;
                    basis.push(next_art);
                    next_art += 1;
                }
                Relation::Eq => {
                    row[next_art] = 1.0;
                    basis.push(next_art);
                    next_art += 1;
                }
            }
            rows.push(row);
            rhs.push(b);
        }

        let mut in_basis = vec![false; n_total];
        for &j in &basis {
            in_basis[j] = true;
        }
        let max_iterations = 1000 + 100 * (m + n_total);
        Self {
            initial_rows: rows.clone(),
            initial_rhs: rhs.clone(),
            rows,
            rhs,
            basis,
            in_basis,
            cost: vec![0.0; n_total],
            n_struct: n,
            art_start,
            n_total,
            tol,
            iterations: 0,
            max_iterations,
            degenerate_streak: 0,
        }
    }

    fn run(mut self, lp: &LinearProgram, verify_gate: f64) -> Result<RunOutcome> {
        if self.n_total > self.art_start {
            // Phase 1: minimize the sum of artificial variables.
            let mut cost = vec![0.0; self.n_total];
            for j in self.art_start..self.n_total {
                cost[j] = 1.0;
            }
            self.load_objective(&cost);
            match self.pivot_until_done()? {
                PhaseEnd::Optimal => {}
                PhaseEnd::Unbounded => {
                    return Err(Error::Internal(
                        "phase-1 objective is bounded below by zero yet reported unbounded".into(),
                    ))
                }
            }
            let artificial_sum: f64 = self
                .basis
                .iter()
                .zip(&self.rhs)
                .filter(|(j, _)| **j >= self.art_start)
                .map(|(_, b)| b)
                .sum();
            if artificial_sum > self.tol * 100.0 {
                return Ok(RunOutcome::Solved(LpSolution {
                    status: LpStatus::Infeasible,
                    objective_value: None,
                    variable_values: None,
                    iterations: self.iterations,
                }));
            }
            self.drive_out_artificials()?;
        }

        // Phase 2: the caller's objective, minimized.
        let mut cost = vec![0.0; self.n_total];
        let flip = if lp.sense == Sense::Maximize { -1.0 } else { 1.0 };
        for (j, c) in lp.objective.iter().enumerate() {
            cost[j] = flip * c;
        }
        self.load_objective(&cost);
        match self.pivot_until_done()? {
            PhaseEnd::Unbounded => Ok(RunOutcome::Solved(LpSolution {
                status: LpStatus::Unbounded,
                objective_value: None,
                variable_values: None,
                iterations: self.iterations,
            })),
            PhaseEnd::Optimal => {
                let basic_values = self
                    .resolve_basis_from_initial_data()
                    .unwrap_or_else(|| self.rhs.clone());
                let mut x = vec![0.0; self.n_struct];
                for (i, &j) in self.basis.iter().enumerate() {
                    if j < self.n_struct {
                        x[j] = basic_values[i];
                    }
                }
                // Verification is deliberately coarser than the pivot
                // tolerance: the two-pass ratio test trades bounded
                // tolerance-level slack for well-scaled pivots, so honest
                // solutions can sit a few tolerances outside while a broken
                // basis misses by orders of magnitude.
                if !check_feasible(lp, &x, verify_gate)? {
                    return Ok(RunOutcome::NumericallyUnstable(worst_violation(lp, &x)));
                }
                let value: f64 = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
                Ok(RunOutcome::Solved(LpSolution {
                    status: LpStatus::Optimal,
                    objective_value: Some(value),
                    variable_values: Some(x),
                    iterations: self.iterations,
                }))
            }
        }
    }

    /// Install `cost` as the phase objective.
    fn load_objective(&mut self, cost: &[f64]) {
        self.cost.clone_from_slice(&cost[..self.n_total]);
        self.degenerate_streak = 0;
        self.refactorize();
    }

    /// Rebuild the tableau as `B^-1 [A | b]` from the pristine data by
    /// Gauss-Jordan elimination on the basis columns. A numerically singular
    /// basis leaves the tableau untouched.
    fn refactorize(&mut self) {
        let m = self.rows.len();
        let width = self.n_total;
        let mut aug: Vec<Vec<f64>> = (0..m)
            .map(|i| {
                let mut row: Vec<f64> = self.initial_rows[i][..width].to_vec();
                row.push(self.initial_rhs[i]);
                row
            })
            .collect();

        let mut pivot_row_of = vec![usize::MAX; m];
        let mut used = vec![false; m];
        for k in 0..m {
            let col = self.basis[k];
            let candidate = (0..m)
                .filter(|&r| !used[r])
                .max_by(|&r1, &r2| {
                    aug[r1][col]
                        .abs()
                        .partial_cmp(&aug[r2][col].abs())
                        .expect("finite entries")
                });
            let Some(r) = candidate else { return };
            if aug[r][col].abs() < 1e-12 {
                return;
            }
            used[r] = true;
            pivot_row_of[k] = r;
            let p = aug[r][col];
            for v in aug[r].iter_mut() {
                *v /= p;
            }
            aug[r][col] = 1.0;
            for other in 0..m {
                if other != r {
                    let f = aug[other][col];
                    if f != 0.0 {
                        for j in 0..=width {
                            aug[other][j] -= f * aug[r][j];
                        }
                        aug[other][col] = 0.0;
                    }
                }
            }
        }
        for k in 0..m {
            let r = pivot_row_of[k];
            let mut row = std::mem::take(&mut aug[r]);
            let rhs = row.pop().expect("augmented column");
            self.rows[k] = row;
            // The rebuilt values are exact up to conditioning; tiny negative
            // basics are rounding, not infeasibility.
            self.rhs[k] = if rhs < 0.0 && rhs >= -self.tol { 0.0 } else { rhs };
        }
    }

    /// Reduced costs recomputed from the cost vector and the current rows.
    /// Recomputing every iteration is cheap at these row counts and avoids
    /// the drift an incrementally updated cost row accumulates on highly
    /// degenerate columns.
    fn reduced_costs(&self) -> Vec<f64> {
        let mut reduced = self.cost[..self.n_total].to_vec();
        for (i, &bj) in self.basis.iter().enumerate() {
            let cb = self.cost[bj];
            if cb != 0.0 {
                for (r, a) in reduced.iter_mut().zip(&self.rows[i]) {
                    *r -= cb * a;
                }
            }
        }
        reduced
    }

    fn pivot_until_done(&mut self) -> Result<PhaseEnd> {
        // A reduced cost only counts as negative beyond the noise that
        // summing one near-zero term per row can produce.
        let enter_tol = self.tol * (1.0 + self.rows.len() as f64);
        let mut pivots_since_refresh = 0usize;
        loop {
            if pivots_since_refresh >= REFRESH_INTERVAL {
                self.refactorize();
                pivots_since_refresh = 0;
            }
            let reduced = self.reduced_costs();
            let bland = self.degenerate_streak >= STALL_LIMIT;

            // Entering scan in Bland order (artificials never re-enter).
            // The Bland-first candidate decides optimality and
            // unboundedness; outside the fallback mode a later candidate
            // with a well-scaled pivot is preferred over one that would
            // force a tiny pivot element.
            let mut first: Option<(usize, Option<usize>)> = None;
            let mut chosen: Option<(usize, usize)> = None;
            for j in 0..self.art_start {
                if self.in_basis[j] || reduced[j] >= -enter_tol {
                    continue;
                }
                let row = self.leaving_row(j);
                if first.is_none() {
                    first = Some((j, row));
                    if bland {
                        break;
                    }
                }
                match row {
                    Some(r) if self.rows[r][j] >= HEALTHY_PIVOT => {
                        chosen = Some((j, r));
                        break;
                    }
                    _ => {}
                }
            }
            let Some((first_col, first_row)) = first else {
                return Ok(PhaseEnd::Optimal);
            };
            let Some(first_row) = first_row else {
                return Ok(PhaseEnd::Unbounded);
            };
            let (col, row) = chosen.unwrap_or((first_col, first_row));

            let degenerate = self.rhs[row] / self.rows[row][col] <= self.tol;
            self.pivot(row, col)?;
            pivots_since_refresh += 1;
            if degenerate {
                self.degenerate_streak += 1;
            } else {
                self.degenerate_streak = 0;
            }
        }
    }

    /// Leaving row for entering column `j`, chosen by a two-pass ratio test:
    /// the first pass bounds the step length with ratios relaxed by the
    /// tolerance, the second picks the largest pivot element within that
    /// bound. Every right-hand side stays above `-tol` by construction while
    /// the pivot stays as well-scaled as the column allows. Once degeneracy
    /// has stalled progress for [`STALL_LIMIT`] pivots, falls back to
    /// Bland's smallest-basis-index rule, which cannot cycle.
    fn leaving_row(&self, j: usize) -> Option<usize> {
        if self.degenerate_streak >= STALL_LIMIT {
            let mut best: Option<(usize, f64)> = None;
            for i in 0..self.rows.len() {
                let a = self.rows[i][j];
                if a <= self.tol {
                    continue;
                }
                let ratio = (self.rhs[i] / a).max(0.0);
                best = match best {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        let tie = (ratio - br).abs() <= self.tol * (1.0 + br.abs());
                        let replace = if tie {
                            self.basis[i] < self.basis[bi]
                        } else {
                            ratio < br
                        };
                        if replace {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            return best.map(|(i, _)| i);
        }

        let mut step_limit = f64::INFINITY;
        for i in 0..self.rows.len() {
            let a = self.rows[i][j];
            if a > self.tol {
                step_limit = step_limit.min((self.rhs[i].max(0.0) + self.tol) / a);
            }
        }
        if step_limit.is_infinite() {
            return None;
        }
        let mut best: Option<(usize, f64)> = None;
        for i in 0..self.rows.len() {
            let a = self.rows[i][j];
            if a <= self.tol {
                continue;
            }
            let ratio = (self.rhs[i] / a).max(0.0);
            if ratio > step_limit {
                continue;
            }
            let better = match best {
                None => true,
                Some((bi, ba)) => a > ba || (a == ba && self.basis[i] < self.basis[bi]),
            };
            if better {
                best = Some((i, a));
            }
        }
        best.map(|(i, _)| i)
    }

    /// Solve `B x_B = b` for the final basis against the pristine pre-pivot
    /// data, clearing the drift a long pivot history leaves in the tableau's
    /// right-hand sides. Two steps of iterative refinement push the residual
    /// to machine level even when near-collinear columns leave the basis
    /// ill-conditioned. `None` when the basis matrix is numerically
    /// singular; callers then fall back to the tableau values.
    fn resolve_basis_from_initial_data(&self) -> Option<Vec<f64>> {
        let m = self.basis.len();
        let matrix: Vec<Vec<f64>> = (0..m)
            .map(|i| self.basis.iter().map(|&j| self.initial_rows[i][j]).collect())
            .collect();
        let mut x = solve_square(&matrix, &self.initial_rhs)?;
        for _ in 0..2 {
            let residual: Vec<f64> = (0..m)
                .map(|i| {
                    let ax: f64 = matrix[i].iter().zip(&x).map(|(a, v)| a * v).sum();
                    self.initial_rhs[i] - ax
                })
                .collect();
            let Some(correction) = solve_square(&matrix, &residual) else {
                break;
            };
            for (xi, d) in x.iter_mut().zip(&correction) {
                *xi += d;
            }
        }
        Some(x)
    }

    fn pivot(&mut self, pivot_row: usize, pivot_col: usize) -> Result<()> {
        self.iterations += 1;
        if self.iterations > self.max_iterations {
            return Err(Error::Internal(format!(
                "simplex exceeded {} iterations",
                self.max_iterations
            )));
        }

        let p = self.rows[pivot_row][pivot_col];
        for v in self.rows[pivot_row].iter_mut() {
            *v /= p;
        }
        self.rhs[pivot_row] /= p;
        self.rows[pivot_row][pivot_col] = 1.0;

        for i in 0..self.rows.len() {
            if i == pivot_row {
                continue;
            }
            let f = self.rows[i][pivot_col];
            if f != 0.0 {
                for j in 0..self.n_total {
                    self.rows[i][j] -= f * self.rows[pivot_row][j];
                }
                self.rhs[i] -= f * self.rhs[pivot_row];
                self.rows[i][pivot_col] = 0.0;
                // Keep the nonnegativity invariant clean against rounding.
                if self.rhs[i] < 0.0 && self.rhs[i] >= -self.tol {
                    self.rhs[i] = 0.0;
                }
            }
        }
        self.in_basis[self.basis[pivot_row]] = false;
        self.in_basis[pivot_col] = true;
        self.basis[pivot_row] = pivot_col;
        Ok(())
    }

    /// Pivot zero-valued artificials out of the basis; rows where no
    /// structural or slack column remains are redundant and dropped.
    fn drive_out_artificials(&mut self) -> Result<()> {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= self.art_start {
                // Largest eligible magnitude keeps the pivot well-scaled.
                let col = (0..self.art_start)
                    .filter(|&j| self.rows[i][j].abs() > self.tol)
                    .max_by(|&a, &b| {
                        self.rows[i][a]
                            .abs()
                            .partial_cmp(&self.rows[i][b].abs())
                            .expect("finite tableau entries")
                    });
                match col {
                    Some(j) => self.pivot(i, j)?,
                    None => {
                        self.in_basis[self.basis[i]] = false;
                        self.rows.remove(i);
                        self.rhs.remove(i);
                        self.basis.remove(i);
                        self.initial_rows.remove(i);
                        self.initial_rhs.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        for row in &mut self.rows {
            row.truncate(self.art_start);
        }
        self.n_total = self.art_start;
        self.cost.truncate(self.art_start);
        self.in_basis.truncate(self.art_start);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "expected {b}, got {a}");
    }

    #[test]
    fn single_lower_bound() {
        let lp = LinearProgram::minimize(vec![1.0]).subject_to(vec![1.0], Relation::Ge, 3.0);
        let sol = solve(&lp, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_close(sol.objective_value.unwrap(), 3.0, 1e-9);
        assert_close(sol.variable_values.unwrap()[0], 3.0, 1e-9);
    }

    #[test]
    fn empty_feasible_region() {
        // x <= -1 contradicts the implicit x >= 0.
        let lp = LinearProgram::minimize(vec![0.0]).subject_to(vec![1.0], Relation::Le, -1.0);
        let sol = solve(&lp, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(sol.status, LpStatus::Infeasible);
        assert!(sol.objective_value.is_none());
        assert!(sol.variable_values.is_none());
    }

    #[test]
    fn simplex_on_unit_box_edge() {
        // Oracle (vertex enumeration over {x+y<=1, x>=0, y>=0}): vertices
        // (0,0), (1,0), (0,1); min of -x-y is -1.
        let lp = LinearProgram::minimize(vec![-1.0, -1.0])
            .subject_to(vec![1.0, 1.0], Relation::Le, 1.0);
        let sol = solve(&lp, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_close(sol.objective_value.unwrap(), -1.0, 1e-9);
        assert!(check_feasible(&lp, sol.variable_values.as_ref().unwrap(), 1e-9).unwrap());
    }

    #[test]
    fn maximize_flips_sense() {
        let lp = LinearProgram::maximize(vec![2.0, 3.0])
            .subject_to(vec![1.0, 1.0], Relation::Le, 4.0)
            .subject_to(vec![1.0, 3.0], Relation::Le, 6.0);
        let sol = solve(&lp, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        // Vertices: (0,0), (4,0), (0,2), (3,1); best of 2x+3y is 9 at (3,1).
        assert_close(sol.objective_value.unwrap(), 9.0, 1e-9);
    }

    #[test]
    fn unbounded_ray() {
        let lp = LinearProgram::minimize(vec![-1.0]).subject_to(vec![1.0], Relation::Ge, 1.0);
        let sol = solve(&lp, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(sol.status, LpStatus::Unbounded);
    }

    #[test]
    fn unbounded_without_constraints() {
        let lp = LinearProgram::minimize(vec![-1.0, 0.0]);
        let sol = solve(&lp, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(sol.status, LpStatus::Unbounded);
    }

    #[test]
    fn equality_constraints() {
        let lp = LinearProgram::minimize(vec![1.0, 2.0])
            .subject_to(vec![1.0, 1.0], Relation::Eq, 5.0);
        let sol = solve(&lp, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_close(sol.objective_value.unwrap(), 5.0, 1e-9);
        let x = sol.variable_values.unwrap();
        assert_close(x[0], 5.0, 1e-9);
        assert_close(x[1], 0.0, 1e-9);
    }

    #[test]
    fn redundant_rows_are_dropped() {
        let lp = LinearProgram::minimize(vec![1.0, 1.0])
            .subject_to(vec![1.0, 1.0], Relation::Eq, 2.0)
            .subject_to(vec![2.0, 2.0], Relation::Eq, 4.0);
        let sol = solve(&lp, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_close(sol.objective_value.unwrap(), 2.0, 1e-9);
    }

    #[test]
    fn negative_rhs_normalization() {
        // -x <= -2 is x >= 2.
        let lp = LinearProgram::minimize(vec![1.0]).subject_to(vec![-1.0], Relation::Le, -2.0);
        let sol = solve(&lp, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_close(sol.objective_value.unwrap(), 2.0, 1e-9);
    }

    #[test]
    fn beale_cycling_instance_terminates() {
        // Classic degenerate instance that cycles under the most-negative
        // rule; Bland's rule must terminate at the optimum -1/20.
        let lp = LinearProgram::minimize(vec![-0.75, 150.0, -0.02, 6.0])
            .subject_to(vec![0.25, -60.0, -0.04, 9.0], Relation::Le, 0.0)
            .subject_to(vec![0.5, -90.0, -0.02, 3.0], Relation::Le, 0.0)
            .subject_to(vec![0.0, 0.0, 1.0, 0.0], Relation::Le, 1.0);
        let sol = solve(&lp, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_close(sol.objective_value.unwrap(), -0.05, 1e-9);
        assert!(check_feasible(&lp, sol.variable_values.as_ref().unwrap(), 1e-9).unwrap());
    }

    #[test]
    fn objective_value_matches_dot_product() {
        let lp = LinearProgram::minimize(vec![3.0, -1.0, 2.0])
            .subject_to(vec![1.0, 1.0, 1.0], Relation::Le, 10.0)
            .subject_to(vec![1.0, 0.0, 1.0], Relation::Ge, 2.0);
        let sol = solve(&lp, DEFAULT_TOLERANCE).unwrap();
        let (value, x) = sol.optimal().unwrap();
        let dot: f64 = lp.objective.iter().zip(x).map(|(c, v)| c * v).sum();
        assert_close(value, dot, 1e-9);
    }

    #[test]
    fn check_feasible_boundary_and_violation() {
        let lp = LinearProgram::minimize(vec![1.0]).subject_to(vec![1.0], Relation::Ge, 3.0);
        assert!(check_feasible(&lp, &[3.0], 1e-9).unwrap());
        assert!(!check_feasible(&lp, &[2.9], 1e-9).unwrap());
        assert!(!check_feasible(&lp, &[-0.5], 1e-9).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_a_validation_error() {
        let lp = LinearProgram::minimize(vec![1.0, 2.0]).subject_to(vec![1.0], Relation::Ge, 1.0);
        assert!(matches!(
            solve(&lp, DEFAULT_TOLERANCE),
            Err(Error::Validation(_))
        ));
        let ok = LinearProgram::minimize(vec![1.0]).subject_to(vec![1.0], Relation::Ge, 1.0);
        assert!(matches!(
            check_feasible(&ok, &[1.0, 2.0], 1e-9),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn bad_tolerance_rejected() {
        let lp = LinearProgram::minimize(vec![1.0]);
        assert!(matches!(solve(&lp, 0.0), Err(Error::Validation(_))));
        assert!(matches!(solve(&lp, -1.0), Err(Error::Validation(_))));
        assert!(matches!(solve(&lp, f64::NAN), Err(Error::Validation(_))));
    }

    #[test]
    fn determinism_same_input_same_output() {
        let lp = LinearProgram::minimize(vec![-2.0, 1.0, -1.0])
            .subject_to(vec![1.0, 1.0, 1.0], Relation::Le, 6.0)
            .subject_to(vec![-1.0, 2.0, 0.0], Relation::Ge, -4.0)
            .subject_to(vec![1.0, 0.0, 1.0], Relation::Eq, 3.0);
        let a = solve(&lp, DEFAULT_TOLERANCE).unwrap();
        let b = solve(&lp, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(a.status, b.status);
        assert_eq!(a.objective_value, b.objective_value);
        assert_eq!(a.variable_values, b.variable_values);
        assert_eq!(a.iterations, b.iterations);
    }
}
