#![allow(dead_code)]

//! Shared test helpers: a brute-force vertex-enumeration LP oracle, random
//! problem generators, and naive statistics references.
//!
//! The oracle never touches the simplex path: it enumerates every choice of
//! n active constraints (constraint boundaries plus axes), solves the square
//! system by Gaussian elimination, keeps the feasible intersection points,
//! and takes the best objective over them. For pointed feasible regions
//! (always the case here, since every variable is bounded below by zero) an
//! optimum, when it exists, is attained at such a vertex.

use frontier_dea::lp::{LinearProgram, Relation, Sense};

#[derive(Debug, Clone, PartialEq)]
pub enum OracleOutcome {
    Optimal { value: f64, point: Vec<f64> },
    Infeasible,
}

impl OracleOutcome {
    pub fn value(&self) -> Option<f64> {
        match self {
            OracleOutcome::Optimal { value, .. } => Some(*value),
            OracleOutcome::Infeasible => None,
        }
    }
}

const ORACLE_FEAS_TOL: f64 = 1e-7;

pub fn oracle_solve(lp: &LinearProgram) -> OracleOutcome {
    let n = lp.variable_count();
    let mut planes: Vec<(Vec<f64>, f64)> = lp
        .constraints
        .iter()
        .map(|c| (c.coefficients.clone(), c.rhs))
        .collect();
    for j in 0..n {
        let mut axis = vec![0.0; n];
        axis[j] = 1.0;
        planes.push((axis, 0.0));
    }

    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut combo = Vec::with_capacity(n);
    enumerate_vertices(lp, &planes, 0, &mut combo, &mut best);
    match best {
        Some((value, point)) => OracleOutcome::Optimal { value, point },
        None => OracleOutcome::Infeasible,
    }
}

fn enumerate_vertices(
    lp: &LinearProgram,
    planes: &[(Vec<f64>, f64)],
    start: usize,
    combo: &mut Vec<usize>,
    best: &mut Option<(f64, Vec<f64>)>,
) {
    let n = lp.variable_count();
    if combo.len() == n {
        if let Some(point) = solve_active_set(planes, combo, n) {
            if oracle_feasible(lp, &point) {
                let value: f64 = lp
                    .objective
                    .iter()
                    .zip(&point)
                    .map(|(c, x)| c * x)
                    .sum();
                let better = match (&*best, lp.sense) {
                    (None, _) => true,
                    (Some((b, _)), Sense::Minimize) => value < *b,
                    (Some((b, _)), Sense::Maximize) => value > *b,
                };
                if better {
                    *best = Some((value, point));
                }
            }
        }
        return;
    }
    let needed = n - combo.len();
    for i in start..=planes.len().saturating_sub(needed) {
        combo.push(i);
        enumerate_vertices(lp, planes, i + 1, combo, best);
        combo.pop();
    }
}

/// Solve the n x n system of the chosen active planes by Gaussian
/// elimination with partial pivoting; `None` when singular.
fn solve_active_set(planes: &[(Vec<f64>, f64)], combo: &[usize], n: usize) -> Option<Vec<f64>> {
    let mut a: Vec<Vec<f64>> = combo.iter().map(|&i| planes[i].0.clone()).collect();
    let mut b: Vec<f64> = combo.iter().map(|&i| planes[i].1).collect();

    for col in 0..n {
        let pivot_row = (col..n).max_by(|&r1, &r2| {
            a[r1][col]
                .abs()
                .partial_cmp(&a[r2][col].abs())
                .expect("finite entries")
        })?;
        if a[pivot_row][col].abs() < 1e-10 {
            return None;
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for row in 0..n {
            if row != col {
                let f = a[row][col] / a[col][col];
                if f != 0.0 {
                    for k in col..n {
                        a[row][k] -= f * a[col][k];
                    }
                    b[row] -= f * b[col];
                }
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

fn oracle_feasible(lp: &LinearProgram, point: &[f64]) -> bool {
    if point.iter().any(|x| !x.is_finite() || *x < -ORACLE_FEAS_TOL) {
        return false;
    }
    lp.constraints.iter().all(|c| {
        let lhs: f64 = c.coefficients.iter().zip(point).map(|(a, x)| a * x).sum();
        let slack = ORACLE_FEAS_TOL * 1.0_f64.max(lhs.abs()).max(c.rhs.abs());
        match c.relation {
            Relation::Le => lhs <= c.rhs + slack,
            Relation::Ge => lhs >= c.rhs - slack,
            Relation::Eq => (lhs - c.rhs).abs() <= slack,
        }
    })
}

/// Two-pass mean / sample standard deviation / min / max reference.
pub fn naive_stats(values: &[f64]) -> (f64, f64, f64, f64) {
    assert!(!values.is_empty());
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let std_dev = if values.len() < 2 {
        0.0
    } else {
        (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)).sqrt()
    };
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    (mean, std_dev, min, max)
}

/// Closed-form CRS score for single-input single-output panels:
/// theta(target) = (y_0/x_0) / max_j (y_j/x_j).
pub fn closed_form_single_ratio(
    targets: &[(f64, f64)],
    target_index: usize,
) -> f64 {
    let best = targets
        .iter()
        .map(|(x, y)| y / x)
        .fold(f64::NEG_INFINITY, f64::max);
    let (x0, y0) = targets[target_index];
    (y0 / x0) / best
}
