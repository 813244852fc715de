//! Dense bounded-variable primal simplex.
//!
//! The model is brought to `A x = b` with slack and artificial columns; every
//! column carries its own `[lower, upper]` and nonbasic columns sit at one of
//! their bounds. Phase 1 minimizes the artificials, phase 2 the model cost.
//! Pricing is Dantzig's rule until a long run of degenerate pivots, after which
//! Bland's rule takes over for the rest of the phase.

use alloc::vec;
use alloc::vec::Vec;

use super::model::{LpModel, Relation};
use crate::error::{Error, Result};
use crate::instance::Sense;

/// Primal feasibility tolerance (scaled by `1 + |rhs|` where applicable).
pub const FEASIBILITY_TOL: f64 = 1e-9;
/// Reduced-cost optimality tolerance.
pub const OPTIMALITY_TOL: f64 = 1e-9;
/// Smallest pivot magnitude accepted in the ratio test.
pub const PIVOT_TOL: f64 = 1e-9;
/// Steps shorter than this count as degenerate.
const DEGENERATE_STEP: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    /// Values of all model variables, in model order.
    pub values: Vec<f64>,
    /// Values of the vertex variables `x_i`.
    pub x: Vec<f64>,
    /// `sum cost_j value_j`, without the model's constant.
    pub raw_objective: f64,
    /// `raw_objective + objective_constant`.
    pub reported_objective: f64,
    /// The final basis matrix is nonsingular and the point is a vertex of the
    /// feasible region (its active constraints have full rank).
    pub basic: bool,
    pub iterations: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Basic(usize),
    Lower,
    Upper,
}

struct Tableau {
    rows: usize,
    cols: usize,
    /// `B^-1 A`, row-major.
    a: Vec<f64>,
    /// Values of the basic variables.
    beta: Vec<f64>,
    basis: Vec<usize>,
    status: Vec<Status>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    iterations: usize,
    limit: usize,
}

impl Tableau {
    fn at(&self, r: usize, j: usize) -> f64 {
        self.a[r * self.cols + j]
    }

    fn value(&self, j: usize) -> f64 {
        match self.status[j] {
            Status::Basic(r) => self.beta[r],
            Status::Lower => self.lower[j],
            Status::Upper => self.upper[j],
        }
    }

    fn reduced_costs(&self, cost: &[f64]) -> Vec<f64> {
        let mut d = cost.to_vec();
        for r in 0..self.rows {
            let cb = cost[self.basis[r]];
            if cb != 0.0 {
                let row = &self.a[r * self.cols..(r + 1) * self.cols];
                for (dj, &arj) in d.iter_mut().zip(row) {
                    *dj -= cb * arj;
                }
            }
        }
        d
    }

    fn pivot(&mut self, r: usize, q: usize, d: &mut [f64]) {
        let cols = self.cols;
        let p = self.at(r, q);
        for j in 0..cols {
            self.a[r * cols + j] /= p;
        }
        let (before, rest) = self.a.split_at_mut(r * cols);
        let (pivot_row, after) = rest.split_at_mut(cols);
        for other in before.chunks_mut(cols).chain(after.chunks_mut(cols)) {
            let f = other[q];
            if f != 0.0 {
                for (x, &y) in other.iter_mut().zip(pivot_row.iter()) {
                    *x -= f * y;
                }
                other[q] = 0.0;
            }
        }
        let f = d[q];
        if f != 0.0 {
            for (x, &y) in d.iter_mut().zip(pivot_row.iter()) {
                *x -= f * y;
            }
            d[q] = 0.0;
        }
    }

    /// Runs primal simplex iterations with the given column costs.
    fn optimize(&mut self, cost: &[f64]) -> Result<()> {
        let mut d = self.reduced_costs(cost);
        let bland_after = 5 * (self.rows + self.cols);
        let mut degenerate = 0usize;
        let mut bland = false;
        loop {
            // entering column and direction (+1 increase from lower, -1 decrease from upper)
            let mut entering: Option<(usize, f64)> = None;
            let mut best_score = 0.0;
            for j in 0..self.cols {
                if self.upper[j] - self.lower[j] <= 0.0 {
                    continue;
                }
                let (score, dir) = match self.status[j] {
                    Status::Basic(_) => continue,
                    Status::Lower if d[j] < -OPTIMALITY_TOL => (-d[j], 1.0),
                    Status::Upper if d[j] > OPTIMALITY_TOL => (d[j], -1.0),
                    _ => continue,
                };
                if bland {
                    entering = Some((j, dir));
                    break;
                }
                if score > best_score {
                    best_score = score;
                    entering = Some((j, dir));
                }
            }
            let Some((q, dir)) = entering else {
                return Ok(());
            };
            self.iterations += 1;
            if self.iterations > self.limit {
                return Err(Error::LpIterationLimit(self.limit));
            }

            // ratio test; `None` as the leaving row means a bound flip of q
            let mut theta = self.upper[q] - self.lower[q];
            let mut leaving: Option<(usize, bool)> = None;
            let mut leaving_alpha = 0.0;
            for r in 0..self.rows {
                let alpha = dir * self.at(r, q);
                let b = self.basis[r];
                let (t, to_upper) = if alpha > PIVOT_TOL {
                    ((self.beta[r] - self.lower[b]) / alpha, false)
                } else if alpha < -PIVOT_TOL && self.upper[b].is_finite() {
                    ((self.upper[b] - self.beta[r]) / -alpha, true)
                } else {
                    continue;
                };
                let t = t.max(0.0);
                let better = if t < theta - DEGENERATE_STEP {
                    true
                } else if t <= theta + DEGENERATE_STEP {
                    match leaving {
                        // keep the bound flip on ties: no basis change needed
                        None => false,
                        Some((lr, _)) if bland => b < self.basis[lr],
                        Some(_) => alpha.abs() > leaving_alpha,
                    }
                } else {
                    false
                };
                if better {
                    theta = t;
                    leaving = Some((r, to_upper));
                    leaving_alpha = alpha.abs();
                }
            }
            if !theta.is_finite() {
                return Err(Error::LpUnbounded { column: q });
            }

            let entering_value = self.value(q) + dir * theta;
            if theta != 0.0 {
                for r in 0..self.rows {
                    self.beta[r] -= dir * theta * self.at(r, q);
                }
            }
            match leaving {
                None => {
                    self.status[q] = if dir > 0.0 { Status::Upper } else { Status::Lower };
                }
                Some((r, to_upper)) => {
                    let b = self.basis[r];
                    self.status[b] = if to_upper { Status::Upper } else { Status::Lower };
                    self.beta[r] = entering_value;
                    self.basis[r] = q;
                    self.status[q] = Status::Basic(r);
                    self.pivot(r, q, &mut d);
                }
            }

            if theta <= DEGENERATE_STEP {
                degenerate += 1;
                if degenerate > bland_after {
                    bland = true;
                }
            } else {
                degenerate = 0;
            }
        }
    }
}

/// Solves `A_B x_B = rhs` by Gaussian elimination with partial pivoting.
/// `None` if the matrix is numerically singular.
fn solve_dense(mut m: Vec<f64>, mut rhs: Vec<f64>, n: usize) -> Option<Vec<f64>> {
    for k in 0..n {
        let p = (k..n).max_by(|&a, &b| m[a * n + k].abs().total_cmp(&m[b * n + k].abs()))?;
        if m[p * n + k].abs() < 1e-11 {
            return None;
        }
        if p != k {
            for j in 0..n {
                m.swap(p * n + j, k * n + j);
            }
            rhs.swap(p, k);
        }
        for i in k + 1..n {
            let f = m[i * n + k] / m[k * n + k];
            if f != 0.0 {
                for j in k..n {
                    m[i * n + j] -= f * m[k * n + j];
                }
                rhs[i] -= f * rhs[k];
            }
        }
    }
    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let s: f64 = (k + 1..n).map(|j| m[k * n + j] * x[j]).sum();
        x[k] = (rhs[k] - s) / m[k * n + k];
    }
    Some(x)
}

/// Solves `model` to an optimal basic feasible solution.
pub fn solve_lp(model: &LpModel) -> Result<LpSolution> {
    let n = model.var_count();
    let m = model.row_count();
    for (j, v) in model.variables.iter().enumerate() {
        if !v.lower.is_finite() || v.upper < v.lower || v.upper.is_nan() || !v.cost.is_finite() {
            return Err(Error::Precondition(alloc::format!(
                "variable {j} has bounds [{}, {}] and cost {}; need a finite lower bound, \
                 lower <= upper and a finite cost",
                v.lower,
                v.upper,
                v.cost
            )));
        }
    }

    // Column layout: structural | slacks | artificials.
    let slack_count = model
        .constraints
        .iter()
        .filter(|c| c.relation != Relation::Eq)
        .count();
    let mut dense = vec![0.0; m * n];
    let mut rhs = vec![0.0; m];
    let mut slack_coef = vec![0.0; m];
    let mut slack_col = vec![usize::MAX; m];
    let mut next_slack = n;
    for (r, c) in model.constraints.iter().enumerate() {
        let mut b = c.rhs;
        for &(j, a) in &c.terms {
            dense[r * n + j] += a;
            b -= a * model.variables[j].lower;
        }
        match c.relation {
            Relation::Le => slack_coef[r] = 1.0,
            Relation::Ge => slack_coef[r] = -1.0,
            Relation::Eq => {}
        }
        if c.relation != Relation::Eq {
            slack_col[r] = next_slack;
            next_slack += 1;
        }
        if b < 0.0 {
            b = -b;
            slack_coef[r] = -slack_coef[r];
            for x in &mut dense[r * n..(r + 1) * n] {
                *x = -*x;
            }
        }
        rhs[r] = b;
    }
    let needs_artificial: Vec<bool> = (0..m).map(|r| slack_coef[r] != 1.0).collect();
    let art_count = needs_artificial.iter().filter(|&&b| b).count();
    let cols = n + slack_count + art_count;

    let mut a = vec![0.0; m * cols];
    let mut lower = vec![0.0; cols];
    let mut upper = vec![f64::INFINITY; cols];
    for (j, v) in model.variables.iter().enumerate() {
        lower[j] = v.lower;
        upper[j] = v.upper;
    }
    let mut basis = vec![0; m];
    let mut status = vec![Status::Lower; cols];
    let mut next_art = n + slack_count;
    let mut artificials = Vec::with_capacity(art_count);
    for r in 0..m {
        a[r * cols..r * cols + n].copy_from_slice(&dense[r * n..(r + 1) * n]);
        if slack_col[r] != usize::MAX {
            a[r * cols + slack_col[r]] = slack_coef[r];
        }
        let basic = if needs_artificial[r] {
            a[r * cols + next_art] = 1.0;
            artificials.push(next_art);
            next_art += 1;
            next_art - 1
        } else {
            slack_col[r]
        };
        basis[r] = basic;
        status[basic] = Status::Basic(r);
    }
    let original = a.clone();

    let mut t = Tableau {
        rows: m,
        cols,
        a,
        beta: rhs.clone(),
        basis,
        status,
        lower,
        upper,
        iterations: 0,
        limit: 50 * (m + cols) + 1000,
    };

    if art_count > 0 {
        let mut phase1 = vec![0.0; cols];
        for &j in &artificials {
            phase1[j] = 1.0;
        }
        t.optimize(&phase1)?;
        let residual: f64 = artificials.iter().map(|&j| t.value(j)).sum();
        let scale = 1.0 + rhs.iter().map(|b| b.abs()).sum::<f64>();
        if residual > FEASIBILITY_TOL * scale {
            return Err(Error::LpInfeasible { residual });
        }
        // Freeze artificials at zero. Basic ones (redundant rows) stay basic at 0.
        for &j in &artificials {
            t.upper[j] = 0.0;
            if t.status[j] == Status::Upper {
                t.status[j] = Status::Lower;
            }
        }
    }

    let sign = match model.sense {
        Sense::Minimize => 1.0,
        Sense::Maximize => -1.0,
    };
    let mut phase2 = vec![0.0; cols];
    for (j, v) in model.variables.iter().enumerate() {
        phase2[j] = sign * v.cost;
    }
    t.optimize(&phase2)?;

    // Recompute the basic values from the original columns: this removes
    // drift accumulated by the tableau updates and certifies the basis.
    let mut residual_rhs = rhs;
    for j in 0..cols {
        if !matches!(t.status[j], Status::Basic(_)) {
            let x = t.value(j);
            if x != 0.0 {
                for (r, b) in residual_rhs.iter_mut().enumerate() {
                    *b -= original[r * cols + j] * x;
                }
            }
        }
    }
    let mut basis_matrix = vec![0.0; m * m];
    for r in 0..m {
        for (k, &j) in t.basis.iter().enumerate() {
            basis_matrix[r * m + k] = original[r * cols + j];
        }
    }
    let nonsingular = match solve_dense(basis_matrix, residual_rhs, m) {
        Some(xb) => {
            t.beta = xb;
            true
        }
        None => m == 0,
    };

    let values: Vec<f64> = (0..n).map(|j| t.value(j)).collect();
    let raw = model.objective(&values);
    let basic = nonsingular && super::is_extreme_point(model, &values, FEASIBILITY_TOL * 100.0);
    Ok(LpSolution {
        x: values[..model.x_count()].to_vec(),
        reported_objective: raw + model.objective_constant,
        raw_objective: raw,
        values,
        basic,
        iterations: t.iterations,
    })
}
