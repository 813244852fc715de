//! LP relaxations: model building, a simplex solver, half-integrality checks
//! and clique cuts.

mod cuts;
mod formulations;
mod model;
mod simplex;

use alloc::vec;
use alloc::vec::Vec;

pub use cuts::{clique_cuts, solve_lp_with_cuts, with_cuts, CliqueCut, CutPool};
pub use formulations::{build, build_gvc1_equivalent, build_gvc2_equivalent};
pub use model::{Constraint, EdgeVars, LpModel, Relation, VarRole, Variable};
pub use simplex::{solve_lp, LpSolution, FEASIBILITY_TOL, OPTIMALITY_TOL, PIVOT_TOL};

use crate::error::{Error, Result};
use crate::instance::GvcInstance;

/// Default tolerance of [`check_half_integral`].
pub const HALF_INTEGRAL_TOL: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq)]
pub struct HalfIntegralReport {
    /// Distance of each `x_i` to the nearest of `0`, `1/2`, `1`.
    pub distances: Vec<f64>,
    pub tolerance: f64,
    /// Indices whose distance exceeds the tolerance.
    pub offending: Vec<usize>,
}

impl HalfIntegralReport {
    pub fn passed(&self) -> bool {
        self.offending.is_empty()
    }

    pub fn max_distance(&self) -> f64 {
        self.distances.iter().copied().fold(0.0, f64::max)
    }
}

/// Distance from `x` to `{0, 1/2, 1}`.
pub fn half_integral_distance(x: f64) -> f64 {
    x.abs().min((x - 0.5).abs()).min((x - 1.0).abs())
}

/// Checks that every vertex variable is in `{0, 1/2, 1}` up to `tolerance`.
/// Edge variables are not inspected. Only basic solutions are accepted.
pub fn check_half_integral(sol: &LpSolution, tolerance: f64) -> Result<HalfIntegralReport> {
    if !sol.basic {
        return Err(Error::NotBasic);
    }
    let distances: Vec<f64> = sol.x.iter().map(|&x| half_integral_distance(x)).collect();
    let offending = distances
        .iter()
        .enumerate()
        .filter(|&(_, &d)| d > tolerance)
        .map(|(i, _)| i)
        .collect();
    Ok(HalfIntegralReport {
        distances,
        tolerance,
        offending,
    })
}

/// Whether `values` is a vertex of the model's feasible region: the
/// constraints and bounds active at `values` have rank equal to the number
/// of variables. `tol` is the (scaled) activity tolerance.
pub fn is_extreme_point(model: &LpModel, values: &[f64], tol: f64) -> bool {
    let n = model.var_count();
    if n == 0 {
        return true;
    }
    if model.max_violation(values) > tol {
        return false;
    }
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for c in &model.constraints {
        let active = match c.relation {
            Relation::Eq => true,
            _ => (c.activity(values) - c.rhs).abs() <= tol * (1.0 + c.rhs.abs()),
        };
        if active {
            let mut row = vec![0.0; n];
            for &(j, a) in &c.terms {
                row[j] += a;
            }
            rows.push(row);
        }
    }
    for (j, v) in model.variables.iter().enumerate() {
        let x = values[j];
        let at_lower = (x - v.lower).abs() <= tol * (1.0 + v.lower.abs());
        let at_upper = v.upper.is_finite() && (x - v.upper).abs() <= tol * (1.0 + v.upper.abs());
        if at_lower || at_upper {
            let mut row = vec![0.0; n];
            row[j] = 1.0;
            rows.push(row);
        }
    }
    rank(rows, n) == n
}

fn rank(mut rows: Vec<Vec<f64>>, cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).max_by(|&a, &b| rows[a][c].abs().total_cmp(&rows[b][c].abs()))
        else {
            break;
        };
        if rows[p][c].abs() < 1e-9 {
            continue;
        }
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            let f = row[c] / pivot[c];
            if f != 0.0 {
                for (x, &y) in row.iter_mut().zip(&pivot).skip(c) {
                    *x -= f * y;
                }
            }
        }
        r += 1;
    }
    r
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceReport {
    pub gvc: f64,
    pub gvc1: f64,
    pub gvc2: f64,
}

impl EquivalenceReport {
    /// Largest pairwise difference of the three reported optima.
    pub fn max_gap(&self) -> f64 {
        let v = [self.gvc, self.gvc1, self.gvc2];
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        hi - lo
    }

    pub fn agrees(&self, tol: f64) -> bool {
        self.max_gap() <= tol
    }
}

/// Solves GVC-LP and its two substituted forms and reports the three optima
/// (constants included).
pub fn lp_equivalence_check(instance: &GvcInstance) -> Result<EquivalenceReport> {
    instance.require_finite()?;
    let gvc = solve_lp(&build(instance, crate::instance::ProblemKind::Gvc)?)?;
    let gvc1 = solve_lp(&build_gvc1_equivalent(instance)?)?;
    let gvc2 = solve_lp(&build_gvc2_equivalent(instance)?)?;
    Ok(EquivalenceReport {
        gvc: gvc.reported_objective,
        gvc1: gvc1.reported_objective,
        gvc2: gvc2.reported_objective,
    })
}
