use alloc::vec::Vec;

use crate::instance::{ProblemKind, Sense};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarRole {
    /// Vertex variable `x_i`.
    X(usize),
    /// `y_e`, "both endpoints selected".
    Y(usize),
    /// `z_e`, "no endpoint selected".
    Z(usize),
    /// `r_e`, "exactly one endpoint selected" (or its complement, per formulation).
    R(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Variable {
    pub role: VarRole,
    pub lower: f64,
    pub upper: f64,
    pub cost: f64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeVars {
    pub y: Vec<Option<usize>>,
    pub z: Vec<Option<usize>>,
    pub r: Vec<Option<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub terms: Vec<(usize, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

impl Constraint {
    pub fn activity(&self, values: &[f64]) -> f64 {
        self.terms.iter().map(|&(j, a)| a * values[j]).sum()
    }

    /// Amount by which `values` violates the constraint (0 if satisfied).
    pub fn violation(&self, values: &[f64]) -> f64 {
        let lhs = self.activity(values);
        match self.relation {
            Relation::Le => (lhs - self.rhs).max(0.0),
            Relation::Ge => (self.rhs - lhs).max(0.0),
            Relation::Eq => (lhs - self.rhs).abs(),
        }
    }
}

/// A linear program over bounded variables.
///
/// By convention the first `n` variables are `x_0 .. x_{n-1}` in vertex order
/// for every model built from an instance.
#[derive(Clone, Debug, PartialEq)]
pub struct LpModel {
    pub variables: Vec<Variable>,
    pub constraints: Vec<Constraint>,
    /// Added to the raw objective when reporting.
    pub objective_constant: f64,
    pub formulation: ProblemKind,
    pub sense: Sense,
}

impl LpModel {
    pub fn new(formulation: ProblemKind, sense: Sense) -> Self {
        LpModel {
            variables: Vec::new(),
            constraints: Vec::new(),
            objective_constant: 0.0,
            formulation,
            sense,
        }
    }

    pub fn add_var(&mut self, role: VarRole, lower: f64, upper: f64, cost: f64) -> usize {
        self.variables.push(Variable {
            role,
            lower,
            upper,
            cost,
        });
        self.variables.len() - 1
    }

    pub fn add_constraint(&mut self, terms: Vec<(usize, f64)>, relation: Relation, rhs: f64) {
        self.constraints.push(Constraint {
            terms,
            relation,
            rhs,
        });
    }

    pub fn var_count(&self) -> usize {
        self.variables.len()
    }

    pub fn row_count(&self) -> usize {
        self.constraints.len()
    }

    /// Number of vertex variables.
    pub fn x_count(&self) -> usize {
        self.variables
            .iter()
            .take_while(|v| matches!(v.role, VarRole::X(_)))
            .count()
    }

    pub fn find(&self, role: VarRole) -> Option<usize> {
        self.variables.iter().position(|v| v.role == role)
    }

    /// Indices of the `y`, `z` and `r` variables of every edge `e < m`.
    pub fn edge_vars(&self, m: usize) -> EdgeVars {
        let mut ev = EdgeVars {
            y: alloc::vec![None; m],
            z: alloc::vec![None; m],
            r: alloc::vec![None; m],
        };
        for (k, v) in self.variables.iter().enumerate() {
            match v.role {
                VarRole::Y(e) if e < m => ev.y[e] = Some(k),
                VarRole::Z(e) if e < m => ev.z[e] = Some(k),
                VarRole::R(e) if e < m => ev.r[e] = Some(k),
                _ => {}
            }
        }
        ev
    }

    pub fn objective(&self, values: &[f64]) -> f64 {
        self.variables
            .iter()
            .zip(values)
            .map(|(v, x)| v.cost * x)
            .sum()
    }

    /// Largest violation over rows and bounds, each scaled by `1 + |rhs|`
    /// (bounds by `1 + |bound|`).
    pub fn max_violation(&self, values: &[f64]) -> f64 {
        let rows = self
            .constraints
            .iter()
            .map(|c| c.violation(values) / (1.0 + c.rhs.abs()));
        let bounds = self.variables.iter().zip(values).map(|(v, &x)| {
            let below = (v.lower - x).max(0.0) / (1.0 + v.lower.abs());
            let above = if v.upper.is_finite() {
                (x - v.upper).max(0.0) / (1.0 + v.upper.abs())
            } else {
                0.0
            };
            below.max(above)
        });
        rows.chain(bounds).fold(0.0, f64::max)
    }
}
