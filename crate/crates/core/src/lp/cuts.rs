//! Clique inequalities `sum_{i in C} x_i - sum_{e in E(C)} y_e <= 1` for GVC2.

use alloc::format;
use alloc::vec::Vec;

use super::model::{LpModel, Relation, VarRole};
use super::simplex::{solve_lp, LpSolution};
use crate::error::{Error, Result};
use crate::instance::{GvcInstance, ProblemKind};

#[derive(Clone, Debug, PartialEq)]
pub struct CliqueCut {
    /// Clique vertices, increasing.
    pub clique: Vec<usize>,
    /// Indices of the clique's edges in the instance.
    pub edges: Vec<usize>,
    pub rhs: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CutPool {
    pub cuts: Vec<CliqueCut>,
}

impl CutPool {
    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }
}

/// All triangles (and, for `max_size = 4`, all 4-cliques) of the instance.
pub fn clique_cuts(instance: &GvcInstance, max_size: usize) -> Result<CutPool> {
    if !(3..=4).contains(&max_size) {
        return Err(Error::Config(format!(
            "clique size {max_size} not supported; use 3 or 4"
        )));
    }
    let n = instance.n();
    let adjacent = |a: usize, b: usize| instance.find_edge(a, b);
    let mut pool = CutPool::default();
    let mut push = |clique: &[usize]| {
        let mut edges = Vec::new();
        for (k, &a) in clique.iter().enumerate() {
            for &b in &clique[k + 1..] {
                edges.push(adjacent(a, b).expect("clique edge"));
            }
        }
        pool.cuts.push(CliqueCut {
            clique: clique.to_vec(),
            edges,
            rhs: 1.0,
        });
    };
    for i in 0..n {
        let mut up: Vec<usize> = instance.neighbors(i).filter(|&j| j > i).collect();
        up.sort_unstable();
        for (a, &j) in up.iter().enumerate() {
            for &k in &up[a + 1..] {
                if adjacent(j, k).is_none() {
                    continue;
                }
                push(&[i, j, k]);
                if max_size == 4 {
                    for &l in up.iter().filter(|&&l| l > k) {
                        if adjacent(j, l).is_some() && adjacent(k, l).is_some() {
                            push(&[i, j, k, l]);
                        }
                    }
                }
            }
        }
    }
    Ok(pool)
}

/// `model` with every cut of `pool` appended as a row.
pub fn with_cuts(model: &LpModel, pool: &CutPool) -> Result<LpModel> {
    if model.formulation != ProblemKind::Gvc2 {
        return Err(Error::FormulationMismatch {
            expected: ProblemKind::Gvc2,
            found: model.formulation,
        });
    }
    let mut out = model.clone();
    for cut in &pool.cuts {
        let mut terms: Vec<(usize, f64)> = Vec::with_capacity(cut.clique.len() + cut.edges.len());
        for &i in &cut.clique {
            let x = model.find(VarRole::X(i)).ok_or_else(|| {
                Error::Dimension(format!("cut vertex {i} has no variable in the model"))
            })?;
            terms.push((x, 1.0));
        }
        for &e in &cut.edges {
            let y = model.find(VarRole::Y(e)).ok_or_else(|| {
                Error::Dimension(format!("cut edge {e} has no y variable in the model"))
            })?;
            terms.push((y, -1.0));
        }
        out.add_constraint(terms, Relation::Le, cut.rhs);
    }
    Ok(out)
}

pub fn solve_lp_with_cuts(model: &LpModel, pool: &CutPool) -> Result<LpSolution> {
    solve_lp(&with_cuts(model, pool)?)
}
