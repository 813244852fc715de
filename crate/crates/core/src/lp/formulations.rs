//! Integer programs of the problem family, relaxed to `[0, 1]` boxes.

use alloc::vec;

use super::model::{LpModel, Relation, VarRole};
use crate::error::Result;
use crate::instance::{big_m, EdgeWeights, GvcInstance, ProblemKind};
use crate::reductions::precheck;

use Relation::{Eq, Ge, Le};

fn with_vertices(instance: &GvcInstance, kind: ProblemKind, costs: &[f64]) -> LpModel {
    let mut model = LpModel::new(kind, kind.sense());
    for (i, &c) in costs.iter().enumerate() {
        model.add_var(VarRole::X(i), 0.0, 1.0, c);
    }
    debug_assert_eq!(model.var_count(), instance.n());
    model
}

/// The relaxation of the integer program of `kind`.
///
/// For [`ProblemKind::Gvc`] every `+inf` weight is replaced by
/// [`big_m`] before the objective is formed; all other kinds need finite
/// values in the weights they read.
pub fn build(instance: &GvcInstance, kind: ProblemKind) -> Result<LpModel> {
    kind.check(instance)?;
    if kind == ProblemKind::Gvc {
        return Ok(build_gvc(instance));
    }
    precheck(instance, kind)?;
    let mut model = with_vertices(instance, kind, instance.costs());
    for (e, edge) in instance.edges().iter().enumerate() {
        let (i, j) = (edge.u, edge.v);
        let w = edge.weights;
        match kind {
            ProblemKind::Gvc => unreachable!(),
            ProblemKind::Gvc1 => {
                let z = model.add_var(VarRole::Z(e), 0.0, 1.0, w.q0);
                model.add_constraint(vec![(i, 1.0), (j, 1.0), (z, 1.0)], Ge, 1.0);
                model.add_constraint(vec![(z, 1.0), (i, 1.0)], Le, 1.0);
                model.add_constraint(vec![(z, 1.0), (j, 1.0)], Le, 1.0);
            }
            ProblemKind::Gvc2 => {
                let y = model.add_var(VarRole::Y(e), 0.0, 1.0, w.q2);
                model.add_constraint(vec![(i, 1.0), (j, 1.0), (y, -1.0)], Le, 1.0);
                model.add_constraint(vec![(y, 1.0), (i, -1.0)], Le, 0.0);
                model.add_constraint(vec![(y, 1.0), (j, -1.0)], Le, 0.0);
            }
            ProblemKind::Vcpnew => {
                let y = model.add_var(VarRole::Y(e), 0.0, 1.0, w.q2);
                let r = model.add_var(VarRole::R(e), 0.0, 1.0, w.q1);
                model.add_constraint(vec![(i, 1.0), (j, 1.0), (y, -1.0)], Eq, 1.0);
                model.add_constraint(vec![(y, 1.0), (r, 1.0)], Eq, 1.0);
            }
            ProblemKind::Vcop => {
                let y = model.add_var(VarRole::Y(e), 0.0, 1.0, w.q2);
                model.add_constraint(vec![(i, 1.0), (j, 1.0), (y, -1.0)], Eq, 1.0);
            }
            ProblemKind::Vcup => {
                // r <= 1 is what forces the cover
                let r = model.add_var(VarRole::R(e), 0.0, 1.0, w.q1);
                model.add_constraint(vec![(i, 1.0), (j, 1.0), (r, 1.0)], Eq, 2.0);
            }
            ProblemKind::Ispnew => {
                let z = model.add_var(VarRole::Z(e), 0.0, 1.0, w.q0);
                let r = model.add_var(VarRole::R(e), 0.0, 1.0, w.q1);
                model.add_constraint(vec![(i, 1.0), (j, 1.0), (z, 1.0)], Eq, 1.0);
                model.add_constraint(vec![(z, 1.0), (r, 1.0)], Eq, 1.0);
            }
            ProblemKind::Isop => {
                let z = model.add_var(VarRole::Z(e), 0.0, 1.0, w.q0);
                model.add_constraint(vec![(i, 1.0), (j, 1.0), (z, 1.0)], Eq, 1.0);
            }
            ProblemKind::Isup => {
                let r = model.add_var(VarRole::R(e), 0.0, 1.0, w.q1);
                model.add_constraint(vec![(i, 1.0), (j, 1.0), (r, -1.0)], Eq, 0.0);
            }
            ProblemKind::Mwvcp => model.add_constraint(vec![(i, 1.0), (j, 1.0)], Ge, 1.0),
            ProblemKind::Mwisp => model.add_constraint(vec![(i, 1.0), (j, 1.0)], Le, 1.0),
        }
    }
    Ok(model)
}

fn materialize(w: EdgeWeights, m: f64) -> EdgeWeights {
    let fix = |q: f64| if q.is_finite() { q } else { m };
    EdgeWeights::new(fix(w.q0), fix(w.q1), fix(w.q2))
}

/// `min c x + sum (q2 - q1) y + (q0 - q1) z + sum q1`, with `z` tied to the
/// edge by `z = 1 - x_i - x_j + y`.
fn build_gvc(instance: &GvcInstance) -> LpModel {
    let m = big_m(instance);
    let mut model = with_vertices(instance, ProblemKind::Gvc, instance.costs());
    for (e, edge) in instance.edges().iter().enumerate() {
        let (i, j) = (edge.u, edge.v);
        let w = materialize(edge.weights, m);
        let y = model.add_var(VarRole::Y(e), 0.0, 1.0, w.q2 - w.q1);
        let z = model.add_var(VarRole::Z(e), 0.0, 1.0, w.q0 - w.q1);
        model.add_constraint(vec![(i, 1.0), (j, 1.0), (y, -1.0)], Le, 1.0);
        model.add_constraint(vec![(y, 1.0), (i, -1.0)], Le, 0.0);
        model.add_constraint(vec![(y, 1.0), (j, -1.0)], Le, 0.0);
        model.add_constraint(vec![(z, 1.0), (i, 1.0), (j, 1.0), (y, -1.0)], Eq, 1.0);
        model.objective_constant += w.q1;
    }
    model
}

/// GVC-LP with `y` eliminated through `y = x_i + x_j + z - 1`.
///
/// Same optimum as [`build`] for [`ProblemKind::Gvc`]; the model is tagged
/// GVC1 because only `z` remains.
pub fn build_gvc1_equivalent(instance: &GvcInstance) -> Result<LpModel> {
    instance.require_finite()?;
    let shift = instance.incident_sums(|w| w.q2 - w.q1);
    let costs: alloc::vec::Vec<f64> = instance.costs().iter().zip(&shift).map(|(c, s)| c + s).collect();
    let mut model = with_vertices(instance, ProblemKind::Gvc1, &costs);
    for (e, edge) in instance.edges().iter().enumerate() {
        let (i, j) = (edge.u, edge.v);
        let w = edge.weights;
        let z = model.add_var(VarRole::Z(e), 0.0, 1.0, w.lifted());
        model.add_constraint(vec![(i, 1.0), (j, 1.0), (z, 1.0)], Ge, 1.0);
        model.add_constraint(vec![(i, 1.0), (z, 1.0)], Le, 1.0);
        model.add_constraint(vec![(j, 1.0), (z, 1.0)], Le, 1.0);
        model.add_constraint(vec![(i, 1.0), (j, 1.0), (z, 1.0)], Le, 2.0);
        model.objective_constant += 2.0 * w.q1 - w.q2;
    }
    Ok(model)
}

/// GVC-LP with `z` eliminated through `z = 1 - x_i - x_j + y`.
pub fn build_gvc2_equivalent(instance: &GvcInstance) -> Result<LpModel> {
    instance.require_finite()?;
    let shift = instance.incident_sums(|w| w.q1 - w.q0);
    let costs: alloc::vec::Vec<f64> = instance.costs().iter().zip(&shift).map(|(c, s)| c + s).collect();
    let mut model = with_vertices(instance, ProblemKind::Gvc2, &costs);
    for (e, edge) in instance.edges().iter().enumerate() {
        let (i, j) = (edge.u, edge.v);
        let w = edge.weights;
        let y = model.add_var(VarRole::Y(e), 0.0, 1.0, w.lifted());
        model.add_constraint(vec![(i, 1.0), (j, 1.0), (y, -1.0)], Le, 1.0);
        model.add_constraint(vec![(y, 1.0), (i, -1.0)], Le, 0.0);
        model.add_constraint(vec![(y, 1.0), (j, -1.0)], Le, 0.0);
        model.add_constraint(vec![(i, 1.0), (j, 1.0), (y, -1.0)], Ge, 0.0);
        model.objective_constant += w.q0;
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::instance::INF;

    fn single_edge() -> GvcInstance {
        GvcInstance::new(vec![0.0, 0.0], [(0, 1, EdgeWeights::new(5.0, 3.0, 2.0))]).unwrap()
    }

    #[test]
    fn single_edge_gvc_transcription() {
        let model = build(&single_edge(), ProblemKind::Gvc).unwrap();
        let costs: alloc::vec::Vec<f64> = model.variables.iter().map(|v| v.cost).collect();
        assert_eq!(costs, [0.0, 0.0, -1.0, 2.0]);
        assert_eq!(model.objective_constant, 3.0);
        assert_eq!(model.row_count(), 4);
        assert_eq!(model.constraints.iter().filter(|c| c.relation == Eq).count(), 1);
    }

    #[test]
    fn edgeless_models_only_carry_costs() {
        let g = GvcInstance::edgeless(vec![1.0, -2.0]).unwrap();
        for kind in ProblemKind::ALL {
            let model = build(&g, kind).unwrap();
            assert_eq!(model.var_count(), 2);
            assert_eq!(model.row_count(), 0);
            assert_eq!(model.objective_constant, 0.0);
        }
    }

    #[test]
    fn infinite_weights_become_big_m() {
        let g = GvcInstance::new(
            vec![1.0; 3],
            [
                (0, 1, EdgeWeights::new(INF, 0.0, 2.0)),
                (1, 2, EdgeWeights::new(INF, 0.0, 3.0)),
                (0, 2, EdgeWeights::new(INF, 0.0, 1.0)),
            ],
        )
        .unwrap();
        let m = big_m(&g);
        assert_eq!(m, 10.0);
        let model = build(&g, ProblemKind::Gvc).unwrap();
        for e in 0..3 {
            let z = model.find(VarRole::Z(e)).unwrap();
            assert_eq!(model.variables[z].cost, m);
        }
        assert_eq!(model.objective_constant, 0.0);
    }

    #[test]
    fn kind_mismatch_is_rejected() {
        assert!(matches!(
            build(&single_edge(), ProblemKind::Gvc2),
            Err(Error::KindMismatch { .. })
        ));
    }

    #[test]
    fn infinite_read_weight_outside_gvc_is_rejected() {
        let g = GvcInstance::new(vec![0.0, 0.0], [(0, 1, EdgeWeights::new(INF, 0.0, 0.0))]).unwrap();
        assert!(matches!(build(&g, ProblemKind::Gvc1), Err(Error::InfiniteWeight { .. })));
        // VCPNEW ignores q0
        assert!(build(&g, ProblemKind::Vcpnew).is_ok());
    }
}
