//! Objective-preserving transformations between the problem classes.
//!
//! Every reduction returns an [`AffineReduction`]: the target instance, a
//! constant offset, an orientation and a back-map such that for every
//! target-feasible `U`
//!
//! ```text
//! source(back(U)) = offset + target(U)     (Same)
//! source(back(U)) = offset - target(U)     (Negated)
//! ```
//!
//! Reductions never interpret `+inf`: a weight the source kind reads must be
//! finite, otherwise the offset would be meaningless.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::instance::{
    evaluate, BipartitePartition, Bqp01Instance, EdgeWeights, GvcInstance, ProblemKind, Sense,
    UbqpInstance, VertexSet,
};

/// Problem class of a reduction endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemClass {
    Gvc(ProblemKind),
    Ubqp,
    Bqp01,
}

impl ProblemClass {
    pub fn sense(self) -> Sense {
        match self {
            ProblemClass::Gvc(kind) => kind.sense(),
            _ => Sense::Minimize,
        }
    }
}

/// Anything with a subset objective.
pub trait Objective {
    fn class(&self) -> ProblemClass;
    fn universe(&self) -> usize;
    /// `None` if `set` is infeasible.
    fn value(&self, set: &VertexSet) -> Option<f64>;

    fn sense(&self) -> Sense {
        self.class().sense()
    }
}

/// A GVC-family instance together with the kind it is read as.
#[derive(Clone, Debug, PartialEq)]
pub struct GvcProblem {
    pub instance: GvcInstance,
    pub kind: ProblemKind,
}

impl GvcProblem {
    /// Checks the kind's forced-zero fields.
    pub fn new(instance: GvcInstance, kind: ProblemKind) -> Result<Self> {
        kind.check(&instance)?;
        Ok(GvcProblem { instance, kind })
    }
}

impl Objective for GvcProblem {
    fn class(&self) -> ProblemClass {
        ProblemClass::Gvc(self.kind)
    }

    fn universe(&self) -> usize {
        self.instance.n()
    }

    fn value(&self, set: &VertexSet) -> Option<f64> {
        evaluate(&self.instance, self.kind, set).ok().map(|s| s.value)
    }
}

impl Objective for UbqpInstance {
    fn class(&self) -> ProblemClass {
        ProblemClass::Ubqp
    }

    fn universe(&self) -> usize {
        self.n()
    }

    fn value(&self, set: &VertexSet) -> Option<f64> {
        Some(self.objective(set))
    }
}

impl Objective for Bqp01Instance {
    fn class(&self) -> ProblemClass {
        ProblemClass::Bqp01
    }

    fn universe(&self) -> usize {
        self.m() + self.n()
    }

    fn value(&self, set: &VertexSet) -> Option<f64> {
        Some(self.objective(set))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Same,
    /// The target optimizes the negated source objective.
    Negated,
}

impl Orientation {
    pub fn apply(self, value: f64) -> f64 {
        match self {
            Orientation::Same => value,
            Orientation::Negated => -value,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BackMap {
    Identity,
    /// `U -> V - U`.
    Complement,
    /// Target variable `k` is source vertex `vertices[k]`; the source has `n`
    /// vertices.
    Relabel { vertices: Vec<usize>, n: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct AffineReduction<T> {
    pub source: ProblemClass,
    pub target: T,
    pub offset: f64,
    pub orientation: Orientation,
    pub back: BackMap,
}

impl<T> AffineReduction<T> {
    /// The source value of `back(U)` given the target value of `U`.
    pub fn source_value(&self, target_value: f64) -> f64 {
        self.offset + self.orientation.apply(target_value)
    }

    pub fn map_back(&self, set: &VertexSet) -> VertexSet {
        match &self.back {
            BackMap::Identity => set.clone(),
            BackMap::Complement => set.complement(),
            BackMap::Relabel { vertices, n } => {
                assert_eq!(set.universe(), vertices.len(), "subset universe mismatch");
                VertexSet::from_members(*n, set.iter().map(|k| vertices[k]))
            }
        }
    }

    /// Sense the target is optimized in.
    pub fn target_sense(&self) -> Sense {
        match self.orientation {
            Orientation::Same => self.source.sense(),
            Orientation::Negated => self.source.sense().flipped(),
        }
    }
}

impl<T: Objective> AffineReduction<T> {
    /// `source(back(U)) - (offset ± target(U))` for a target-feasible `U`;
    /// `None` if `U` is infeasible for the target.
    ///
    /// # Panics
    /// If `back(U)` is infeasible for the source, which would mean the
    /// reduction is wrong.
    pub fn identity_residual<S: Objective>(&self, source: &S, set: &VertexSet) -> Option<f64> {
        let t = self.target.value(set)?;
        let back = self.map_back(set);
        let s = source
            .value(&back)
            .expect("back-map of a feasible target subset must be source-feasible");
        Some(s - self.source_value(t))
    }
}

pub(crate) fn require_finite_reads(instance: &GvcInstance, kind: ProblemKind) -> Result<()> {
    let reads = kind.reads();
    for e in instance.edges() {
        let w = e.weights;
        if (reads[0] && !w.q0.is_finite())
            || (reads[1] && !w.q1.is_finite())
            || (reads[2] && !w.q2.is_finite())
        {
            return Err(Error::InfiniteWeight { u: e.u, v: e.v });
        }
    }
    Ok(())
}

pub(crate) fn precheck(instance: &GvcInstance, kind: ProblemKind) -> Result<()> {
    kind.check(instance)?;
    require_finite_reads(instance, kind)
}

fn gvc_target(
    source: ProblemKind,
    instance: GvcInstance,
    kind: ProblemKind,
    offset: f64,
) -> AffineReduction<GvcProblem> {
    AffineReduction {
        source: ProblemClass::Gvc(source),
        target: GvcProblem { instance, kind },
        offset,
        orientation: Orientation::Same,
        back: BackMap::Identity,
    }
}

fn shifted_costs(instance: &GvcInstance, f: impl Fn(&EdgeWeights) -> f64) -> Vec<f64> {
    let sums = instance.incident_sums(f);
    instance
        .costs()
        .iter()
        .zip(sums)
        .map(|(c, s)| c + s)
        .collect()
}

/// GVC to GVC1: `c'_i = c_i + sum (q2 - q1)`, `q0' = q2 - 2 q1 + q0`,
/// offset `sum (2 q1 - q2)`.
pub fn gvc_to_gvc1(g: &GvcInstance) -> Result<AffineReduction<GvcProblem>> {
    precheck(g, ProblemKind::Gvc)?;
    let costs = shifted_costs(g, |w| w.q2 - w.q1);
    let target = GvcInstance::new(
        costs,
        g.edges()
            .iter()
            .map(|e| (e.u, e.v, EdgeWeights::new(e.weights.lifted(), 0.0, 0.0))),
    )?;
    let offset = g.edge_sum(|w| 2.0 * w.q1 - w.q2);
    Ok(gvc_target(ProblemKind::Gvc, target, ProblemKind::Gvc1, offset))
}

/// GVC to GVC2: `c''_i = c_i + sum (q1 - q0)`, `q2'' = q2 - 2 q1 + q0`,
/// offset `sum q0`.
pub fn gvc_to_gvc2(g: &GvcInstance) -> Result<AffineReduction<GvcProblem>> {
    precheck(g, ProblemKind::Gvc)?;
    let costs = shifted_costs(g, |w| w.q1 - w.q0);
    let target = GvcInstance::new(
        costs,
        g.edges()
            .iter()
            .map(|e| (e.u, e.v, EdgeWeights::new(0.0, 0.0, e.weights.lifted()))),
    )?;
    let offset = g.edge_sum(|w| w.q0);
    Ok(gvc_target(ProblemKind::Gvc, target, ProblemKind::Gvc2, offset))
}

fn ubqp_target(
    source: ProblemKind,
    linear: Vec<f64>,
    g: &GvcInstance,
    coefficient: impl Fn(&EdgeWeights) -> f64,
    offset: f64,
) -> Result<AffineReduction<UbqpInstance>> {
    let target = UbqpInstance::new(
        linear,
        g.edges()
            .iter()
            .map(|e| (e.u, e.v, coefficient(&e.weights) / 2.0)),
    )?;
    Ok(AffineReduction {
        source: ProblemClass::Gvc(source),
        target,
        offset,
        orientation: Orientation::Same,
        back: BackMap::Identity,
    })
}

/// GVC to UBQP: `Q_ij = (q2 - 2 q1 + q0) / 2`, `a_i = c_i + sum (q1 - q0)`,
/// offset `sum q0`.
pub fn gvc_to_ubqp(g: &GvcInstance) -> Result<AffineReduction<UbqpInstance>> {
    precheck(g, ProblemKind::Gvc)?;
    let linear = shifted_costs(g, |w| w.q1 - w.q0);
    ubqp_target(ProblemKind::Gvc, linear, g, EdgeWeights::lifted, g.edge_sum(|w| w.q0))
}

/// GVC1 to UBQP: `Q_ij = q0 / 2`, `a_i = c_i - sum q0`, offset `sum q0`.
pub fn gvc1_to_ubqp(g: &GvcInstance) -> Result<AffineReduction<UbqpInstance>> {
    precheck(g, ProblemKind::Gvc1)?;
    let linear = shifted_costs(g, |w| -w.q0);
    ubqp_target(ProblemKind::Gvc1, linear, g, |w| w.q0, g.edge_sum(|w| w.q0))
}

/// GVC2 to UBQP: `Q_ij = q2 / 2`, `a = c`, offset 0.
pub fn gvc2_to_ubqp(g: &GvcInstance) -> Result<AffineReduction<UbqpInstance>> {
    precheck(g, ProblemKind::Gvc2)?;
    ubqp_target(ProblemKind::Gvc2, g.costs().to_vec(), g, |w| w.q2, 0.0)
}

/// UBQP to GVC2 on the support graph: `c = a`, `q2 = 2 Q`, offset 0.
pub fn ubqp_to_gvc2(q: &UbqpInstance) -> Result<AffineReduction<GvcProblem>> {
    let instance = GvcInstance::new(
        q.linear().to_vec(),
        q.pairs()
            .iter()
            .map(|&(i, j, w)| (i, j, EdgeWeights::new(0.0, 0.0, 2.0 * w))),
    )?;
    Ok(AffineReduction {
        source: ProblemClass::Ubqp,
        target: GvcProblem {
            instance,
            kind: ProblemKind::Gvc2,
        },
        offset: 0.0,
        orientation: Orientation::Same,
        back: BackMap::Identity,
    })
}

/// Complementation `U -> V - U` on a general GVC instance: `c -> -c`,
/// `q0 <-> q2`, `q1` unchanged, offset `sum_V c`. It is an involution on
/// instances.
pub fn complement(g: &GvcInstance) -> Result<AffineReduction<GvcProblem>> {
    complement_as(g, ProblemKind::Gvc, ProblemKind::Gvc)
}

fn complement_as(
    g: &GvcInstance,
    source: ProblemKind,
    target: ProblemKind,
) -> Result<AffineReduction<GvcProblem>> {
    precheck(g, source)?;
    let instance = GvcInstance::new(
        g.costs().iter().map(|c| -c).collect(),
        g.edges().iter().map(|e| {
            let w = e.weights;
            (e.u, e.v, EdgeWeights::new(w.q2, w.q1, w.q0))
        }),
    )?;
    Ok(AffineReduction {
        source: ProblemClass::Gvc(source),
        target: GvcProblem {
            instance,
            kind: target,
        },
        offset: g.costs().iter().sum(),
        orientation: Orientation::Same,
        back: BackMap::Complement,
    })
}

/// GVC1 to GVC2 by complementation: `c -> -c`, `q2 = q0`, offset `sum_V c`.
pub fn gvc1_complement_gvc2(g: &GvcInstance) -> Result<AffineReduction<GvcProblem>> {
    complement_as(g, ProblemKind::Gvc1, ProblemKind::Gvc2)
}

/// Which bipartite construction to use; each demands its own zero fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BqpVariant {
    Gvc,
    Gvc1,
    Gvc2,
}

impl BqpVariant {
    pub fn kind(self) -> ProblemKind {
        match self {
            BqpVariant::Gvc => ProblemKind::Gvc,
            BqpVariant::Gvc1 => ProblemKind::Gvc1,
            BqpVariant::Gvc2 => ProblemKind::Gvc2,
        }
    }
}

/// Bipartite GVC to BQP01. Rows are `V1` and columns `V2`, both in increasing
/// vertex order. `Q_ij = q2 - 2 q1 + q0` (not halved), `a_i = c_i + sum (q1 -
/// q0)`, `b_j = d_j + sum (q1 - q0)`, offset `sum q0`. The GVC1 and GVC2
/// variants are the same formulas with the zero fields dropped.
pub fn bipartite_gvc_to_bqp01(
    g: &GvcInstance,
    partition: &BipartitePartition,
    variant: BqpVariant,
) -> Result<AffineReduction<Bqp01Instance>> {
    partition.validate(g)?;
    precheck(g, variant.kind())?;
    let left = partition.left();
    let right = partition.right();
    let mut position = vec![0usize; g.n()];
    for (k, &i) in left.iter().enumerate() {
        position[i] = k;
    }
    for (k, &j) in right.iter().enumerate() {
        position[j] = k;
    }
    let linear = shifted_costs(g, |w| w.q1 - w.q0);
    let a = left.iter().map(|&i| linear[i]).collect();
    let b = right.iter().map(|&j| linear[j]).collect();
    let entries = g.edges().iter().map(|e| {
        let (i, j) = if partition.side(e.u) == crate::instance::Side::Left {
            (e.u, e.v)
        } else {
            (e.v, e.u)
        };
        (position[i], position[j], e.weights.lifted())
    });
    let target = Bqp01Instance::new(a, b, entries)?;
    let mut vertices = left;
    vertices.extend(right);
    Ok(AffineReduction {
        source: ProblemClass::Gvc(variant.kind()),
        target,
        offset: g.edge_sum(|w| w.q0),
        orientation: Orientation::Same,
        back: BackMap::Relabel {
            vertices,
            n: g.n(),
        },
    })
}

fn with_fields(
    g: &GvcInstance,
    costs: Vec<f64>,
    f: impl Fn(&EdgeWeights) -> EdgeWeights,
) -> Result<GvcInstance> {
    GvcInstance::new(costs, g.edges().iter().map(|e| (e.u, e.v, f(&e.weights))))
}

/// VCPNEW to VCOP (`q2' = q2 - q1`, offset `sum q1`) or to VCUP
/// (`q1' = q1 - q2`, offset `sum q2`). `q0` is not read on covers and is set
/// to zero in the target.
pub fn vcpnew_normalize(g: &GvcInstance, to: ProblemKind) -> Result<AffineReduction<GvcProblem>> {
    precheck(g, ProblemKind::Vcpnew)?;
    let (instance, offset) = match to {
        ProblemKind::Vcop => (
            with_fields(g, g.costs().to_vec(), |w| EdgeWeights::new(0.0, 0.0, w.q2 - w.q1))?,
            g.edge_sum(|w| w.q1),
        ),
        ProblemKind::Vcup => (
            with_fields(g, g.costs().to_vec(), |w| EdgeWeights::new(0.0, w.q1 - w.q2, 0.0))?,
            g.edge_sum(|w| w.q2),
        ),
        other => {
            return Err(Error::FormulationMismatch {
                expected: ProblemKind::Vcop,
                found: other,
            })
        }
    };
    Ok(gvc_target(ProblemKind::Vcpnew, instance, to, offset))
}

/// VCPNEW to MWVCP: `w_i = c_i + sum (q2 - q1)`, offset `sum (2 q1 - q2)`.
pub fn vcpnew_to_mwvcp(g: &GvcInstance) -> Result<AffineReduction<GvcProblem>> {
    precheck(g, ProblemKind::Vcpnew)?;
    let instance = with_fields(g, shifted_costs(g, |w| w.q2 - w.q1), |_| EdgeWeights::ZERO)?;
    let offset = g.edge_sum(|w| 2.0 * w.q1 - w.q2);
    Ok(gvc_target(ProblemKind::Vcpnew, instance, ProblemKind::Mwvcp, offset))
}

/// ISPNEW to ISOP (`q0' = q0 - q1`, offset `sum q1`) or to ISUP
/// (`q1' = q1 - q0`, offset `sum q0`). `q2` is not read on independent sets
/// and is set to zero in the target.
pub fn ispnew_normalize(g: &GvcInstance, to: ProblemKind) -> Result<AffineReduction<GvcProblem>> {
    precheck(g, ProblemKind::Ispnew)?;
    let (instance, offset) = match to {
        ProblemKind::Isop => (
            with_fields(g, g.costs().to_vec(), |w| EdgeWeights::new(w.q0 - w.q1, 0.0, 0.0))?,
            g.edge_sum(|w| w.q1),
        ),
        ProblemKind::Isup => (
            with_fields(g, g.costs().to_vec(), |w| EdgeWeights::new(0.0, w.q1 - w.q0, 0.0))?,
            g.edge_sum(|w| w.q0),
        ),
        other => {
            return Err(Error::FormulationMismatch {
                expected: ProblemKind::Isop,
                found: other,
            })
        }
    };
    Ok(gvc_target(ProblemKind::Ispnew, instance, to, offset))
}

/// ISPNEW to MWISP: `w_i = c_i + sum (q1 - q0)`, offset `sum q0`.
pub fn ispnew_to_mwisp(g: &GvcInstance) -> Result<AffineReduction<GvcProblem>> {
    precheck(g, ProblemKind::Ispnew)?;
    let instance = with_fields(g, shifted_costs(g, |w| w.q1 - w.q0), |_| EdgeWeights::ZERO)?;
    let offset = g.edge_sum(|w| w.q0);
    Ok(gvc_target(ProblemKind::Ispnew, instance, ProblemKind::Mwisp, offset))
}

/// ISPNEW (maximize) to VCPNEW (minimize) through `P -> V - P`.
///
/// For an independent set `P` and the cover `C = V - P`, `E0(P) = E2(C)` and
/// `E1(P) = E1(C)`, so `f(V - C) = sum_V c - t(C)` with target data
/// `c' = c`, `q1' = -q1`, `q2' = -q0`.
pub fn ispnew_complement_vcpnew(g: &GvcInstance) -> Result<AffineReduction<GvcProblem>> {
    precheck(g, ProblemKind::Ispnew)?;
    let instance = with_fields(g, g.costs().to_vec(), |w| EdgeWeights::new(0.0, -w.q1, -w.q0))?;
    Ok(AffineReduction {
        source: ProblemClass::Gvc(ProblemKind::Ispnew),
        target: GvcProblem {
            instance,
            kind: ProblemKind::Vcpnew,
        },
        offset: g.costs().iter().sum(),
        orientation: Orientation::Negated,
        back: BackMap::Complement,
    })
}
