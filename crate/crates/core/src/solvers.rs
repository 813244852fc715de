//! LP rounding with its guarantees, the min-cut special cases, vertex-deletion
//! branching for GVC2 and the uniform GVC2 structure checks.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::flow::PseudoBoolean;
use crate::instance::{evaluate, BipartitePartition, GvcInstance, ProblemKind, UbqpInstance, VertexSet};
use crate::lp::{build, solve_lp, LpSolution};
use crate::oracle::{brute_force, independence_number, OracleResult};
use crate::reductions::{bipartite_gvc_to_bqp01, gvc2_to_ubqp, vcpnew_to_mwvcp, BqpVariant};

/// Slack on the rounding threshold; `x_i` this close below `1/2` still rounds up.
const ROUND_TOL: f64 = 1e-9;

/// Slack when comparing observed ratios against bounds.
const RATIO_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Rounding {
    pub members: VertexSet,
    /// Exact objective of `members`.
    pub value: f64,
    /// The basic LP solution that was rounded.
    pub lp: LpSolution,
    /// `y*_e = min(x*_i, x*_j)` per edge.
    pub y: Vec<f64>,
    /// `z*_e = min(1 - x*_i, 1 - x*_j)` per edge.
    pub z: Vec<f64>,
}

/// Solves GVC-LP and keeps every vertex with `x_i >= 1/2`.
pub fn round_gvc(instance: &GvcInstance) -> Result<Rounding> {
    let lp = solve_lp(&build(instance, ProblemKind::Gvc)?)?;
    let members = VertexSet::from_bools(lp.x.iter().map(|&x| x >= 0.5 - ROUND_TOL).collect());
    let value = evaluate(instance, ProblemKind::Gvc, &members)?.value;
    let bit = |i: usize| members.contains(i) as u8 as f64;
    let y = instance
        .edges()
        .iter()
        .map(|e| bit(e.u).min(bit(e.v)))
        .collect();
    let z = instance
        .edges()
        .iter()
        .map(|e| (1.0 - bit(e.u)).min(1.0 - bit(e.v)))
        .collect();
    Ok(Rounding {
        members,
        value,
        lp,
        y,
        z,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RoundingGuarantee {
    /// `0 <= q2 <= alpha q1`, `0 <= q1 <= beta q0`, `c >= 0`.
    Ratio { alpha: f64, beta: f64 },
    /// Every weight in `[k, alpha k]`, `c >= 0`.
    Band { k: f64, alpha: f64 },
}

impl RoundingGuarantee {
    /// `max{2, alpha, alpha beta}` or `max{2, alpha}`.
    pub fn bound(&self) -> f64 {
        match *self {
            RoundingGuarantee::Ratio { alpha, beta } => 2f64.max(alpha).max(alpha * beta),
            RoundingGuarantee::Band { alpha, .. } => 2f64.max(alpha),
        }
    }

    fn check_parameters(&self) -> Result<()> {
        let ok = match *self {
            RoundingGuarantee::Ratio { alpha, beta } => alpha >= 1.0 && beta >= 1.0 && (alpha * beta).is_finite(),
            RoundingGuarantee::Band { k, alpha } => k >= 0.0 && k.is_finite() && alpha > 1.0 && alpha.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!("invalid guarantee parameters {self:?}")))
        }
    }

    /// Checks the instance against the guarantee's hypotheses. The error
    /// names the first offending vertex or edge.
    pub fn validate(&self, instance: &GvcInstance) -> Result<()> {
        self.check_parameters()?;
        if let Some(i) = instance.costs().iter().position(|&c| c < 0.0) {
            return Err(Error::Precondition(format!(
                "vertex {i} has negative cost {}",
                instance.cost(i)
            )));
        }
        for e in instance.edges() {
            let w = e.weights;
            let failure = match *self {
                RoundingGuarantee::Ratio { alpha, beta } => {
                    if w.q0 < 0.0 || w.q1 < 0.0 || w.q2 < 0.0 {
                        Some(String::from("has a negative weight"))
                    } else if w.q2 > alpha * w.q1 {
                        Some(format!("has q2 = {} > alpha * q1 = {}", w.q2, alpha * w.q1))
                    } else if w.q1 > beta * w.q0 {
                        Some(format!("has q1 = {} > beta * q0 = {}", w.q1, beta * w.q0))
                    } else {
                        None
                    }
                }
                RoundingGuarantee::Band { k, alpha } => [w.q0, w.q1, w.q2]
                    .into_iter()
                    .find(|&q| q < k || q > alpha * k)
                    .map(|q| format!("has weight {q} outside [{k}, {}]", alpha * k)),
            };
            if let Some(msg) = failure {
                return Err(Error::Precondition(format!(
                    "edge ({}, {}) {msg} (q0 = {}, q1 = {}, q2 = {})",
                    e.u, e.v, w.q0, w.q1, w.q2
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ApproxReport {
    /// Value of the heuristic's solution.
    pub heuristic: f64,
    /// Exact optimum.
    pub optimum: f64,
    /// `heuristic / optimum`, only for a positive optimum.
    pub ratio: Option<f64>,
    /// Guaranteed ratio, if the guarantee is defined.
    pub bound: Option<f64>,
    /// Why the hypotheses do not hold, if they do not.
    pub precondition: Option<String>,
    /// Certified ratio of the cover heuristic in the VCPNEW transfer.
    pub epsilon: Option<f64>,
    /// `sum (2 q1 - q2) / phi(P°)` in the VCPNEW transfer.
    pub delta: Option<f64>,
    /// `(epsilon + delta) / (1 + delta)`.
    pub epsilon_prime: Option<f64>,
}

impl ApproxReport {
    fn new(heuristic: f64, optimum: f64) -> Self {
        ApproxReport {
            heuristic,
            optimum,
            ratio: (optimum > 0.0).then(|| heuristic / optimum),
            bound: None,
            precondition: None,
            epsilon: None,
            delta: None,
            epsilon_prime: None,
        }
    }

    /// Hypotheses hold and the observed ratio (if any) is within the bound.
    pub fn holds(&self) -> bool {
        if self.precondition.is_some() {
            return false;
        }
        match (self.ratio, self.bound) {
            (Some(r), Some(b)) => r <= b + RATIO_TOL,
            _ => true,
        }
    }
}

/// Rounds the GVC-LP, compares against the exact optimum and checks the
/// guarantee. Violated hypotheses are reported in the result, not raised;
/// only malformed guarantee parameters are an error.
pub fn verify_ratio(instance: &GvcInstance, guarantee: RoundingGuarantee) -> Result<ApproxReport> {
    guarantee.check_parameters()?;
    let rounded = round_gvc(instance)?;
    let optimum = brute_force(instance, ProblemKind::Gvc)?.value;
    let mut report = ApproxReport::new(rounded.value, optimum);
    report.bound = Some(guarantee.bound());
    if let Err(e) = guarantee.validate(instance) {
        report.precondition = Some(format!("{e}"));
    }
    Ok(report)
}

fn mincut_result(value: f64, members: VertexSet) -> OracleResult {
    OracleResult {
        value,
        members,
        optimal_count: None,
    }
}

/// Exact UBQP optimum for `Q_ij <= 0` off the diagonal, via min-cut.
pub fn solve_mincut_case(q: &UbqpInstance) -> Result<OracleResult> {
    if let Some(&(i, j, v)) = q.pairs().iter().find(|p| p.2 > 0.0) {
        return Err(Error::Precondition(format!(
            "Q[{i}][{j}] = {v} is positive; the min-cut case needs Q_ij <= 0"
        )));
    }
    let pb = PseudoBoolean {
        constant: 0.0,
        linear: q.linear().to_vec(),
        pairs: q.pairs().iter().map(|&(i, j, v)| (i, j, 2.0 * v)).collect(),
    };
    let cut = pb.minimize()?;
    Ok(mincut_result(q.objective(&cut.source_side), cut.source_side))
}

/// `a >= 0` and `Q >= 0`: the empty set is optimal.
pub fn solve_trivial_nonneg(q: &UbqpInstance) -> Result<OracleResult> {
    if let Some(i) = q.linear().iter().position(|&a| a < 0.0) {
        return Err(Error::Precondition(format!("a[{i}] = {} is negative", q.linear()[i])));
    }
    if let Some(&(i, j, v)) = q.pairs().iter().find(|p| p.2 < 0.0) {
        return Err(Error::Precondition(format!("Q[{i}][{j}] = {v} is negative")));
    }
    Ok(mincut_result(0.0, VertexSet::empty(q.n())))
}

/// Exact GVC optimum on a bipartite graph whose lifted weights
/// `q2 - 2 q1 + q0` are all nonnegative.
///
/// The BQP01 form is `a x + b y + sum Q_ij x_i y_j` with `Q >= 0`. Writing
/// `y_j = 1 - y'_j` turns every product into `-Q_ij x_i y'_j`, which the cut
/// construction accepts.
pub fn solve_bipartite_flow(g: &GvcInstance, p: &BipartitePartition) -> Result<OracleResult> {
    p.validate(g)?;
    g.require_finite()?;
    if let Some(e) = g.edges().iter().find(|e| e.weights.lifted() < 0.0) {
        return Err(Error::Precondition(format!(
            "edge ({}, {}) has negative lifted weight {}",
            e.u,
            e.v,
            e.weights.lifted()
        )));
    }
    let red = bipartite_gvc_to_bqp01(g, p, BqpVariant::Gvc)?;
    let bqp = &red.target;
    let (m, n) = (bqp.m(), bqp.n());
    let mut linear: Vec<f64> = bqp.a().to_vec();
    let mut constant = 0.0;
    for &b in bqp.b() {
        constant += b;
        linear.push(-b);
    }
    let mut pairs = Vec::with_capacity(bqp.entries().len());
    for &(i, j, q) in bqp.entries() {
        linear[i] += q;
        pairs.push((i, m + j, -q));
    }
    let cut = PseudoBoolean {
        constant,
        linear,
        pairs,
    }
    .minimize()?;
    let unflipped = VertexSet::from_bools(
        (0..m + n)
            .map(|k| cut.source_side.contains(k) != (k >= m))
            .collect(),
    );
    let members = red.map_back(&unflipped);
    let value = evaluate(g, ProblemKind::Gvc, &members)?.value;
    Ok(mincut_result(value, members))
}

/// A solver for GVC2 subproblems.
pub type SubSolver<'a> = dyn Fn(&GvcInstance) -> Result<OracleResult> + 'a;

fn require_gvc2(g: &GvcInstance) -> Result<()> {
    ProblemKind::Gvc2.check(g)?;
    crate::reductions::precheck(g, ProblemKind::Gvc2)
}

/// Best of "v out" (`G - v`) and "v in" (`G - v` with `c_i + q2_iv` on the
/// neighbours, plus `v`), each solved by `sub`. Both candidates are
/// re-evaluated on `g`.
pub fn branch_on_vertex(g: &GvcInstance, v: usize, sub: &SubSolver<'_>) -> Result<OracleResult> {
    require_gvc2(g)?;
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    let (rest, keep) = g.without_vertex(v);
    let lift = |set: &VertexSet| VertexSet::from_members(g.n(), set.iter().map(|k| keep[k]));

    let out = lift(&sub(&rest)?.members);

    let mut costs = rest.costs().to_vec();
    for &e in g.incident(v) {
        let edge = g.edge(e);
        let i = edge.other(v);
        let k = keep.iter().position(|&x| x == i).expect("neighbour survives deletion");
        costs[k] += edge.weights.q2;
    }
    let mut inside = lift(&sub(&rest.with_costs(costs)?)?.members);
    inside.insert(v);

    let out_value = evaluate(g, ProblemKind::Gvc2, &out)?.value;
    let in_value = evaluate(g, ProblemKind::Gvc2, &inside)?.value;
    let take_in = in_value < out_value || (in_value == out_value && inside < out);
    let (value, members) = if take_in {
        (in_value, inside)
    } else {
        (out_value, out)
    };
    Ok(OracleResult {
        value,
        members,
        optimal_count: None,
    })
}

/// Maximum-degree vertex, smallest index on ties. `None` on an empty graph.
pub fn max_degree_vertex(g: &GvcInstance) -> Option<usize> {
    (0..g.n()).max_by(|&a, &b| g.degree(a).cmp(&g.degree(b)).then(b.cmp(&a)))
}

/// The `k` vertices removed by repeated [`max_degree_vertex`] selection, as
/// indices of `g`.
pub fn select_branch_vertices(g: &GvcInstance, k: usize) -> Vec<usize> {
    let mut current = g.clone();
    let mut labels: Vec<usize> = (0..g.n()).collect();
    let mut chosen = Vec::new();
    while chosen.len() < k {
        let Some(v) = max_degree_vertex(&current) else {
            break;
        };
        chosen.push(labels[v]);
        let (next, keep) = current.without_vertex(v);
        labels = keep.iter().map(|&i| labels[i]).collect();
        current = next;
    }
    chosen
}

/// Branches on up to `depth` vertices (chosen by [`max_degree_vertex`] at each
/// level) and hands the remainders to `leaf`.
pub fn branch_on_vertices(g: &GvcInstance, depth: usize, leaf: &SubSolver<'_>) -> Result<OracleResult> {
    require_gvc2(g)?;
    match max_degree_vertex(g) {
        Some(v) if depth > 0 => {
            branch_on_vertex(g, v, &|h: &GvcInstance| branch_on_vertices(h, depth - 1, leaf))
        }
        _ => leaf(g),
    }
}

/// Exact GVC2 solver for `q2 <= 0` through the UBQP min-cut case.
pub fn gvc2_mincut_leaf(g: &GvcInstance) -> Result<OracleResult> {
    let red = gvc2_to_ubqp(g)?;
    let r = solve_mincut_case(&red.target)?;
    let members = red.map_back(&r.members);
    let value = evaluate(g, ProblemKind::Gvc2, &members)?.value;
    Ok(mincut_result(value, members))
}

/// A vertex-cover heuristic with a certified approximation ratio.
pub trait CoverHeuristic {
    fn name(&self) -> &'static str;
    /// Proven ratio on nonnegative weights.
    fn ratio(&self) -> f64;
    /// A vertex cover of the MWVCP instance.
    fn cover(&self, instance: &GvcInstance) -> Result<VertexSet>;
}

/// Rounds the MWVCP relaxation at `1/2`; 2-approximate.
#[derive(Clone, Copy, Debug, Default)]
pub struct LpRoundingCover;

impl CoverHeuristic for LpRoundingCover {
    fn name(&self) -> &'static str {
        "lp-rounding"
    }

    fn ratio(&self) -> f64 {
        2.0
    }

    fn cover(&self, instance: &GvcInstance) -> Result<VertexSet> {
        let lp = solve_lp(&build(instance, ProblemKind::Mwvcp)?)?;
        Ok(VertexSet::from_bools(
            lp.x.iter().map(|&x| x >= 0.5 - ROUND_TOL).collect(),
        ))
    }
}

/// Runs `heuristic` on the MWVCP form of a VCPNEW instance and checks the
/// transferred ratio `(epsilon + delta) / (1 + delta)`.
pub fn vcpnew_epsilon_transfer(g: &GvcInstance, heuristic: &dyn CoverHeuristic) -> Result<ApproxReport> {
    let red = vcpnew_to_mwvcp(g)?;
    let weights = red.target.instance.costs();
    if let Some(i) = weights.iter().position(|&w| w < 0.0) {
        return Err(Error::Precondition(format!(
            "reduced weight w_{i} = c_{i} + sum (q2 - q1) = {} is negative",
            weights[i]
        )));
    }
    let k = red.offset;
    if k < 0.0 {
        return Err(Error::Precondition(format!("sum (2 q1 - q2) = {k} is negative")));
    }
    let mwvcp = &red.target.instance;
    let cover = heuristic.cover(mwvcp)?;
    let heuristic_value = evaluate(g, ProblemKind::Vcpnew, &red.map_back(&cover))?.value;
    let phi = brute_force(mwvcp, ProblemKind::Mwvcp)?.value;
    let optimum = red.source_value(phi);
    let mut report = ApproxReport::new(heuristic_value, optimum);
    let epsilon = heuristic.ratio();
    report.epsilon = Some(epsilon);
    if phi > 0.0 {
        let delta = k / phi;
        let eps_prime = (epsilon + delta) / (1.0 + delta);
        report.delta = Some(delta);
        report.epsilon_prime = Some(eps_prime);
        report.bound = Some(eps_prime);
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq)]
pub struct UniformReport {
    pub gamma: f64,
    pub delta: f64,
    pub optimum: f64,
    /// `alpha(G)`, computed for `delta > 0`.
    pub independence_number: Option<usize>,
    /// Best value over independent sets (`delta > 0`) or vertex covers
    /// (`delta < 0`); equals `optimum` when the structure claim holds.
    pub restricted_optimum: f64,
    pub holds: bool,
}

/// Checks the uniform GVC2 structure: with `c = gamma = -delta` and
/// `q2 = delta`, an independent set is optimal for `delta > 0` (with value
/// `-delta alpha(G)`) and a vertex cover for `delta < 0`.
pub fn ugvc2_structure(g: &GvcInstance, gamma: f64, delta: f64) -> Result<UniformReport> {
    if gamma != -delta {
        return Err(Error::Precondition(format!("gamma = {gamma} is not -delta = {}", -delta)));
    }
    if let Some(i) = g.costs().iter().position(|&c| c != gamma) {
        return Err(Error::Precondition(format!("c_{i} = {} differs from gamma", g.cost(i))));
    }
    if let Some(e) = g
        .edges()
        .iter()
        .find(|e| e.weights.q0 != 0.0 || e.weights.q1 != 0.0 || e.weights.q2 != delta)
    {
        return Err(Error::Precondition(format!(
            "edge ({}, {}) is not (0, 0, {delta})",
            e.u, e.v
        )));
    }
    let optimum = brute_force(g, ProblemKind::Gvc2)?.value;
    let (independence, restricted) = if delta > 0.0 {
        let alpha = independence_number(g)?;
        (Some(alpha), -delta * alpha as f64)
    } else if delta < 0.0 {
        (None, brute_force(g, ProblemKind::Vcop)?.value)
    } else {
        (None, 0.0)
    };
    Ok(UniformReport {
        gamma,
        delta,
        optimum,
        independence_number: independence,
        restricted_optimum: restricted,
        holds: optimum == restricted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{EdgeWeights, INF};
    use alloc::vec;

    fn w(q0: f64, q1: f64, q2: f64) -> EdgeWeights {
        EdgeWeights::new(q0, q1, q2)
    }

    fn triangle(delta: f64) -> GvcInstance {
        GvcInstance::new(
            vec![1.0; 3],
            [(0, 1, w(INF, 0.0, 2.0)), (1, 2, w(INF, 0.0, 3.0)), (0, 2, w(INF, 0.0, 4.0 * delta))],
        )
        .unwrap()
    }

    #[test]
    fn triangle_rounds_to_everything() {
        for delta in [0.25, 1.0] {
            let r = round_gvc(&triangle(delta)).unwrap();
            assert_eq!(r.members, VertexSet::full(3));
            assert_eq!(r.value, 8.0 + 4.0 * delta);
            assert_eq!(r.y, [1.0; 3]);
            assert_eq!(r.z, [0.0; 3]);
        }
    }

    #[test]
    fn triangle_ratio_counterexample() {
        let report = verify_ratio(&triangle(1.0), RoundingGuarantee::Ratio { alpha: 1.0, beta: 1.0 }).unwrap();
        assert_eq!(report.ratio, Some(3.0));
        assert!(report.precondition.as_deref().unwrap().contains("edge (0, 1)"));
        assert!(!report.holds());
    }

    #[test]
    fn single_edge_rounding_is_exact() {
        let g = GvcInstance::new(vec![0.0, 0.0], [(0, 1, w(5.0, 3.0, 2.0))]).unwrap();
        let r = round_gvc(&g).unwrap();
        assert_eq!(r.members, VertexSet::full(2));
        assert_eq!(r.value, 2.0);
        assert!((r.lp.reported_objective - 2.0).abs() < 1e-9);
    }

    #[test]
    fn bad_guarantee_parameters() {
        let g = GvcInstance::edgeless(vec![1.0]).unwrap();
        assert!(verify_ratio(&g, RoundingGuarantee::Ratio { alpha: 0.5, beta: 1.0 }).is_err());
        assert!(verify_ratio(&g, RoundingGuarantee::Band { k: 1.0, alpha: 1.0 }).is_err());
    }

    #[test]
    fn mincut_small_cases() {
        let q = UbqpInstance::new(vec![-1.0, -1.0], [(0, 1, -2.0)]).unwrap();
        let r = solve_mincut_case(&q).unwrap();
        assert_eq!((r.value, r.members), (-6.0, VertexSet::full(2)));
        let q = UbqpInstance::new(vec![1.0, 0.0], core::iter::empty()).unwrap();
        assert_eq!(solve_mincut_case(&q).unwrap().value, 0.0);
        let q = UbqpInstance::new(vec![0.0, 0.0], [(0, 1, 1.0)]).unwrap();
        assert!(matches!(solve_mincut_case(&q), Err(Error::Precondition(_))));
        assert_eq!(solve_trivial_nonneg(&q).unwrap().value, 0.0);
    }

    #[test]
    fn bipartite_single_edge() {
        let g = GvcInstance::new(vec![0.0, 0.0], [(0, 1, w(5.0, 3.0, 2.0))]).unwrap();
        let p = BipartitePartition::from_left(2, [0]);
        let r = solve_bipartite_flow(&g, &p).unwrap();
        assert_eq!((r.value, r.members), (2.0, VertexSet::full(2)));
    }

    #[test]
    fn branching_on_triangle() {
        let g = GvcInstance::new(
            vec![-2.0; 3],
            [(0, 1, w(0.0, 0.0, 3.0)), (1, 2, w(0.0, 0.0, 3.0)), (0, 2, w(0.0, 0.0, 3.0))],
        )
        .unwrap();
        let oracle = |h: &GvcInstance| brute_force(h, ProblemKind::Gvc2);
        let r = branch_on_vertex(&g, 2, &oracle).unwrap();
        assert_eq!(r.value, -2.0);
        assert_eq!(r.value, brute_force(&g, ProblemKind::Gvc2).unwrap().value);
    }

    #[test]
    fn isolated_negative_vertex_is_taken() {
        let g = GvcInstance::new(vec![-3.0, 1.0, 1.0], [(1, 2, w(0.0, 0.0, 1.0))]).unwrap();
        let oracle = |h: &GvcInstance| brute_force(h, ProblemKind::Gvc2);
        let r = branch_on_vertex(&g, 0, &oracle).unwrap();
        assert!(r.members.contains(0));
        assert_eq!(r.value, -3.0);
    }

    #[test]
    fn selector_prefers_degree_then_index() {
        let z = w(0.0, 0.0, 0.0);
        let g = GvcInstance::new(vec![0.0; 4], [(0, 1, z), (1, 2, z), (2, 3, z)]).unwrap();
        assert_eq!(max_degree_vertex(&g), Some(1));
        assert_eq!(select_branch_vertices(&g, 2), vec![1, 2]);
    }

    #[test]
    fn vcpnew_transfer_on_an_edge() {
        let g = GvcInstance::new(vec![3.0, 3.0], [(0, 1, w(INF, 1.0, 1.0))]).unwrap();
        let report = vcpnew_epsilon_transfer(&g, &LpRoundingCover).unwrap();
        assert_eq!(report.optimum, 4.0);
        assert!((report.epsilon_prime.unwrap() - 1.75).abs() < 1e-12);
        assert!(report.holds());
    }

    #[test]
    fn vcpnew_transfer_collapses_without_edge_weights() {
        let g = GvcInstance::new(vec![1.0, 2.0], [(0, 1, w(INF, 0.0, 0.0))]).unwrap();
        let report = vcpnew_epsilon_transfer(&g, &LpRoundingCover).unwrap();
        assert_eq!(report.delta, Some(0.0));
        assert_eq!(report.epsilon_prime, Some(2.0));
    }

    #[test]
    fn uniform_examples() {
        let u = w(0.0, 0.0, 1.0);
        let k3 = GvcInstance::new(vec![-1.0; 3], [(0, 1, u), (1, 2, u), (0, 2, u)]).unwrap();
        let r = ugvc2_structure(&k3, -1.0, 1.0).unwrap();
        assert_eq!((r.optimum, r.independence_number, r.holds), (-1.0, Some(1), true));

        let u = w(0.0, 0.0, 2.0);
        let p3 = GvcInstance::new(vec![-2.0; 3], [(0, 1, u), (1, 2, u)]).unwrap();
        let r = ugvc2_structure(&p3, -2.0, 2.0).unwrap();
        assert_eq!((r.optimum, r.independence_number), (-4.0, Some(2)));

        let empty = GvcInstance::edgeless(vec![-3.0; 4]).unwrap();
        assert_eq!(ugvc2_structure(&empty, -3.0, 3.0).unwrap().optimum, -12.0);

        assert!(ugvc2_structure(&k3, -1.0, 2.0).is_err());
    }
}
