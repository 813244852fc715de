use gvc_core::oracle::{
    brute_force, brute_force_ubqp, generate, Family, Generated, GeneratorConfig, OracleResult,
};
use gvc_core::reductions::gvc_to_ubqp;
use gvc_core::solvers::*;
use gvc_core::{evaluate, EdgeWeights, GvcInstance, ProblemKind, UbqpInstance};
use proptest::prelude::*;

fn family(n: usize, family: Family, seed: u64) -> GvcInstance {
    generate(&GeneratorConfig::new(n, family, seed)).unwrap().into_gvc()
}

fn oracle_gvc2(h: &GvcInstance) -> gvc_core::Result<OracleResult> {
    brute_force(h, ProblemKind::Gvc2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rounding_is_feasible_and_never_below_optimum(n in 1usize..=10, seed in any::<u64>()) {
        let g = family(n, Family::General, seed);
        let r = round_gvc(&g).unwrap();
        let opt = brute_force(&g, ProblemKind::Gvc).unwrap().value;
        prop_assert!(r.value >= opt);
        prop_assert_eq!(r.value, evaluate(&g, ProblemKind::Gvc, &r.members).unwrap().value);
    }

    #[test]
    fn rounding_meets_ratio_guarantee(
        n in 1usize..=10,
        seed in any::<u64>(),
        alpha in prop::sample::select(vec![1.0, 1.5, 2.0, 3.0]),
        beta in prop::sample::select(vec![1.0, 1.5, 2.0, 3.0]),
    ) {
        let g = family(n, Family::RatioBounded { alpha, beta }, seed);
        let report = verify_ratio(&g, RoundingGuarantee::Ratio { alpha, beta }).unwrap();
        prop_assert!(report.precondition.is_none(), "{:?}", report.precondition);
        prop_assert!(report.holds(), "{report:?}");
    }

    #[test]
    fn rounding_meets_band_guarantee(n in 1usize..=10, seed in any::<u64>()) {
        let g = family(n, Family::Band { k: 2, alpha: 3.0 }, seed);
        let report = verify_ratio(&g, RoundingGuarantee::Band { k: 2.0, alpha: 3.0 }).unwrap();
        prop_assert!(report.holds(), "{report:?}");
    }

    #[test]
    fn mincut_matches_enumeration(n in 0usize..=12, seed in any::<u64>()) {
        let g = family(n, Family::NonpositiveLifted, seed);
        let q = gvc_to_ubqp(&g).unwrap().target;
        let flow = solve_mincut_case(&q).unwrap();
        let exact = brute_force_ubqp(&q).unwrap();
        prop_assert_eq!(flow.value, exact.value);
        prop_assert_eq!(q.objective(&flow.members), flow.value);
    }

    #[test]
    fn nonnegative_ubqp_is_trivial(
        linear in proptest::collection::vec(0i32..=5, 0..=10),
        w in proptest::collection::vec(0i32..=5, 45),
    ) {
        let n = linear.len();
        let mut entries = Vec::new();
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                entries.push((i, j, w[k] as f64));
                k += 1;
            }
        }
        let q = UbqpInstance::new(linear.iter().map(|&a| a as f64).collect(), entries).unwrap();
        prop_assert_eq!(solve_trivial_nonneg(&q).unwrap().value, brute_force_ubqp(&q).unwrap().value);
    }

    #[test]
    fn bipartite_flow_matches_enumeration(n in 0usize..=12, seed in any::<u64>()) {
        let Generated::Gvc { instance, partition, .. } =
            generate(&GeneratorConfig::new(n, Family::Bipartite { lifted_nonneg: true }, seed)).unwrap()
        else { unreachable!() };
        let r = solve_bipartite_flow(&instance, &partition.unwrap()).unwrap();
        prop_assert_eq!(r.value, brute_force(&instance, ProblemKind::Gvc).unwrap().value);
    }

    #[test]
    fn bipartite_flow_on_hl_monotone_weights(n in 0usize..=12, seed in any::<u64>()) {
        // hl-monotone weights on a bipartite support: lifted q2 - 2q1 + q0 can be
        // of either sign, so keep only edges where it is nonnegative
        let g = family(n, Family::HlMonotone, seed);
        let Some(p) = gvc_core::BipartitePartition::two_color(&g) else { return Ok(()) };
        let g = GvcInstance::new(
            g.costs().to_vec(),
            g.edges().iter().filter(|e| e.weights.lifted() >= 0.0).map(|e| (e.u, e.v, e.weights)),
        ).unwrap();
        let r = solve_bipartite_flow(&g, &p).unwrap();
        prop_assert_eq!(r.value, brute_force(&g, ProblemKind::Gvc).unwrap().value);
    }

    #[test]
    fn branching_with_oracle_leaves_is_exact(n in 1usize..=10, seed in any::<u64>(), k in 0usize..=4) {
        let g = family(n, Family::Gvc2, seed);
        let r = branch_on_vertices(&g, k, &oracle_gvc2).unwrap();
        let exact = brute_force(&g, ProblemKind::Gvc2).unwrap();
        prop_assert_eq!(r.value, exact.value);
        let v = (seed % n as u64) as usize;
        prop_assert_eq!(branch_on_vertex(&g, v, &oracle_gvc2).unwrap().value, exact.value);
    }

    #[test]
    fn branching_with_mincut_leaves_is_exact(n in 1usize..=10, seed in any::<u64>()) {
        // delete the positive-q2 vertices, the remainder is a min-cut case
        let g = family(n, Family::Gvc2, seed);
        let positive: std::collections::BTreeSet<usize> = g
            .edges()
            .iter()
            .filter(|e| e.weights.q2 > 0.0)
            .map(|e| e.u.min(e.v))
            .collect();
        prop_assume!(positive.len() <= 4);
        let order: Vec<usize> = positive.into_iter().collect();
        let r = branch_in_order(&g, &order).unwrap().value;
        prop_assert_eq!(r, brute_force(&g, ProblemKind::Gvc2).unwrap().value);
    }

    #[test]
    fn vcpnew_transfer_bound_holds(n in 1usize..=10, seed in any::<u64>()) {
        let g = family(n, Family::VcpnewFeasible, seed);
        prop_assume!(g.edge_sum(|w| 2.0 * w.q1 - w.q2) >= 0.0);
        let report = vcpnew_epsilon_transfer(&g, &LpRoundingCover).unwrap();
        prop_assert!(report.holds(), "{report:?}");
        prop_assert_eq!(report.optimum, brute_force(&g, ProblemKind::Vcpnew).unwrap().value);
    }

    #[test]
    fn uniform_positive_delta_is_independent_set(n in 0usize..=10, seed in any::<u64>(), delta in 1i64..=3) {
        let g = generate(&GeneratorConfig::new(n, Family::Uniform { gamma: -delta, delta }, seed)
            .density(0.4)).unwrap().into_gvc();
        let r = ugvc2_structure(&g, -delta as f64, delta as f64).unwrap();
        prop_assert!(r.holds, "{r:?}");
    }
}

/// Branches on `order` (vertex indices of `g`) one after another and solves
/// the remainder by min-cut.
fn branch_in_order(g: &GvcInstance, order: &[usize]) -> gvc_core::Result<OracleResult> {
    let Some((&v, rest)) = order.split_last() else {
        return gvc2_mincut_leaf(g);
    };
    // labels above v shift down by one in g - v
    let rest: Vec<usize> = rest.iter().map(|&u| if u > v { u - 1 } else { u }).collect();
    branch_on_vertex(g, v, &|h: &GvcInstance| branch_in_order(h, &rest))
}

#[test]
fn paper_triangle_rounding() {
    let w = |q2| EdgeWeights::new(f64::INFINITY, 0.0, q2);
    let g = GvcInstance::new(vec![1.0; 3], [(0, 1, w(2.0)), (1, 2, w(3.0)), (0, 2, w(1.0))]).unwrap();
    let r = round_gvc(&g).unwrap();
    assert_eq!(r.value, 9.0);
    assert!((r.lp.reported_objective - 1.5).abs() < 1e-7);
}

#[test]
fn uniform_negative_delta_on_an_edge_prefers_the_empty_set() {
    let g = GvcInstance::new(vec![1.0, 1.0], [(0, 1, EdgeWeights::new(0.0, 0.0, -1.0))]).unwrap();
    let r = ugvc2_structure(&g, 1.0, -1.0).unwrap();
    assert_eq!(r.optimum, 0.0);
    assert_eq!(r.restricted_optimum, 1.0);
    assert!(!r.holds);
}
