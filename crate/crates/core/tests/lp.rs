use gvc_core::lp::{
    build, check_half_integral, clique_cuts, lp_equivalence_check, solve_lp, solve_lp_with_cuts,
    with_cuts, HALF_INTEGRAL_TOL,
};
use gvc_core::oracle::{brute_force, generate, restrict_to, Family, GeneratorConfig};
use gvc_core::{evaluate, EdgeWeights, GvcInstance, ProblemKind, Sense, VertexSet};
use proptest::prelude::*;

/// A random instance on which `kind` is well defined.
fn instance_for(kind: ProblemKind, n: usize, seed: u64) -> GvcInstance {
    let family = match kind {
        ProblemKind::Gvc | ProblemKind::Mwvcp | ProblemKind::Mwisp => Family::General,
        ProblemKind::Gvc1 => Family::Gvc1,
        ProblemKind::Gvc2 => Family::Gvc2,
        ProblemKind::Vcpnew | ProblemKind::Vcop | ProblemKind::Vcup => Family::VcpnewFeasible,
        ProblemKind::Ispnew | ProblemKind::Isop | ProblemKind::Isup => Family::IspnewFeasible,
    };
    let g = generate(&GeneratorConfig::new(n, family, seed))
        .unwrap()
        .into_gvc();
    restrict_to(&g, kind)
}

const LP_KINDS: [ProblemKind; 9] = [
    ProblemKind::Gvc,
    ProblemKind::Gvc1,
    ProblemKind::Gvc2,
    ProblemKind::Vcpnew,
    ProblemKind::Vcop,
    ProblemKind::Vcup,
    ProblemKind::Ispnew,
    ProblemKind::Isop,
    ProblemKind::Isup,
];

fn integral(x: &[f64]) -> Option<VertexSet> {
    x.iter()
        .all(|&v| v.abs() <= 1e-9 || (v - 1.0).abs() <= 1e-9)
        .then(|| VertexSet::from_bools(x.iter().map(|&v| v > 0.5).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn relaxations_are_feasible_bounded_and_half_integral(n in 1usize..=12, seed in any::<u64>()) {
        for kind in LP_KINDS.into_iter().chain([ProblemKind::Mwvcp, ProblemKind::Mwisp]) {
            let g = instance_for(kind, n, seed);
            let model = build(&g, kind).unwrap();
            let sol = solve_lp(&model).unwrap();
            prop_assert!(model.max_violation(&sol.values) <= 1e-9, "{kind}: violation");
            prop_assert!(sol.basic, "{kind}: not basic");
            let report = check_half_integral(&sol, HALF_INTEGRAL_TOL).unwrap();
            prop_assert!(report.passed(), "{kind}: x = {:?}", sol.x);

            let ip = brute_force(&g, kind).unwrap();
            let slack = 1e-7 * (1.0 + ip.value.abs());
            match kind.sense() {
                Sense::Minimize => prop_assert!(sol.reported_objective <= ip.value + slack,
                    "{kind}: lp {} > ip {}", sol.reported_objective, ip.value),
                Sense::Maximize => prop_assert!(sol.reported_objective >= ip.value - slack,
                    "{kind}: lp {} < ip {}", sol.reported_objective, ip.value),
            }

            if let Some(set) = integral(&sol.x) {
                let v = evaluate(&g, kind, &set).unwrap().value;
                prop_assert!((v - sol.reported_objective).abs() <= 1e-7 * (1.0 + v.abs()),
                    "{kind}: integral x evaluates to {v}, lp says {}", sol.reported_objective);
            }
        }
    }

    #[test]
    fn substituted_forms_share_the_optimum(n in 1usize..=8, seed in any::<u64>()) {
        let g = instance_for(ProblemKind::Gvc, n, seed);
        let r = lp_equivalence_check(&g).unwrap();
        prop_assert!(r.max_gap() < 1e-7, "{r:?}");
    }

    #[test]
    fn clique_cuts_sit_between_lp_and_ip(n in 3usize..=9, seed in any::<u64>()) {
        let g = generate(&GeneratorConfig::new(n, Family::Gvc2, seed).density(0.7))
            .unwrap()
            .into_gvc();
        let model = build(&g, ProblemKind::Gvc2).unwrap();
        let plain = solve_lp(&model).unwrap().reported_objective;
        for size in [3, 4] {
            let pool = clique_cuts(&g, size).unwrap();
            let cut = solve_lp_with_cuts(&model, &pool).unwrap().reported_objective;
            let ip = brute_force(&g, ProblemKind::Gvc2).unwrap().value;
            prop_assert!(cut >= plain - 1e-9 && cut <= ip + 1e-7, "{plain} {cut} {ip}");

            // no integral point is cut off
            let cut_model = with_cuts(&model, &pool).unwrap();
            for mask in 0..(1u64 << n) {
                let set = VertexSet::from_mask(n, mask);
                let mut values: Vec<f64> = set.as_slice().iter().map(|&b| b as u8 as f64).collect();
                for e in g.edges() {
                    values.push((set.contains(e.u) && set.contains(e.v)) as u8 as f64);
                }
                prop_assert!(cut_model.max_violation(&values) == 0.0, "mask {mask}");
            }
        }
    }
}

#[test]
fn triangle_free_graph_has_no_cuts() {
    let w = EdgeWeights::new(0.0, 0.0, 1.0);
    let g = GvcInstance::new(vec![-1.0; 4], [(0, 1, w), (1, 2, w), (2, 3, w), (3, 0, w)]).unwrap();
    let pool = clique_cuts(&g, 4).unwrap();
    assert!(pool.is_empty());
    let model = build(&g, ProblemKind::Gvc2).unwrap();
    assert_eq!(
        solve_lp(&model).unwrap().reported_objective,
        solve_lp_with_cuts(&model, &pool).unwrap().reported_objective
    );
}

#[test]
fn lp_is_deterministic() {
    let g = instance_for(ProblemKind::Gvc, 10, 7);
    let model = build(&g, ProblemKind::Gvc).unwrap();
    assert_eq!(solve_lp(&model).unwrap(), solve_lp(&model).unwrap());
}
