use gvc_core::oracle::{
    brute_force, brute_force_bqp01_full, brute_force_bqp01_small_side, generate, restrict_to,
    Family, GeneratorConfig,
};
use gvc_core::{edge_partition, evaluate, GvcInstance, ProblemKind, VertexSet};
use proptest::prelude::*;

fn general(n: usize, seed: u64) -> GvcInstance {
    generate(&GeneratorConfig::new(n, Family::General, seed))
        .unwrap()
        .into_gvc()
}

/// The general objective, written out directly.
fn gvc_formula(g: &GvcInstance, set: &VertexSet) -> f64 {
    let mut v: f64 = set.iter().map(|i| g.cost(i)).sum();
    for e in g.edges() {
        v += match (set.contains(e.u), set.contains(e.v)) {
            (false, false) => e.weights.q0,
            (true, true) => e.weights.q2,
            _ => e.weights.q1,
        };
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partition_counts_add_up(n in 0usize..=10, seed in any::<u64>(), mask in any::<u64>()) {
        let g = general(n, seed);
        let set = VertexSet::from_mask(n, mask & ((1u64 << n) - 1));
        let p = edge_partition(&g, &set);
        prop_assert_eq!(p.e0.len() + p.e1.len() + p.e2.len(), g.m());
        let a = evaluate(&g, ProblemKind::Gvc, &set).unwrap();
        let b = evaluate(&g, ProblemKind::Gvc, &set).unwrap();
        prop_assert_eq!(a.value.to_bits(), b.value.to_bits());
        prop_assert_eq!(a.counts.total(), g.m());
    }

    #[test]
    fn restricted_kinds_match_the_general_formula(n in 1usize..=8, seed in any::<u64>()) {
        let g = general(n, seed);
        for kind in ProblemKind::ALL {
            let r = restrict_to(&g, kind);
            for mask in 0..(1u64 << n) {
                let set = VertexSet::from_mask(n, mask);
                if kind.violated_edge(&r, &set).is_some() {
                    continue;
                }
                let v = evaluate(&r, kind, &set).unwrap().value;
                // covers never see q0 and independent sets never see q2
                let expect = r.with_weights(|e| {
                    let mut w = e.weights;
                    if !kind.reads()[0] { w.q0 = 0.0; }
                    if !kind.reads()[1] { w.q1 = 0.0; }
                    if !kind.reads()[2] { w.q2 = 0.0; }
                    w
                }).unwrap();
                prop_assert_eq!(v, gvc_formula(&expect, &set), "{} mask {}", kind, mask);
            }
        }
    }

    #[test]
    fn cover_is_complement_of_independent_set(n in 1usize..=10, seed in any::<u64>()) {
        let g = general(n, seed);
        let cover = brute_force(&g, ProblemKind::Mwvcp).unwrap();
        let is = brute_force(&g, ProblemKind::Mwisp).unwrap();
        let total: f64 = g.costs().iter().sum();
        prop_assert_eq!(cover.value, total - is.value);
        let comp = cover.members.complement();
        prop_assert!(ProblemKind::Mwisp.violated_edge(&g, &comp).is_none());
        prop_assert_eq!(evaluate(&g, ProblemKind::Mwisp, &comp).unwrap().value, is.value);
    }

    #[test]
    fn optimum_is_invariant_under_relabeling(
        (n, perm) in (1usize..=9).prop_flat_map(|n| (Just(n), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())),
        seed in any::<u64>(),
    ) {
        let g = general(n, seed);
        let mut costs = vec![0.0; n];
        for i in 0..n {
            costs[perm[i]] = g.cost(i);
        }
        let h = GvcInstance::new(costs, g.edges().iter().map(|e| (perm[e.u], perm[e.v], e.weights))).unwrap();
        for kind in [ProblemKind::Gvc, ProblemKind::Mwvcp, ProblemKind::Mwisp] {
            prop_assert_eq!(brute_force(&g, kind).unwrap().value, brute_force(&h, kind).unwrap().value);
        }
    }

    #[test]
    fn small_side_matches_full_enumeration(m in 0usize..=8, n in 0usize..=8, seed in any::<u64>()) {
        let q = match generate(&GeneratorConfig::new(n, Family::Bqp01 { m }, seed)).unwrap() {
            gvc_core::oracle::Generated::Bqp01(q) => q,
            _ => unreachable!(),
        };
        let small = brute_force_bqp01_small_side(&q).unwrap();
        let full = brute_force_bqp01_full(&q).unwrap();
        prop_assert_eq!(small.value, full.value);
        prop_assert_eq!(small.members, full.members);
        prop_assert_eq!(small.optimal_count, full.optimal_count);
    }

    #[test]
    fn generated_families_satisfy_their_definitions(n in 0usize..=10, seed in any::<u64>()) {
        for family in [
            Family::General,
            Family::Gvc1,
            Family::Gvc2,
            Family::VcpnewFeasible,
            Family::IspnewFeasible,
            Family::Bipartite { lifted_nonneg: true },
            Family::HlMonotone,
            Family::RatioBounded { alpha: 1.5, beta: 2.0 },
            Family::Band { k: 2, alpha: 3.0 },
            Family::NonpositiveLifted,
            Family::Uniform { gamma: -2, delta: 2 },
        ] {
            let out = generate(&GeneratorConfig::new(n, family.clone(), seed)).unwrap();
            let again = generate(&GeneratorConfig::new(n, family.clone(), seed)).unwrap();
            prop_assert_eq!(&out, &again);
            if let gvc_core::oracle::Generated::Gvc { instance, partition, .. } = &out {
                prop_assert!(gvc_core::oracle::check_family(&family, instance, partition.as_ref()).is_ok());
            }
        }
    }
}

#[test]
fn hl_monotone_generation() {
    let g = generate(&GeneratorConfig::new(8, Family::HlMonotone, 1))
        .unwrap()
        .into_gvc();
    for e in g.edges() {
        let w = e.weights;
        assert!(w.q0 >= w.q1 && w.q1 >= w.q2 && w.q2 >= 0.0);
    }
    let empty = generate(&GeneratorConfig::new(8, Family::General, 1).density(0.0))
        .unwrap()
        .into_gvc();
    assert_eq!(empty.m(), 0);
}
