use gvc_core::oracle::{
    brute_force, brute_force_bqp01_full, brute_force_ubqp, generate, restrict_to, Family,
    Generated, GeneratorConfig,
};
use gvc_core::reductions::*;
use gvc_core::{Bqp01Instance, GvcInstance, ProblemKind, UbqpInstance, VertexSet};
use proptest::prelude::*;

trait Optimum: Objective {
    fn optimum(&self) -> f64;
}

impl Optimum for GvcProblem {
    fn optimum(&self) -> f64 {
        brute_force(&self.instance, self.kind).unwrap().value
    }
}

impl Optimum for UbqpInstance {
    fn optimum(&self) -> f64 {
        brute_force_ubqp(self).unwrap().value
    }
}

impl Optimum for Bqp01Instance {
    fn optimum(&self) -> f64 {
        brute_force_bqp01_full(self).unwrap().value
    }
}

/// Offset identity on every target subset, then optimum transport.
fn check<S: Optimum, T: Optimum>(source: &S, red: &AffineReduction<T>) -> Result<(), TestCaseError> {
    let n = red.target.universe();
    for mask in 0..(1u64 << n) {
        let set = VertexSet::from_mask(n, mask);
        if let Some(r) = red.identity_residual(source, &set) {
            prop_assert!(r == 0.0, "{:?}: residual {} at {}", red.source, r, set);
        }
    }
    prop_assert_eq!(source.optimum(), red.source_value(red.target.optimum()), "{:?}", red.source);
    prop_assert_eq!(red.target_sense(), red.target.sense());
    Ok(())
}

fn family(n: usize, family: Family, seed: u64) -> GvcInstance {
    generate(&GeneratorConfig::new(n, family, seed)).unwrap().into_gvc()
}

fn problem(g: &GvcInstance, kind: ProblemKind) -> GvcProblem {
    GvcProblem::new(g.clone(), kind).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn general_reductions(n in 0usize..=9, seed in any::<u64>()) {
        let g = family(n, Family::General, seed);
        let src = problem(&g, ProblemKind::Gvc);
        check(&src, &gvc_to_gvc1(&g).unwrap())?;
        check(&src, &gvc_to_gvc2(&g).unwrap())?;
        check(&src, &gvc_to_ubqp(&g).unwrap())?;
        check(&src, &complement(&g).unwrap())?;
    }

    #[test]
    fn gvc1_and_gvc2_reductions(n in 0usize..=9, seed in any::<u64>()) {
        let g1 = family(n, Family::Gvc1, seed);
        let g2 = family(n, Family::Gvc2, seed);
        check(&problem(&g1, ProblemKind::Gvc1), &gvc1_to_ubqp(&g1).unwrap())?;
        check(&problem(&g1, ProblemKind::Gvc1), &gvc1_complement_gvc2(&g1).unwrap())?;
        check(&problem(&g2, ProblemKind::Gvc2), &gvc2_to_ubqp(&g2).unwrap())?;
        let twice = gvc1_complement_gvc2(&g1).unwrap();
        let back = complement(&twice.target.instance).unwrap();
        prop_assert_eq!(back.target.instance, g1);
    }

    #[test]
    fn ubqp_to_gvc2_identity(
        n in 0usize..=9,
        linear in proptest::collection::vec(-5i32..=5, 9),
        pairs in proptest::collection::vec((0usize..9, 0usize..9, -5i32..=5), 0..20),
    ) {
        let mut seen = std::collections::BTreeSet::new();
        let entries: Vec<(usize, usize, f64)> = pairs
            .into_iter()
            .filter(|&(i, j, _)| i < n && j < n && i != j && seen.insert((i.min(j), i.max(j))))
            .map(|(i, j, q)| (i, j, q as f64))
            .collect();
        let q = UbqpInstance::new(linear[..n].iter().map(|&a| a as f64).collect(), entries).unwrap();
        let red = ubqp_to_gvc2(&q).unwrap();
        check(&q, &red)?;
        let there = gvc2_to_ubqp(&red.target.instance).unwrap();
        prop_assert_eq!(there.target, q);
    }

    #[test]
    fn bipartite_reductions(n in 0usize..=9, seed in any::<u64>()) {
        let Generated::Gvc { instance, partition, .. } =
            generate(&GeneratorConfig::new(n, Family::Bipartite { lifted_nonneg: false }, seed)).unwrap()
        else { unreachable!() };
        let p = partition.unwrap();
        for variant in [BqpVariant::Gvc, BqpVariant::Gvc1, BqpVariant::Gvc2] {
            let g = restrict_to(&instance, variant.kind());
            let red = bipartite_gvc_to_bqp01(&g, &p, variant).unwrap();
            check(&problem(&g, variant.kind()), &red)?;
        }
    }

    #[test]
    fn vertex_cover_reductions(n in 0usize..=9, seed in any::<u64>()) {
        let g = family(n, Family::VcpnewFeasible, seed);
        let src = problem(&g, ProblemKind::Vcpnew);
        check(&src, &vcpnew_normalize(&g, ProblemKind::Vcop).unwrap())?;
        check(&src, &vcpnew_normalize(&g, ProblemKind::Vcup).unwrap())?;
        check(&src, &vcpnew_to_mwvcp(&g).unwrap())?;
    }

    #[test]
    fn independent_set_reductions(n in 0usize..=9, seed in any::<u64>()) {
        let g = family(n, Family::IspnewFeasible, seed);
        let src = problem(&g, ProblemKind::Ispnew);
        check(&src, &ispnew_normalize(&g, ProblemKind::Isop).unwrap())?;
        check(&src, &ispnew_normalize(&g, ProblemKind::Isup).unwrap())?;
        check(&src, &ispnew_to_mwisp(&g).unwrap())?;
        check(&src, &ispnew_complement_vcpnew(&g).unwrap())?;
    }

    #[test]
    fn composition_through_gvc1(n in 0usize..=9, seed in any::<u64>()) {
        let g = family(n, Family::General, seed);
        let first = gvc_to_gvc1(&g).unwrap();
        let second = gvc1_to_ubqp(&first.target.instance).unwrap();
        let direct = gvc_to_ubqp(&g).unwrap();
        prop_assert_eq!(&second.target, &direct.target);
        prop_assert_eq!(first.offset + second.offset, direct.offset);
    }
}
