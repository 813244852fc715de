use gvc::format::{parse, serialize, InstanceFile, Problem};
use gvc_core::oracle::restrict_to;
use gvc_core::{BipartitePartition, Bqp01Instance, EdgeWeights, GvcInstance, ProblemKind, UbqpInstance};
use proptest::prelude::*;

fn weight() -> impl Strategy<Value = f64> {
    prop_oneof![
        (-20i32..=20).prop_map(f64::from),
        (-1000i32..=1000).prop_map(|k| k as f64 / 8.0),
        any::<f64>().prop_filter("finite", |x| x.is_finite()),
        Just(f64::INFINITY),
    ]
}

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        (-20i32..=20).prop_map(f64::from),
        any::<f64>().prop_filter("finite", |x| x.is_finite()),
    ]
}

fn gvc_file() -> impl Strategy<Value = InstanceFile> {
    (1usize..=8)
        .prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            let m = pairs.len();
            (
                proptest::collection::vec(finite(), n),
                proptest::sample::subsequence(pairs, 0..=m),
                proptest::collection::vec((weight(), weight(), weight()), m),
                prop::sample::select(ProblemKind::ALL.to_vec()),
                any::<bool>(),
            )
        })
        .prop_map(|(costs, pairs, ws, kind, with_sides)| {
            let edges = pairs
                .into_iter()
                .zip(ws)
                .map(|((i, j), (a, b, c))| (i, j, EdgeWeights::new(a, b, c)));
            let g = restrict_to(&GvcInstance::new(costs, edges).unwrap(), kind);
            let partition = if with_sides { BipartitePartition::two_color(&g) } else { None };
            InstanceFile::new(Problem::Gvc {
                instance: g,
                kind,
                partition,
            })
        })
}

fn ubqp_file() -> impl Strategy<Value = InstanceFile> {
    (0usize..=8).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let m = pairs.len();
        (
            proptest::collection::vec(finite(), n),
            proptest::sample::subsequence(pairs, 0..=m),
            proptest::collection::vec(finite(), m),
            proptest::option::of(finite()),
        )
            .prop_map(|(linear, pairs, vals, offset)| {
                let entries = pairs.into_iter().zip(vals).map(|((i, j), v)| (i, j, v));
                let mut f = InstanceFile::new(Problem::Ubqp(UbqpInstance::new(linear, entries).unwrap()));
                f.offset = offset;
                f
            })
    })
}

fn bqp01_file() -> impl Strategy<Value = InstanceFile> {
    (0usize..=5, 0usize..=5).prop_flat_map(|(m, n)| {
        let cells: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let k = cells.len();
        (
            proptest::collection::vec(finite(), m),
            proptest::collection::vec(finite(), n),
            proptest::sample::subsequence(cells, 0..=k),
            proptest::collection::vec(finite(), k),
            any::<bool>(),
        )
            .prop_map(|(a, b, cells, vals, negated)| {
                let entries = cells.into_iter().zip(vals).map(|((i, j), v)| (i, j, v));
                let mut f = InstanceFile::new(Problem::Bqp01(Bqp01Instance::new(a, b, entries).unwrap()));
                f.offset = Some(1.5);
                f.negated = negated;
                f
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn gvc_files_round_trip(file in gvc_file()) {
        let text = serialize(&file);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(serialize(&back), text);
    }

    #[test]
    fn ubqp_and_bqp01_files_round_trip(file in prop_oneof![ubqp_file(), bqp01_file()]) {
        let text = serialize(&file);
        prop_assert_eq!(parse(&text).unwrap(), file);
    }

    #[test]
    fn infinite_weights_stay_symbolic(file in gvc_file()) {
        let Problem::Gvc { instance, .. } = &file.problem else { unreachable!() };
        let text = serialize(&file);
        let infinite = instance
            .edges()
            .iter()
            .map(|e| [e.weights.q0, e.weights.q1, e.weights.q2].iter().filter(|q| q.is_infinite()).count())
            .sum::<usize>();
        let mut symbolic = 0;
        for line in text.lines().filter(|l| l.starts_with("e ")) {
            for token in line.split_whitespace().skip(3) {
                if token == "inf" {
                    symbolic += 1;
                } else {
                    prop_assert!(token.parse::<f64>().unwrap().is_finite(), "{}", line);
                }
            }
        }
        prop_assert_eq!(symbolic, infinite);
    }

    #[test]
    fn comments_and_spacing_are_ignored(file in gvc_file()) {
        let text = serialize(&file);
        let noisy: String = text
            .lines()
            .map(|l| format!("  {}\t# note\n\n", l.replace(' ', "   ")))
            .collect();
        prop_assert_eq!(parse(&format!("# header\n{noisy}")).unwrap(), file);
    }
}

#[test]
fn bad_files_name_the_line() {
    let cases = [
        ("p gvc 2 1 gvc\nv 1 0\nv 2 0\ne 1 3 0 0 0\n", 4),
        ("p gvc 2 1 gvc\nv 1 0\nv 1 0\n", 3),
        ("p gvc 1 0 xyz\n", 1),
        ("p gvc 2 1 gvc\nv 1 0\nv 2 0\ne 1 2 0 0\n", 4),
        ("\n\np gvc 1 0 gvc\nv 1 0\nw 1\n", 5),
        ("p ubqp 2\na 1 0\na 2 0\nq 1 2 inf\n", 4),
        ("p gvc 1 0 gvc\nv 1 0\noffset 1\nv 1 0\n", 4),
    ];
    for (text, line) in cases {
        let err = parse(text).unwrap_err();
        assert!(err.to_string().starts_with(&format!("line {line}:")), "{text:?}: {err}");
    }
}
