use canring::hilbert::{hilbert_series, i_surface_series};
use canring::strata::{build, pfaffians_4x4, StratumKind};
use canring::{Field, GbOptions, PrimeField};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn every_surface_has_the_target_series(seed in 1u64..1_000_000) {
        let target = i_surface_series().expand(20);
        for kind in [StratumKind::TypeA, StratumKind::TypeB, StratumKind::TypeDD, StratumKind::TypeDE] {
            let inst = build(kind, PrimeField::default(), seed).unwrap();
            let h = hilbert_series(&inst.ideal, &GbOptions::full()).unwrap();
            prop_assert_eq!(h.coefficients(20).unwrap(), target.clone(), "{} seed {}", kind, seed);
        }
    }

    #[test]
    fn curves_are_hyperplane_sections(seed in 1u64..1_000_000) {
        let target = i_surface_series().times_one_minus(1).expand(20);
        for kind in [StratumKind::CurveA, StratumKind::CurveB] {
            let inst = build(kind, PrimeField::default(), seed).unwrap();
            let h = hilbert_series(&inst.ideal, &GbOptions::full()).unwrap();
            prop_assert_eq!(h.coefficients(20).unwrap(), target.clone());
        }
    }

    #[test]
    fn builds_are_deterministic(seed in 1u64..1_000_000, k in 0usize..10) {
        let kind = StratumKind::ALL[k];
        let a = build(kind, PrimeField::default(), seed).unwrap();
        let b = build(kind, PrimeField::default(), seed).unwrap();
        prop_assert_eq!(a.to_ideal_file(), b.to_ideal_file());
    }

    #[test]
    fn generators_are_homogeneous(seed in 1u64..1_000_000, k in 0usize..10) {
        let inst = build(StratumKind::ALL[k], PrimeField::default(), seed).unwrap();
        prop_assert!(inst.generators().iter().all(|g| g.is_homogeneous()));
    }

    #[test]
    fn pfaffian_is_alternating_under_transposition(v in prop::collection::vec(0u32..32003, 6)) {
        use canring::ring::{Polynomial, Ring};
        let f = PrimeField::default();
        let r = Ring::new(f, &["t"], &[1]).unwrap();
        let upper = [[0, v[0], v[1], v[2]], [0, 0, v[3], v[4]], [0, 0, 0, v[5]]];
        let mk = |swap: bool| -> Vec<Vec<Polynomial<PrimeField>>> {
            let perm = if swap { [1, 0, 2, 3] } else { [0, 1, 2, 3] };
            (0..4).map(|i| (0..4).map(|j| {
                let (a, b) = (perm[i], perm[j]);
                let c = match a.cmp(&b) {
                    std::cmp::Ordering::Less => upper[a][b],
                    std::cmp::Ordering::Equal => 0,
                    std::cmp::Ordering::Greater => f.neg(&upper[b][a]),
                };
                Polynomial::constant(&r, c)
            }).collect()).collect()
        };
        let p = pfaffians_4x4(&mk(false)).unwrap()[0].clone();
        let q = pfaffians_4x4(&mk(true)).unwrap()[0].clone();
        prop_assert_eq!(p.add(&q), Polynomial::zero(&r));
    }
}
