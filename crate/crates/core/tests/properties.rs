use proptest::prelude::*;
use trichar_core::families;
use trichar_core::group::{superclasses, GtildeElement};
use trichar_core::scalars::Cyclotomic;

fn counts(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..4, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_ring_laws(a in counts(6), b in counts(6), c in counts(6)) {
        let (a, b, c) = (
            Cyclotomic::from_root_counts(6, &a),
            Cyclotomic::from_root_counts(6, &b),
            Cyclotomic::from_root_counts(6, &c),
        );
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn group_laws_in_t33(x in 0usize..1458, y in 0usize..1458, z in 0usize..1458) {
        let g = families::t(3, 3).unwrap();
        let (a, b, c) = (g.element(x % g.order()), g.element(y % g.order()), g.element(z % g.order()));
        prop_assert_eq!(g.mul(&g.mul(&a, &b), &c), g.mul(&a, &g.mul(&b, &c)));
        prop_assert_eq!(g.mul(&a, &g.inv(&a)), g.identity());
    }

    #[test]
    fn superclasses_are_gtilde_stable(x in 0usize..1458, t in 0usize..8, a in 0u64..27, b in 0u64..27) {
        let g = families::t(3, 3).unwrap();
        let part = superclasses(&g);
        let x = x % g.order();
        let tau = GtildeElement { t: t % g.h().order(), alpha: g.decode(a), beta: g.decode(b) };
        let y = g.index(&g.gtilde_act_group(&tau, &g.element(x)));
        prop_assert_eq!(part.class_of[x], part.class_of[y]);
    }
}
