use num_bigint::BigInt;
use proptest::prelude::*;
use qcore::{qbinom, BigSeries, Int, QBinomSpec, RationalSeries, Series};

fn series_with(t: u32, big: bool) -> impl Strategy<Value = Series> {
    let coeff = if big {
        prop_oneof![
            (-50i64..50).prop_map(Int::from),
            any::<i64>().prop_map(Int::from)
        ]
        .boxed()
    } else {
        (-50i64..50).prop_map(Int::from).boxed()
    };
    prop::collection::vec((0..=t, 0..=t, coeff), 0..12).prop_map(move |raw| {
        let terms = raw.into_iter().map(|(d, e, c)| (d, e.min(d), c));
        Series::from_terms(t, terms).unwrap()
    })
}

fn triple() -> impl Strategy<Value = (Series, Series, Series)> {
    (0u32..=20, any::<bool>()).prop_flat_map(|(t, big)| {
        (
            series_with(t, big),
            series_with(t, big),
            series_with(t, big),
        )
    })
}

fn to_big(s: &Series) -> BigSeries {
    BigSeries::from_terms(
        s.truncation(),
        s.terms().map(|(d, e, c)| (d, e, c.to_bigint())),
    )
    .unwrap()
}

fn to_rational(s: &Series) -> RationalSeries {
    RationalSeries::from_terms(
        s.truncation(),
        s.terms()
            .map(|(d, e, c)| (d, e, num_rational::BigRational::from_integer(c.to_bigint()))),
    )
    .unwrap()
}

fn pow_shift(s: &Series, a: u32) -> Series {
    s.shifted(a, 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        let t = a.truncation();
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &Series::one(t), a.clone());
        prop_assert_eq!(&a + &Series::zero(t), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &(-&a), Series::zero(t));
    }

    #[test]
    fn truncation_commutes_with_products((a, b, _) in triple(), cut in 0u32..=20) {
        let lo = cut.min(a.truncation());
        prop_assert_eq!((&a * &b).truncate(lo), &a.truncate(lo) * &b.truncate(lo));
        prop_assert_eq!((&a + &b).truncate(lo), &a.truncate(lo) + &b.truncate(lo));
    }

    #[test]
    fn coefficient_rings_agree((a, b, c) in triple()) {
        let int = &(&a * &b) - &c;
        let big = &(&to_big(&a) * &to_big(&b)) - &to_big(&c);
        let rat = &(&to_rational(&a) * &to_rational(&b)) - &to_rational(&c);
        prop_assert_eq!(to_big(&int), big);
        prop_assert_eq!(to_rational(&int), rat);
    }

    #[test]
    fn inverse_is_two_sided((a, _, _) in triple()) {
        let t = a.truncation();
        // force a unit constant term
        let unit = &(&a - &Series::from_terms(t, [(0, 0, a.get(0, 0))]).unwrap()) + &Series::one(t);
        let inv = unit.inverse().unwrap();
        prop_assert_eq!(&unit * &inv, Series::one(t));
        prop_assert_eq!(&inv * &unit, Series::one(t));
    }

    #[test]
    fn substitution_is_a_ring_map((a, b, _) in triple(), p in 0u32..4, r in 0u32..4) {
        prop_assert_eq!((&a * &b).subst_x(p), &a.subst_x(p) * &b.subst_x(p));
        prop_assert_eq!((&a + &b).subst_x(p), &a.subst_x(p) + &b.subst_x(p));
        prop_assert_eq!(a.subst_x(p).subst_x(r), a.subst_x(p + r));
        prop_assert_eq!((&a * &b).eval_x_one(), &a.eval_x_one() * &b.eval_x_one());
    }

    #[test]
    fn pascal_rules(top in 1i64..=15, bottom in 0i64..=15, r in prop::sample::select(vec![1u32, 3]), t in 0u32..=20) {
        let g = |a: i64, b: i64| qbinom::<Int>(QBinomSpec::new(a, b, r), t);
        let lhs = g(top, bottom);
        let b = bottom.max(0) as u32;
        let first = &g(top - 1, bottom - 1) + &pow_shift(&g(top - 1, bottom), r * b);
        let second = &pow_shift(&g(top - 1, bottom - 1), r * (top - bottom).max(0) as u32) + &g(top - 1, bottom);
        prop_assert_eq!(&lhs, &first);
        if bottom <= top {
            prop_assert_eq!(&lhs, &second);
        }
    }

    #[test]
    fn gaussian_symmetry(top in 0i64..=15, bottom in 0i64..=15, r in 1u32..=3, t in 0u32..=20) {
        prop_assume!(bottom <= top);
        let a = qbinom::<Int>(QBinomSpec::new(top, bottom, r), t);
        let b = qbinom::<BigInt>(QBinomSpec::new(top, top - bottom, r), t);
        prop_assert_eq!(to_big(&a), b);
        // value at q = 1 is the ordinary binomial when nothing is truncated
        let full = QBinomSpec::new(top, bottom, r).degree() as u32;
        let sum = qbinom::<Int>(QBinomSpec::new(top, bottom, r), full)
            .q_coefficients()
            .iter()
            .fold(Int::from(0), |acc, c| &acc + c);
        let mut binom = 1i64;
        for i in 0..bottom {
            binom = binom * (top - i) / (i + 1);
        }
        prop_assert_eq!(sum, Int::from(binom));
    }
}
