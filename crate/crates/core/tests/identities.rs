use std::sync::Arc;

use qpl::battery;
use qpl::contfrac::{
    ratio_fraction, shifted_ratio_fraction, verify_ratio, verify_shifted_ratio, RatioNumerators,
    SignSchedule,
};
use qpl::detform::{
    build_general, build_tridiagonal, det, det_brute_force, det_exact, BandMatrixSpec,
};
use qpl::fnfamily::{f_upper_exact, FamilyCache, FamilyParams};
use qpl::recurrences::{
    check, check_functional_equation, check_qgauss_limit, fit_sign, fixed_recurrence,
    second_order_schema, Coefficient, FSeq, FSmallSeq, Fit, RecTerm, RecurrenceSchema, Sequence,
};
use qpl::{Int, Series};

fn poly(t: u32, terms: &[(u32, u32, i64)]) -> Series {
    Series::from_terms(t, terms.iter().map(|&(d, e, c)| (d, e, Int::from(c)))).unwrap()
}

fn f011(n: i64, t: u32) -> Series {
    f_upper_exact::<Int>(FamilyParams::new(0, 1, 1, n)).extend_polynomial(t)
}

#[test]
fn three_term_recurrence() {
    let f = FSeq::new(0, 1, 1, Arc::new(FamilyCache::new()));
    assert!(check(&fixed_recurrence().with_range(1, 40), &[&f]).passed());
    let off = check(
        &fixed_recurrence().perturbed(2, 0, 1).with_range(1, 40),
        &[&f],
    );
    assert!(!off.passed());
    assert!(off.first_failure.unwrap().n <= 3);
}

#[test]
fn empty_schema_passes() {
    let f = FSeq::new(0, 1, 1, Arc::new(FamilyCache::new()));
    assert!(check(&RecurrenceSchema::new("empty", Vec::new(), (0, 10)), &[&f]).passed());
}

/// `a_N = 3` for every `N`.
struct Threes;

impl Sequence for Threes {
    fn label(&self) -> String {
        "3".into()
    }

    fn exact(&self, _: i64) -> Arc<Series> {
        Arc::new(Series::constant(Int::from(3), 0))
    }
}

#[test]
fn sign_fit_without_solution() {
    // a_N + q a_{N-1} = 0 has no sign that works for a constant sequence
    let schema = RecurrenceSchema::new(
        "no fit",
        vec![
            RecTerm::new(Coefficient::constant(1), 0, 0, 0),
            RecTerm::new(Coefficient::mono(1, 0, 1, 0), 0, 1, 0),
        ],
        (1, 5),
    );
    assert_eq!(fit_sign(&schema, 1, 0, &[&Threes]), Fit::None);
}

#[test]
fn functional_equation_small() {
    assert!(check_functional_equation(0, 1, 30, 0).passed());
    assert!(check_functional_equation(1, 1, 30, 0).passed());
}

#[test]
fn second_order_recurrence_of_small_family() {
    let f = FSmallSeq {
        reading: qpl::fnfamily::PochReading::Single,
    };
    assert!(check(&second_order_schema().with_range(2, 40), &[&f]).passed());
    let off = check(
        &second_order_schema()
            .perturbed(2, 0, 1)
            .perturbed(2, 1, 1)
            .with_range(2, 40),
        &[&f],
    );
    assert!(off.first_failure.unwrap().n <= 6);
}

#[test]
fn qgauss_limit() {
    assert!(check_qgauss_limit(100).passed());
}

#[test]
fn tridiagonal_by_hand() {
    let t = 12;
    assert_eq!(det(&BandMatrixSpec::unit(1), t).unwrap(), Series::one(t));
    let one = det(&build_tridiagonal(1), t).unwrap();
    assert_eq!(one, poly(t, &[(0, 0, 1), (1, 1, 1)]));
    // (1+xq)(1+xq^2) - x^2 q^3
    let two = &(&poly(t, &[(0, 0, 1), (1, 1, 1)]) * &poly(t, &[(0, 0, 1), (2, 1, 1)]))
        - &poly(t, &[(3, 2, 1)]);
    assert_eq!(det(&build_tridiagonal(2), t).unwrap(), two);
    assert_eq!(two, f011(2, t));
    let three = poly(
        t,
        &[
            (0, 0, 1),
            (1, 1, 1),
            (2, 1, 1),
            (3, 1, 1),
            (4, 2, 1),
            (6, 3, -1),
        ],
    );
    assert_eq!(det(&build_tridiagonal(3), t).unwrap(), three);
}

#[test]
fn determinants_match_family() {
    for n in 1..=8 {
        let want = f_upper_exact::<Int>(FamilyParams::new(0, 1, 1, n as i64));
        let got = det_exact(&build_tridiagonal(n)).unwrap();
        let t = want.truncation().max(got.truncation());
        assert_eq!(got.extend_polynomial(t), want.extend_polynomial(t), "N={n}");
        for (i, k) in [(0, 1), (1, 2)] {
            let want = f_upper_exact::<Int>(FamilyParams::new(i, 0, k, n as i64));
            let got = det_exact(&build_general(n, i, k)).unwrap();
            let t = want.truncation().max(got.truncation());
            assert_eq!(
                got.extend_polynomial(t),
                want.extend_polynomial(t),
                "N={n} (i,k)=({i},{k})"
            );
        }
    }
}

#[test]
fn brute_force_determinant_agrees() {
    for n in 1..=5 {
        let spec = build_general(n, 1, 1);
        assert_eq!(det(&spec, 40).unwrap(), det_brute_force(&spec, 40).unwrap());
    }
}

#[test]
fn fraction_depth_zero() {
    let t = 10;
    let head = poly(t, &[(0, 0, 1), (1, 1, 1)]);
    assert_eq!(
        shifted_ratio_fraction(1, SignSchedule::AllMinus, t)
            .value(0, t)
            .unwrap(),
        head
    );
    let cf = ratio_fraction(1, RatioNumerators::Odd, t);
    assert!(cf.is_empty());
    assert_eq!(cf.value(0, t).unwrap(), head);
    assert_eq!(&f011(1, t) * &f011(0, t).inverse().unwrap(), head);
}

#[test]
fn ratio_depth_two() {
    let t = 20;
    // (1+xq^2) - x^2 q^3/(1+xq), cross-multiplied
    let cf = ratio_fraction(2, RatioNumerators::Odd, t);
    let (p, q) = cf.convergent(1, t);
    assert_eq!(&p * &f011(1, t), &q * &f011(2, t));
}

#[test]
fn fraction_verifiers() {
    assert!(verify_ratio(30, RatioNumerators::Odd).passed());
    assert!(verify_shifted_ratio(30, SignSchedule::AllMinus).passed());
    assert!(!verify_shifted_ratio(10, SignSchedule::AllPlus).passed());
}

#[test]
fn conjecture_probe() {
    assert!(battery::conjecture(0, None).passed());
    assert!(battery::conjecture(60, None).passed());
    let r = battery::conjecture(60, Some(41));
    assert!(!r.passed());
    assert_eq!(r.first_failure.unwrap().n, 41);
}
