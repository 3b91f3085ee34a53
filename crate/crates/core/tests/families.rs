use std::collections::BTreeMap;

use qpl::fnfamily::{
    b_seq, f_infinite, f_k0_closed, f_small, f_upper_exact, f_upper_n, overpartition_gf,
    ClosedFormVariant, FamilyParams, PochReading,
};
use qpl::{Int, Series};

fn poly(t: u32, terms: &[(u32, u32, i64)]) -> Series {
    Series::from_terms(t, terms.iter().map(|&(d, e, c)| (d, e, Int::from(c)))).unwrap()
}

fn q_poly(t: u32, coeffs: &[i64]) -> Series {
    let terms: Vec<(u32, u32, i64)> = coeffs
        .iter()
        .enumerate()
        .map(|(d, &c)| (d as u32, 0, c))
        .collect();
    poly(t, &terms)
}

/// `[a, b]` in `q^r` by the Pascal recursion, as dense coefficients.
fn gauss(a: i64, b: i64, r: usize) -> Vec<i64> {
    if b < 0 || a < 0 || b > a {
        return Vec::new();
    }
    let (a, b) = (a as usize, b as usize);
    let mut row: Vec<Vec<i64>> = vec![vec![1]];
    for n in 1..=a {
        let mut next = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let mut p = vec![0i64; m * (n - m) + 1];
            if m > 0 {
                for (d, c) in row[m - 1].iter().enumerate() {
                    p[d] += c;
                }
            }
            if m < n {
                for (d, c) in row[m].iter().enumerate() {
                    p[d + m] += c;
                }
            }
            next.push(p);
        }
        row = next;
    }
    let mut out = vec![0i64; (row[b].len() - 1) * r + 1];
    for (d, c) in row[b].iter().enumerate() {
        out[d * r] = *c;
    }
    out
}

/// The defining double sum, expanded with plain vectors.
fn naive_f(i: u32, j: u32, k: u32, n: i64) -> BTreeMap<(u32, u32), i64> {
    let kk = 2 * k as i64 + 1;
    let mut acc: BTreeMap<(u32, u32), i64> = BTreeMap::new();
    for nn in 0..=n.max(0) {
        for m in 0..=n.max(0) + j as i64 {
            let a = gauss(n - kk * nn - m + j as i64, m, 1);
            let b = gauss(n - 2 * k as i64 * nn - m, nn, kk as usize);
            if a.is_empty() || b.is_empty() {
                continue;
            }
            let e = (kk * nn) * (kk * nn + 1) / 2 + m * m + kk * m * nn + i as i64 * (m + nn);
            let xd = (m + kk * nn) as u32;
            let sign = if nn % 2 == 1 { -1 } else { 1 };
            for (da, ca) in a.iter().enumerate() {
                for (db, cb) in b.iter().enumerate() {
                    if ca * cb != 0 {
                        *acc.entry(((e as usize + da + db) as u32, xd)).or_default() +=
                            sign * ca * cb;
                    }
                }
            }
        }
    }
    acc.retain(|_, c| *c != 0);
    acc
}

fn as_map(s: &Series) -> BTreeMap<(u32, u32), i64> {
    s.terms()
        .map(|(d, e, c)| ((d, e), c.to_i64().unwrap()))
        .collect()
}

#[test]
fn f011_initial_values() {
    let t = 12;
    let f = |n| f_upper_n::<Int>(FamilyParams::new(0, 1, 1, n), t);
    assert_eq!(f(0), Series::one(t));
    assert_eq!(f(1), poly(t, &[(0, 0, 1), (1, 1, 1)]));
    assert_eq!(f(2), poly(t, &[(0, 0, 1), (1, 1, 1), (2, 1, 1)]));
    assert_eq!(
        f(3),
        poly(
            t,
            &[
                (0, 0, 1),
                (1, 1, 1),
                (2, 1, 1),
                (3, 1, 1),
                (4, 2, 1),
                (6, 3, -1)
            ]
        )
    );
    assert_eq!(f(3).eval_x_one(), q_poly(t, &[1, 1, 1, 1, 1, 0, -1]));
}

#[test]
fn negative_index_is_zero() {
    for (i, j, k) in [(0, 0, 0), (0, 1, 1), (2, 3, 2)] {
        assert!(f_upper_n::<Int>(FamilyParams::new(i, j, k, -1), 10).is_zero());
        assert!(f_upper_exact::<Int>(FamilyParams::new(i, j, k, -5)).is_zero());
    }
}

#[test]
fn double_sum_against_plain_expansion() {
    for i in 0..=2 {
        for j in 0..=3 {
            for k in 0..=2 {
                for n in 0..=9 {
                    let got = f_upper_exact::<Int>(FamilyParams::new(i, j, k, n));
                    assert_eq!(as_map(&got), naive_f(i, j, k, n), "F_{n}({i},{j},{k})");
                }
            }
        }
    }
}

#[test]
fn polynomials_stabilize_to_the_limit() {
    let t = 14;
    for (i, k) in [(0, 1), (1, 1), (0, 2), (2, 1)] {
        let limit = f_infinite::<Int>(i, k, t, true);
        for j in 0..=2u32 {
            let n = (t + j + 1) as i64;
            let a = f_upper_n::<Int>(FamilyParams::new(i, j, k, n), t);
            let b = f_upper_n::<Int>(FamilyParams::new(i, j, k, n + 3), t);
            assert_eq!(a, b, "({i},{j},{k})");
            if j == 0 {
                assert_eq!(a, limit, "({i},{k})");
            }
        }
    }
}

#[test]
fn limit_series_small_orders() {
    let t = 7;
    assert_eq!(
        f_infinite::<Int>(0, 1, t, false),
        q_poly(t, &[1, 1, 1, 1, 2, 2, 2, 3])
    );
    for (i, k) in [(0, 0), (0, 1), (3, 2)] {
        assert_eq!(f_infinite::<Int>(i, k, 0, true), Series::one(0));
    }
    // partitions into parts congruent to 2 or 3 mod 6, counted by hand
    assert_eq!(
        f_infinite::<Int>(1, 1, 8, false),
        q_poly(8, &[1, 0, 1, 1, 1, 1, 2, 1, 3])
    );
}

#[test]
fn closed_form_at_k0() {
    for i in 0..=3 {
        for n in 0..=6 {
            for v in ClosedFormVariant::ALL {
                assert_eq!(f_k0_closed::<Int>(i, 1, n, 20, v), Series::one(20));
            }
        }
    }
    let t = 8;
    let f = f_upper_n::<Int>(FamilyParams::new(0, 2, 0, 1), t);
    assert_eq!(f_k0_closed::<Int>(0, 2, 1, t, ClosedFormVariant::Plain), f);
    assert_eq!(f, poly(t, &[(0, 0, 1), (2, 1, 1)]));
    assert_ne!(
        f_k0_closed::<Int>(0, 2, 1, t, ClosedFormVariant::Shifted),
        f
    );
}

#[test]
fn small_family() {
    assert_eq!(f_small::<Int>(0, 10, PochReading::Single), Series::one(10));
    assert_eq!(f_small::<Int>(2, 10, PochReading::Single), Series::one(10));
    // N = 3: 1 + q^{1} [3,3] (1 - q^2)
    assert_eq!(
        f_small::<Int>(3, 10, PochReading::Single),
        q_poly(10, &[1, 1, 0, -1])
    );
}

#[test]
fn b_sequence_start() {
    for sign in [1, -1] {
        assert_eq!(b_seq::<Int>(1, 6, sign), Series::one(6));
    }
    assert_eq!(b_seq::<Int>(2, 6, 1), q_poly(6, &[1, 2]));
    assert_eq!(b_seq::<Int>(2, 6, -1), Series::one(6));
}

#[test]
fn overpartition_series_coefficients() {
    let g = overpartition_gf::<Int>(1, 1, 7);
    let q7: Vec<i64> = (0..=7).map(|e| g.get(7, e).to_i64().unwrap()).collect();
    assert_eq!(q7, [0, 2, 9, 10, 7, 4, 2, 1]);
    assert_eq!(g.coeff(0).unwrap(), vec![(0, Int::from(1))]);
}
