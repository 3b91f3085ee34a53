//! q-Pochhammer products and Gaussian binomial coefficients.

use crate::coeff::Coeff;
use crate::error::SeriesError;
use crate::series::QSeries;

/// `∏_{j=0}^{n-1} (1 - x^{x_weight} q^{a + step·j})`, truncated at `T`.
pub fn poch_finite<C: Coeff>(
    a: u32,
    step: u32,
    n: u32,
    truncation: u32,
    x_weight: u32,
) -> Result<QSeries<C>, SeriesError> {
    check_factor(a, x_weight)?;
    let mut acc = QSeries::one(truncation);
    for j in 0..n {
        let d = a as u64 + step as u64 * j as u64;
        if d > truncation as u64 {
            if step == 0 {
                continue;
            }
            break;
        }
        acc = acc.mul_one_minus(d as u32, x_weight);
    }
    Ok(acc)
}

/// `∏_{j>=0} (1 - x^{x_weight} q^{a + step·j})`; exact through `q^T`.
pub fn poch_infinite<C: Coeff>(
    a: u32,
    step: u32,
    truncation: u32,
    x_weight: u32,
) -> Result<QSeries<C>, SeriesError> {
    if a == 0 || step == 0 {
        return Err(SeriesError::Malformed(format!(
            "infinite product needs a positive base and step, got a={a}, step={step}"
        )));
    }
    check_factor(a, x_weight)?;
    let mut acc = QSeries::one(truncation);
    let mut d = a;
    while d <= truncation {
        acc = acc.mul_one_minus(d, x_weight);
        d = match d.checked_add(step) {
            Some(v) => v,
            None => break,
        };
    }
    Ok(acc)
}

/// `1 / ∏_{j=0}^{n-1} (1 - x^{x_weight} q^{a + step·j})`, built by repeated
/// geometric-series multiplication.
pub fn poch_finite_inverse<C: Coeff>(
    a: u32,
    step: u32,
    n: u32,
    truncation: u32,
    x_weight: u32,
) -> Result<QSeries<C>, SeriesError> {
    check_factor(a, x_weight)?;
    if a == 0 && n > 0 {
        return Err(SeriesError::NotInvertible);
    }
    let mut acc = QSeries::one(truncation);
    for j in 0..n {
        let d = a as u64 + step as u64 * j as u64;
        if d > truncation as u64 {
            break;
        }
        acc = acc.div_one_minus(d as u32, x_weight);
    }
    Ok(acc)
}

fn check_factor(a: u32, x_weight: u32) -> Result<(), SeriesError> {
    if x_weight > a {
        return Err(SeriesError::InvalidFactor { base: a, x_weight });
    }
    Ok(())
}

/// The Gaussian binomial `[top, bottom]` in the base `q^base_power`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QBinomSpec {
    pub top: i64,
    pub bottom: i64,
    pub base_power: u32,
}

impl QBinomSpec {
    pub fn new(top: i64, bottom: i64, base_power: u32) -> Self {
        QBinomSpec {
            top,
            bottom,
            base_power,
        }
    }

    pub fn vanishes(&self) -> bool {
        self.bottom < 0 || self.bottom > self.top
    }

    /// Degree in `q` of the full polynomial.
    pub fn degree(&self) -> u64 {
        if self.vanishes() {
            0
        } else {
            self.base_power as u64 * (self.bottom * (self.top - self.bottom)) as u64
        }
    }
}

/// Gaussian binomial coefficient, truncated at `T`.
///
/// Zero when `bottom < 0` or `bottom > top`. Built from the product
/// `∏_{t=1}^{b} (1 - q^{r(a-b+t)}) / (1 - q^{rt})` as a power series, which is
/// exact at every truncation order without any divisibility check.
pub fn qbinom<C: Coeff>(spec: QBinomSpec, truncation: u32) -> QSeries<C> {
    QSeries::from_q_coeffs(truncation, qbinom_coeffs::<C>(spec, truncation))
}

/// Dense q-coefficients of [`qbinom`], without trailing zeros.
pub fn qbinom_coeffs<C: Coeff>(spec: QBinomSpec, truncation: u32) -> Vec<C> {
    if spec.vanishes() {
        return Vec::new();
    }
    let QBinomSpec {
        top,
        bottom,
        base_power: r,
    } = spec;
    assert!(r >= 1, "Gaussian binomial base power must be positive");
    let b = bottom.min(top - bottom) as u64;
    let len = (spec.degree().min(truncation as u64) + 1) as usize;
    let mut v = vec![C::zero(); len];
    v[0] = C::one();
    let complement = (top as u64) - b;
    for t in 1..=b {
        // multiply by (1 - q^{r(complement + t)})
        let m = (r as u64 * (complement + t)) as usize;
        if m < len {
            for d in (m..len).rev() {
                if !v[d - m].is_zero() {
                    let s = v[d - m].clone();
                    v[d].sub_assign_ref(&s);
                }
            }
        }
        // divide by (1 - q^{rt})
        let m = (r as u64 * t) as usize;
        if m < len {
            for d in m..len {
                if !v[d - m].is_zero() {
                    let s = v[d - m].clone();
                    v[d].add_assign_ref(&s);
                }
            }
        }
    }
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Int;

    type S = QSeries<Int>;

    fn q(c: &[i64], t: u32) -> S {
        S::from_q_coeffs(t, c.iter().map(|&v| Int::from(v)))
    }

    #[test]
    fn finite_products() {
        assert_eq!(poch_finite::<Int>(1, 1, 0, 10, 0).unwrap(), S::one(10));
        assert_eq!(
            poch_finite::<Int>(1, 1, 2, 10, 0).unwrap(),
            q(&[1, -1, -1, 1], 10)
        );
        assert_eq!(
            poch_finite::<Int>(2, 3, 1, 10, 0).unwrap(),
            q(&[1, 0, -1], 10)
        );
    }

    #[test]
    fn infinite_products() {
        let p = poch_infinite::<Int>(1, 3, 7, 0).unwrap();
        assert_eq!(p, q(&[1, -1, 0, 0, -1, 1, 0, -1], 7));
        assert_eq!(poch_infinite::<Int>(9, 3, 7, 0).unwrap(), S::one(7));
        assert_eq!(p.inverse().unwrap(), q(&[1, 1, 1, 1, 2, 2, 2, 3], 7));
    }

    #[test]
    fn x_weighted_product_inverse_counts_parts() {
        // coefficient of q^n x^m in 1/(xq;q)_inf counts partitions of n into m parts
        let inv = poch_infinite::<Int>(1, 1, 3, 1).unwrap().inverse().unwrap();
        let expected = S::from_terms(
            3,
            [
                (0, 0, 1),
                (1, 1, 1),
                (2, 1, 1),
                (2, 2, 1),
                (3, 1, 1),
                (3, 2, 1),
                (3, 3, 1),
            ]
            .map(|(d, e, c)| (d, e, Int::from(c))),
        )
        .unwrap();
        assert_eq!(inv, expected);
        assert_eq!(
            poch_finite_inverse::<Int>(1, 1, 3, 3, 1).unwrap().get(3, 3),
            Int::from(1)
        );
    }

    #[test]
    fn rejects_x_heavier_than_q() {
        assert!(poch_finite::<Int>(1, 1, 2, 5, 2).is_err());
        assert!(poch_infinite::<Int>(0, 1, 5, 0).is_err());
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(qbinom::<Int>(QBinomSpec::new(5, 0, 1), 20), S::one(20));
        assert!(qbinom::<Int>(QBinomSpec::new(3, 5, 1), 20).is_zero());
        assert!(qbinom::<Int>(QBinomSpec::new(3, -1, 1), 20).is_zero());
        assert_eq!(
            qbinom::<Int>(QBinomSpec::new(4, 2, 1), 20),
            q(&[1, 1, 2, 1, 1], 20)
        );
        // base q^3
        assert_eq!(
            qbinom::<Int>(QBinomSpec::new(2, 1, 3), 20),
            q(&[1, 0, 0, 1], 20)
        );
        // truncated
        assert_eq!(qbinom::<Int>(QBinomSpec::new(4, 2, 1), 2), q(&[1, 1, 2], 2));
    }
}
