//! Truncated bivariate formal power series in `q` (graded, truncated) and `x`
//! (tracked exactly).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::coeff::Coeff;
use crate::error::SeriesError;

/// Dense accumulators larger than this fall back to a sparse map.
const DENSE_CELL_LIMIT: usize = 1 << 24;

/// A formal power series `Σ c[d,e] q^d x^e` with all q-degrees above the
/// truncation order `T` discarded.
///
/// Terms are stored sparsely by `(q-degree, x-degree)`; zero coefficients are
/// never stored. Every stored term satisfies `x-degree <= q-degree`.
#[derive(Clone, PartialEq)]
pub struct QSeries<C> {
    truncation: u32,
    terms: BTreeMap<(u32, u32), C>,
}

impl<C: Coeff> QSeries<C> {
    pub fn zero(truncation: u32) -> Self {
        QSeries {
            truncation,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(truncation: u32) -> Self {
        Self::constant(C::one(), truncation)
    }

    pub fn constant(c: C, truncation: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        QSeries { truncation, terms }
    }

    /// `c·q^a·x^b`, or the zero series when `a > T`.
    pub fn monomial(c: C, q: i64, x: i64, truncation: u32) -> Result<Self, SeriesError> {
        if q < 0 || x < 0 {
            return Err(SeriesError::NegativeExponent { q, x });
        }
        if x > q {
            return Err(SeriesError::XDegreeExceedsQDegree {
                q: q as u32,
                x: x as u32,
            });
        }
        if q > truncation as i64 {
            return Ok(Self::zero(truncation));
        }
        Ok(Self::raw_monomial(c, q as u32, x as u32, truncation))
    }

    pub(crate) fn raw_monomial(c: C, q: u32, x: u32, truncation: u32) -> Self {
        debug_assert!(x <= q);
        let mut terms = BTreeMap::new();
        if q <= truncation && !c.is_zero() {
            terms.insert((q, x), c);
        }
        QSeries { truncation, terms }
    }

    /// Builds a series from `(q-degree, x-degree, coefficient)` triples, summing
    /// repeated keys and dropping terms beyond the truncation order.
    pub fn from_terms<I>(truncation: u32, terms: I) -> Result<Self, SeriesError>
    where
        I: IntoIterator<Item = (u32, u32, C)>,
    {
        let mut map: BTreeMap<(u32, u32), C> = BTreeMap::new();
        for (d, e, c) in terms {
            if e > d {
                return Err(SeriesError::XDegreeExceedsQDegree { q: d, x: e });
            }
            if d > truncation {
                continue;
            }
            add_into(&mut map, (d, e), &c);
        }
        Ok(QSeries {
            truncation,
            terms: map,
        })
    }

    /// An x-free series from its q-coefficients `c[0], c[1], ...`.
    pub fn from_q_coeffs<I>(truncation: u32, coeffs: I) -> Self
    where
        I: IntoIterator<Item = C>,
    {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .take(truncation as usize + 1)
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| ((d as u32, 0), c))
            .collect();
        QSeries { truncation, terms }
    }

    pub(crate) fn from_map(truncation: u32, terms: BTreeMap<(u32, u32), C>) -> Self {
        QSeries { truncation, terms }
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending `(q-degree, x-degree)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &C)> + '_ {
        self.terms.iter().map(|(&(d, e), c)| (d, e, c))
    }

    pub fn get(&self, q: u32, x: u32) -> C {
        self.terms.get(&(q, x)).cloned().unwrap_or_else(C::zero)
    }

    /// The x-polynomial multiplying `q^d`, as ascending `(x-degree, coefficient)`.
    pub fn coeff(&self, d: u32) -> Result<Vec<(u32, C)>, SeriesError> {
        if d > self.truncation {
            return Err(SeriesError::BeyondTruncation {
                degree: d,
                truncation: self.truncation,
            });
        }
        Ok(self
            .terms
            .range((d, 0)..=(d, u32::MAX))
            .map(|(&(_, e), c)| (e, c.clone()))
            .collect())
    }

    /// Coefficients of `q^0..=q^T` after setting `x = 1`.
    pub fn q_coefficients(&self) -> Vec<C> {
        let mut out = vec![C::zero(); self.truncation as usize + 1];
        for (&(d, _), c) in &self.terms {
            out[d as usize].add_assign_ref(c);
        }
        out
    }

    pub fn x_degree(&self) -> u32 {
        self.terms.keys().map(|&(_, e)| e).max().unwrap_or(0)
    }

    /// Highest q-degree present, `None` for the zero series.
    pub fn q_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|&(d, _)| d)
    }

    /// Lowest q-degree present, `None` for the zero series.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(|&(d, _)| d)
    }

    /// The term with the smallest `(q-degree, x-degree)`.
    pub fn leading_term(&self) -> Option<(u32, u32, &C)> {
        self.terms.iter().next().map(|(&(d, e), c)| (d, e, c))
    }

    pub fn is_x_free(&self) -> bool {
        self.terms.keys().all(|&(_, e)| e == 0)
    }

    /// Drops everything above `q^t`. Raising the order is not possible, so
    /// `t` larger than the current order leaves the series unchanged.
    pub fn truncate(&self, t: u32) -> Self {
        if t >= self.truncation {
            return self.clone();
        }
        let terms = self
            .terms
            .range(..(t + 1, 0))
            .map(|(k, c)| (*k, c.clone()))
            .collect();
        QSeries {
            truncation: t,
            terms,
        }
    }

    /// Reinterprets an exact polynomial at a higher truncation order.
    ///
    /// Only valid when the series is known to be a polynomial whose true degree
    /// does not exceed its current truncation order.
    pub fn extend_polynomial(&self, t: u32) -> Self {
        QSeries {
            truncation: t.max(self.truncation),
            terms: self.terms.clone(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.merge(rhs, false)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.merge(rhs, true)
    }

    fn merge(&self, rhs: &Self, negate: bool) -> Self {
        let t = self.truncation.min(rhs.truncation);
        if rhs.terms.is_empty() {
            return self.truncate(t);
        }
        let mut a = self.terms.range(..(t + 1, 0)).peekable();
        let mut b = rhs.terms.range(..(t + 1, 0)).peekable();
        let mut out: Vec<((u32, u32), C)> =
            Vec::with_capacity(self.terms.len().max(rhs.terms.len()));
        let flip = |c: &C| if negate { -c.clone() } else { c.clone() };
        loop {
            match (a.peek(), b.peek()) {
                (Some((ka, ca)), Some((kb, cb))) => {
                    if ka < kb {
                        out.push((**ka, (*ca).clone()));
                        a.next();
                    } else if kb < ka {
                        out.push((**kb, flip(cb)));
                        b.next();
                    } else {
                        let mut v = (*ca).clone();
                        if negate {
                            v.sub_assign_ref(cb);
                        } else {
                            v.add_assign_ref(cb);
                        }
                        if !v.is_zero() {
                            out.push((**ka, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((ka, ca)), None) => {
                    out.push((**ka, (*ca).clone()));
                    a.next();
                }
                (None, Some((kb, cb))) => {
                    out.push((**kb, flip(cb)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        QSeries {
            truncation: t,
            terms: out.into_iter().collect(),
        }
    }

    /// Builds a series from a dense row-major grid indexed by
    /// `q-degree * cols + x-degree`.
    pub fn from_dense(truncation: u32, cols: usize, grid: Vec<C>) -> Result<Self, SeriesError> {
        let terms = dense_to_map(grid, cols);
        if let Some(&(d, e)) = terms.keys().find(|&&(d, e)| e > d || d > truncation) {
            return Err(if e > d {
                SeriesError::XDegreeExceedsQDegree { q: d, x: e }
            } else {
                SeriesError::BeyondTruncation {
                    degree: d,
                    truncation,
                }
            });
        }
        Ok(QSeries { truncation, terms })
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect();
        QSeries {
            truncation: self.truncation,
            terms,
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.truncation);
        }
        let terms = self.terms.iter().map(|(k, v)| (*k, v.mul_ref(c))).collect();
        QSeries {
            truncation: self.truncation,
            terms,
        }
    }

    /// Multiplies by `q^a x^b` (with `b <= a`), dropping terms pushed past `T`.
    pub fn shifted(&self, a: u32, b: u32) -> Self {
        assert!(
            b <= a,
            "shift by x^{b} q^{a} would break the x <= q invariant"
        );
        let t = self.truncation;
        let terms = self
            .terms
            .iter()
            .filter(|(&(d, _), _)| d as u64 + a as u64 <= t as u64)
            .map(|(&(d, e), c)| ((d + a, e + b), c.clone()))
            .collect();
        QSeries {
            truncation: t,
            terms,
        }
    }

    /// Applies `x ↦ x·q^p`.
    pub fn subst_x(&self, p: u32) -> Self {
        let t = self.truncation as u64;
        let terms = self
            .terms
            .iter()
            .filter(|(&(d, e), _)| d as u64 + p as u64 * e as u64 <= t)
            .map(|(&(d, e), c)| ((d + p * e, e), c.clone()))
            .collect();
        QSeries {
            truncation: self.truncation,
            terms,
        }
    }

    /// Sets `x = 1`.
    pub fn eval_x_one(&self) -> Self {
        let mut terms: BTreeMap<(u32, u32), C> = BTreeMap::new();
        for (&(d, _), c) in &self.terms {
            add_into(&mut terms, (d, 0), c);
        }
        QSeries {
            truncation: self.truncation,
            terms,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let t = self.truncation.min(rhs.truncation);
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(t);
        }
        let (small, large) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        if small.terms.len() == 1 {
            let (&(d, e), c) = small.terms.iter().next().unwrap();
            let mut out = large.truncate(t).shifted(d, e);
            if !c.is_one_like() {
                out = out.scale(c);
            }
            return out;
        }
        let lhs: Vec<(u32, u32, &C)> = self.terms().filter(|&(d, _, _)| d <= t).collect();
        let rhs_terms: Vec<(u32, u32, &C)> = rhs.terms().filter(|&(d, _, _)| d <= t).collect();
        if lhs.is_empty() || rhs_terms.is_empty() {
            return Self::zero(t);
        }
        let max_d = (lhs.last().unwrap().0 + rhs_terms.last().unwrap().0).min(t);
        let cols = (self.x_degree() + rhs.x_degree()) as usize + 1;
        let rows = max_d as usize + 1;
        if let Some(out) = mul_words(&lhs, &rhs_terms, t, rows, cols) {
            return out;
        }
        let terms = if rows.saturating_mul(cols) <= DENSE_CELL_LIMIT {
            let mut acc = vec![C::zero(); rows * cols];
            for &(da, ea, ca) in &lhs {
                for &(db, eb, cb) in &rhs_terms {
                    if da + db > t {
                        break;
                    }
                    acc[(da + db) as usize * cols + (ea + eb) as usize]
                        .add_assign_ref(&ca.mul_ref(cb));
                }
            }
            dense_to_map(acc, cols)
        } else {
            let mut map = BTreeMap::new();
            for &(da, ea, ca) in &lhs {
                for &(db, eb, cb) in &rhs_terms {
                    if da + db > t {
                        break;
                    }
                    add_into(&mut map, (da + db, ea + eb), &ca.mul_ref(cb));
                }
            }
            map
        };
        QSeries {
            truncation: t,
            terms,
        }
    }

    /// Multiplies by `(1 - x^b q^a)`.
    pub fn mul_one_minus(&self, a: u32, b: u32) -> Self {
        self.sub(&self.shifted(a, b))
    }

    /// Multiplies by the series `1/(1 - x^b q^a)`, where `1 <= a` and `b <= a`.
    pub fn div_one_minus(&self, a: u32, b: u32) -> Self {
        assert!(
            a >= 1 && b <= a,
            "1/(1 - x^{b} q^{a}) needs 1 <= a and b <= a"
        );
        let t = self.truncation;
        let rows = t as usize + 1;
        let cols = if b == 0 {
            self.x_degree() as usize + 1
        } else {
            (self.x_degree() as usize + b as usize * (t / a) as usize).min(t as usize) + 1
        };
        let mut grid = vec![C::zero(); rows * cols];
        for (&(d, e), c) in &self.terms {
            grid[d as usize * cols + e as usize] = c.clone();
        }
        let (a, b) = (a as usize, b as usize);
        for d in a..rows {
            for e in b..cols {
                let prev = (d - a) * cols + e - b;
                if !grid[prev].is_zero() {
                    let v = grid[prev].clone();
                    grid[d * cols + e].add_assign_ref(&v);
                }
            }
        }
        QSeries {
            truncation: t,
            terms: dense_to_map(grid, cols),
        }
    }

    /// The multiplicative inverse, degree by degree in `q`.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let mut head = self.terms.range(..(1, 0));
        match (head.next(), head.next()) {
            (Some((&(0, 0), c)), None) if c.is_one_like() => {}
            _ => return Err(SeriesError::NotInvertible),
        }
        let t = self.truncation as usize;
        let x_free = self.is_x_free();
        // rows[d] holds the x-polynomial of q^d in the result, dense in x.
        let mut rows: Vec<Vec<C>> = Vec::with_capacity(t + 1);
        rows.push(vec![C::one()]);
        let by_degree: Vec<(usize, Vec<(usize, &C)>)> = {
            let mut grouped: Vec<(usize, Vec<(usize, &C)>)> = Vec::new();
            for (&(d, e), c) in self.terms.range((1, 0)..) {
                match grouped.last_mut() {
                    Some((gd, v)) if *gd == d as usize => v.push((e as usize, c)),
                    _ => grouped.push((d as usize, vec![(e as usize, c)])),
                }
            }
            grouped
        };
        for d in 1..=t {
            let width = if x_free { 1 } else { d + 1 };
            let mut row = vec![C::zero(); width];
            for (j, poly) in &by_degree {
                if *j > d {
                    break;
                }
                let prev = &rows[d - j];
                for &(e, c) in poly {
                    for (pe, pc) in prev.iter().enumerate() {
                        if !pc.is_zero() {
                            row[e + pe].sub_assign_ref(&c.mul_ref(pc));
                        }
                    }
                }
            }
            rows.push(row);
        }
        let mut terms = BTreeMap::new();
        for (d, row) in rows.into_iter().enumerate() {
            for (e, c) in row.into_iter().enumerate() {
                if !c.is_zero() {
                    terms.insert((d as u32, e as u32), c);
                }
            }
        }
        Ok(QSeries {
            truncation: self.truncation,
            terms,
        })
    }

    /// The lowest q-degree at which `self` and `other` differ, compared up to
    /// the smaller truncation order; `None` when they agree there.
    pub fn first_difference(&self, other: &Self) -> Option<u32> {
        self.sub(other).order()
    }
}

trait OneLike {
    fn is_one_like(&self) -> bool;
}

impl<C: Coeff> OneLike for C {
    fn is_one_like(&self) -> bool {
        *self == C::one()
    }
}

fn add_into<C: Coeff>(map: &mut BTreeMap<(u32, u32), C>, k: (u32, u32), c: &C) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        Entry::Vacant(v) => {
            v.insert(c.clone());
        }
        Entry::Occupied(mut o) => {
            o.get_mut().add_assign_ref(c);
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn dense_to_map<C: Coeff>(grid: Vec<C>, cols: usize) -> BTreeMap<(u32, u32), C> {
    grid.into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (((i / cols) as u32, (i % cols) as u32), c))
        .collect()
}

/// Schoolbook product with an `i128` accumulator, used when every coefficient
/// fits in an `i64` and no partial sum can overflow.
fn mul_words<C: Coeff>(
    lhs: &[(u32, u32, &C)],
    rhs: &[(u32, u32, &C)],
    t: u32,
    rows: usize,
    cols: usize,
) -> Option<QSeries<C>> {
    if rows.saturating_mul(cols) > DENSE_CELL_LIMIT {
        return None;
    }
    let words = |v: &[(u32, u32, &C)]| -> Option<(Vec<(u32, u32, i64)>, u128)> {
        let mut out = Vec::with_capacity(v.len());
        let mut max = 0u128;
        for &(d, e, c) in v {
            let w = c.as_word()?;
            max = max.max(w.unsigned_abs() as u128);
            out.push((d, e, w));
        }
        Some((out, max))
    };
    let (a, max_a) = words(lhs)?;
    let (b, max_b) = words(rhs)?;
    let count = a.len().min(b.len()) as u128;
    let bound = max_a.checked_mul(max_b)?.checked_mul(count)?;
    if bound >= (1u128 << 126) {
        return None;
    }
    let mut acc = vec![0i128; rows * cols];
    for &(da, ea, ca) in &a {
        let ca = ca as i128;
        for &(db, eb, cb) in &b {
            if da + db > t {
                break;
            }
            acc[(da + db) as usize * cols + (ea + eb) as usize] += ca * cb as i128;
        }
    }
    let terms = acc
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c != 0)
        .map(|(i, c)| (((i / cols) as u32, (i % cols) as u32), C::from_wide(c)))
        .collect();
    Some(QSeries::from_map(t, terms))
}

impl<'a, C: Coeff> Add<&'a QSeries<C>> for &'a QSeries<C> {
    type Output = QSeries<C>;
    fn add(self, rhs: &'a QSeries<C>) -> QSeries<C> {
        QSeries::add(self, rhs)
    }
}

impl<'a, C: Coeff> Sub<&'a QSeries<C>> for &'a QSeries<C> {
    type Output = QSeries<C>;
    fn sub(self, rhs: &'a QSeries<C>) -> QSeries<C> {
        QSeries::sub(self, rhs)
    }
}

impl<'a, C: Coeff> Mul<&'a QSeries<C>> for &'a QSeries<C> {
    type Output = QSeries<C>;
    fn mul(self, rhs: &'a QSeries<C>) -> QSeries<C> {
        QSeries::mul(self, rhs)
    }
}

impl<C: Coeff> Neg for &QSeries<C> {
    type Output = QSeries<C>;
    fn neg(self) -> QSeries<C> {
        QSeries::neg(self)
    }
}

impl<C: Coeff> fmt::Display for QSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            f.write_str("0")?;
        }
        for (i, (&(d, e), c)) in self.terms.iter().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            if mag != "1" || (d == 0 && e == 0) {
                factors.push(mag);
            }
            match e {
                0 => {}
                1 => factors.push("x".into()),
                _ => factors.push(format!("x^{e}")),
            }
            match d {
                0 => {}
                1 => factors.push("q".into()),
                _ => factors.push(format!("q^{d}")),
            }
            f.write_str(&factors.join("*"))?;
        }
        write!(f, " + O(q^{})", self.truncation as u64 + 1)
    }
}

impl<C: Coeff> fmt::Debug for QSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
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
    fn geometric_inverse_of_one_minus_q() {
        let geo = q(&[1, 1, 1, 1], 3);
        let one_minus = q(&[1, -1], 3);
        assert_eq!(one_minus.mul(&geo), S::one(3));
    }

    #[test]
    fn product_with_zero() {
        let s = q(&[3, 0, -2, 5], 6);
        assert!(s.mul(&S::zero(6)).is_zero());
    }

    #[test]
    fn one_minus_q_times_one_minus_q_squared() {
        let p = q(&[1, -1], 8).mul(&q(&[1, 0, -1], 8));
        assert_eq!(p, q(&[1, -1, -1, 1], 8));
    }

    #[test]
    fn monomials() {
        assert_eq!(S::monomial(Int::from(1), 0, 0, 5).unwrap(), S::one(5));
        let m = S::monomial(Int::from(-1), 6, 3, 10).unwrap();
        assert_eq!(m.terms().collect::<Vec<_>>(), vec![(6, 3, &Int::from(-1))]);
        assert!(S::monomial(Int::from(1), 11, 0, 10).unwrap().is_zero());
        assert_eq!(
            S::monomial(Int::from(1), -1, 0, 10),
            Err(SeriesError::NegativeExponent { q: -1, x: 0 })
        );
        assert!(S::monomial(Int::from(1), 1, 2, 10).is_err());
    }

    #[test]
    fn substitution_rules() {
        let xq = S::monomial(Int::from(1), 1, 1, 10).unwrap();
        assert_eq!(xq.subst_x(1), S::monomial(Int::from(1), 2, 1, 10).unwrap());
        let s = S::from_terms(
            10,
            [
                (0, 0, Int::from(1)),
                (1, 1, Int::from(1)),
                (2, 1, Int::from(1)),
            ],
        )
        .unwrap();
        assert_eq!(s.subst_x(0), s);
        let expected = S::from_terms(
            10,
            [
                (0, 0, Int::from(1)),
                (3, 1, Int::from(1)),
                (4, 1, Int::from(1)),
            ],
        )
        .unwrap();
        assert_eq!(s.subst_x(2), expected);
        // pushed past T
        assert_eq!(s.subst_x(9).num_terms(), 2);
        assert_eq!(s.subst_x(10).num_terms(), 1);
    }

    #[test]
    fn x_equals_one() {
        let s = S::from_terms(4, [(0, 0, Int::from(1)), (1, 1, Int::from(1))]).unwrap();
        assert_eq!(s.eval_x_one(), q(&[1, 1], 4));
        let plain = q(&[1, 2, 3], 4);
        assert_eq!(plain.eval_x_one(), plain);
    }

    #[test]
    fn inverse_checks_constant_term() {
        assert_eq!(S::one(4).inverse().unwrap(), S::one(4));
        assert_eq!(q(&[1, -1], 5).inverse().unwrap(), q(&[1; 6], 5));
        assert_eq!(q(&[2, 1], 5).inverse(), Err(SeriesError::NotInvertible));
        assert_eq!(S::zero(5).inverse(), Err(SeriesError::NotInvertible));
    }

    #[test]
    fn coeff_rejects_beyond_truncation() {
        let s = S::from_terms(4, [(0, 0, Int::from(1)), (1, 1, Int::from(1))]).unwrap();
        assert_eq!(s.coeff(1).unwrap(), vec![(1, Int::from(1))]);
        assert_eq!(s.coeff(0).unwrap(), vec![(0, Int::from(1))]);
        assert!(s.coeff(3).unwrap().is_empty());
        assert_eq!(
            s.coeff(5),
            Err(SeriesError::BeyondTruncation {
                degree: 5,
                truncation: 4
            })
        );
    }

    #[test]
    fn mixed_truncation_takes_minimum() {
        let a = q(&[1, 1, 1, 1, 1], 4);
        let b = q(&[1, 1, 1], 2);
        assert_eq!(a.add(&b).truncation(), 2);
        assert_eq!(a.mul(&b).truncation(), 2);
        assert_eq!(a.add(&b), q(&[2, 2, 2], 2));
    }

    #[test]
    fn div_one_minus_matches_inverse() {
        let s = S::from_terms(
            9,
            [
                (0, 0, Int::from(1)),
                (2, 1, Int::from(-3)),
                (3, 0, Int::from(2)),
            ],
        )
        .unwrap();
        let factor = S::one(9).mul_one_minus(2, 1);
        assert_eq!(s.div_one_minus(2, 1), s.mul(&factor.inverse().unwrap()));
        assert_eq!(
            s.div_one_minus(3, 0),
            s.mul(&S::one(9).mul_one_minus(3, 0).inverse().unwrap())
        );
    }

    #[test]
    fn word_overflow_falls_back_to_exact_path() {
        let big = Int::from(i64::MAX);
        let a = S::from_terms(3, [(0, 0, big.clone()), (1, 0, big.clone())]).unwrap();
        let sq = a.mul(&a);
        let expect = &big * &big;
        assert_eq!(sq.get(0, 0), expect);
        assert_eq!(sq.get(1, 0), &expect + &expect);
    }

    #[test]
    fn display_is_readable() {
        let s = S::from_terms(
            6,
            [
                (0, 0, Int::from(1)),
                (1, 1, Int::from(1)),
                (6, 3, Int::from(-1)),
            ],
        )
        .unwrap();
        assert_eq!(s.to_string(), "1 + x*q - x^3*q^6 + O(q^7)");
    }
}
