//! The named series families: the polynomials `F_N(i,j,k;x)`, their limits
//! `F(i,k;x)`, the `k = 0` closed forms, `f_N`, `b_N`, and the overpartition
//! generating function.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use qcore::{
    poch_finite, poch_infinite, qbinom, qbinom_coeffs, Coeff, QBinomSpec, QSeries, Series,
};

/// The integer parameters `(i, j, k, N)` of `F_N(i,j,k;x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilyParams {
    pub i: u32,
    pub j: u32,
    pub k: u32,
    pub n: i64,
}

impl FamilyParams {
    pub fn new(i: u32, j: u32, k: u32, n: i64) -> Self {
        FamilyParams { i, j, k, n }
    }

    pub fn modulus(&self) -> u32 {
        2 * self.k + 1
    }

    /// Index pairs `(m, n)` whose two brackets are both nonzero, with the
    /// q-exponent of the leading monomial.
    fn support(&self) -> Vec<(u32, u32, u64)> {
        let mut out = Vec::new();
        if self.n < 0 {
            return out;
        }
        let (big_n, j, i) = (self.n, self.j as i64, self.i as u64);
        let kk = self.modulus() as i64;
        let mut n = 0i64;
        while kk * n <= big_n {
            let rest = big_n - kk * n;
            let m_max = ((rest + j) / 2).min(rest);
            for m in 0..=m_max {
                let (m, nn) = (m as u64, n as u64);
                let kn = kk as u64 * nn;
                let e = kn * (kn + 1) / 2 + m * m + kk as u64 * m * nn + i * (m + nn);
                out.push((m as u32, n as u32, e));
            }
            n += 1;
        }
        out
    }

    fn brackets(&self, m: u32, n: u32) -> (QBinomSpec, QBinomSpec) {
        let (m, n) = (m as i64, n as i64);
        let kk = self.modulus() as i64;
        (
            QBinomSpec::new(self.n - kk * n - m + self.j as i64, m, 1),
            QBinomSpec::new(self.n - 2 * self.k as i64 * n - m, n, self.modulus()),
        )
    }

    /// Exact q-degree bound of `F_N(i,j,k;x)`.
    pub fn degree_bound(&self) -> u32 {
        self.support()
            .into_iter()
            .map(|(m, n, e)| {
                let (a, b) = self.brackets(m, n);
                e + a.degree() + b.degree()
            })
            .max()
            .unwrap_or(0) as u32
    }
}

/// `F_N(i,j,k;x)` truncated at `T`; the zero series for `N < 0`.
pub fn f_upper_n<C: Coeff>(p: FamilyParams, t: u32) -> QSeries<C> {
    let kk = p.modulus();
    let support = p.support();
    if support.is_empty() {
        return QSeries::zero(t);
    }
    let rows = (p.degree_bound().min(t) + 1) as usize;
    let cols = support
        .iter()
        .map(|&(m, n, _)| (m + kk * n) as usize)
        .max()
        .unwrap()
        + 1;
    let mut grid = vec![C::zero(); rows * cols];
    for (m, n, e) in support {
        if e >= rows as u64 {
            continue;
        }
        let e = e as usize;
        let rest = (rows - 1 - e) as u32;
        let (a, b) = p.brackets(m, n);
        let a = qbinom_coeffs::<C>(a, rest);
        let b = qbinom_coeffs::<C>(b, rest);
        let col = (m + kk * n) as usize;
        let negative = n % 2 == 1;
        for (da, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (db, cb) in b.iter().enumerate() {
                let d = e + da + db;
                if d >= rows {
                    break;
                }
                if cb.is_zero() {
                    continue;
                }
                let v = ca.mul_ref(cb);
                let cell = &mut grid[d * cols + col];
                if negative {
                    cell.sub_assign_ref(&v);
                } else {
                    cell.add_assign_ref(&v);
                }
            }
        }
    }
    QSeries::from_dense(t, cols, grid).expect("F_N terms satisfy x-degree <= q-degree")
}

/// `F_N(i,j,k;x)` at its full degree, so the result is the exact polynomial.
pub fn f_upper_exact<C: Coeff>(p: FamilyParams) -> QSeries<C> {
    f_upper_n(p, p.degree_bound())
}

/// Shared read-mostly memo of exact `F_N` polynomials.
#[derive(Default)]
pub struct FamilyCache {
    map: RwLock<HashMap<FamilyParams, Arc<Series>>>,
}

impl FamilyCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, p: FamilyParams) -> Arc<Series> {
        let p = if p.n < 0 {
            FamilyParams { n: -1, ..p }
        } else {
            p
        };
        if let Some(v) = self.map.read().unwrap().get(&p) {
            return v.clone();
        }
        let v = Arc::new(f_upper_exact::<qcore::Int>(p));
        self.map.write().unwrap().entry(p).or_insert(v).clone()
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Sum over `m, n >= 0` of `(-1)^n q^{e(m,n)} x^{m+Kn} w(m,n) / ((q;q)_m (q^K;q^K)_n)`,
/// where `w(m,n)` is a signed sum of extra powers `Σ c·q^s`.
fn double_sum<C: Coeff>(
    i: u32,
    k: u32,
    t: u32,
    x_tracked: bool,
    weight: &dyn Fn(u32, u32) -> Vec<(u32, i64)>,
) -> QSeries<C> {
    let kk = 2 * k + 1;
    let exp = |m: u64, n: u64| {
        let kn = kk as u64 * n;
        kn * (kn + 1) / 2 + m * m + kk as u64 * m * n + i as u64 * (m + n)
    };
    // 1/(q;q)_m for every m that can contribute
    let mut inv_m: Vec<QSeries<C>> = vec![QSeries::one(t)];
    while exp(inv_m.len() as u64, 0) <= t as u64 {
        let m = inv_m.len() as u32;
        let next = inv_m[m as usize - 1].div_one_minus(m, 0);
        inv_m.push(next);
    }
    let mut inv_n = QSeries::<C>::one(t);
    let mut total = QSeries::zero(t);
    let mut n = 0u32;
    while exp(0, n as u64) <= t as u64 {
        if n > 0 {
            inv_n = inv_n.div_one_minus(kk * n, 0);
        }
        let mut inner = QSeries::zero(t);
        for (m, inv) in inv_m.iter().enumerate() {
            let e = exp(m as u64, n as u64);
            if e > t as u64 {
                break;
            }
            let xd = if x_tracked { m as u32 + kk * n } else { 0 };
            for (s, c) in weight(m as u32, n) {
                let d = e + s as u64;
                if d > t as u64 {
                    continue;
                }
                let sign = if n % 2 == 1 { -c } else { c };
                inner = inner.add(&inv.shifted(d as u32, xd).scale(&C::from_i64(sign)));
            }
        }
        total = total.add(&inner.mul(&inv_n));
        n += 1;
    }
    total
}

/// The limit series `F(i,k;x)` truncated at `T`; with `x_tracked` off, `x = 1`.
pub fn f_infinite<C: Coeff>(i: u32, k: u32, t: u32, x_tracked: bool) -> QSeries<C> {
    double_sum(i, k, t, x_tracked, &|_, _| vec![(0, 1)])
}

/// `F(0,1;1)` with every summand multiplied by `q^{m+3n+1}`.
pub fn f_infinite_shifted<C: Coeff>(t: u32) -> QSeries<C> {
    double_sum(0, 1, t, false, &|m, n| vec![(m + 3 * n + 1, 1)])
}

/// `F(0,1;1)` with every summand multiplied by `1 - q^{m+3n+1}`.
pub fn f_infinite_damped<C: Coeff>(t: u32) -> QSeries<C> {
    double_sum(0, 1, t, false, &|m, n| vec![(0, 1), (m + 3 * n + 1, -1)])
}

/// Candidate closed forms for `F_N(i,j,0;x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedFormVariant {
    /// `Σ_{n<=min(j-1,N)} [j-1,n] x^n q^{n(N+i+j)}`
    Shifted,
    /// `Σ_{n<=min(j-1,N)} (-1)^n [j-1,n] x^n q^{n(N+i+1)}`
    Alternating,
    /// `Σ_{n<=min(j-1,N)} [j-1,n] x^n q^{n(N+i+1)}`
    Plain,
}

impl ClosedFormVariant {
    pub const ALL: [ClosedFormVariant; 3] = [Self::Shifted, Self::Alternating, Self::Plain];

    pub fn formula(&self) -> &'static str {
        match self {
            Self::Shifted => "sum_{n<=min(j-1,N)} [j-1,n] x^n q^{n(N+i+j)}",
            Self::Alternating => "sum_{n<=min(j-1,N)} (-1)^n [j-1,n] x^n q^{n(N+i+1)}",
            Self::Plain => "sum_{n<=min(j-1,N)} [j-1,n] x^n q^{n(N+i+1)}",
        }
    }
}

/// A closed form for `F_N(i,j,0;x)` (`j >= 1`, `N >= 0`).
pub fn f_k0_closed<C: Coeff>(
    i: u32,
    j: u32,
    n: i64,
    t: u32,
    variant: ClosedFormVariant,
) -> QSeries<C> {
    assert!(j >= 1, "closed form needs j >= 1");
    assert!(n >= 0, "closed form needs N >= 0");
    let mut acc = QSeries::zero(t);
    for m in 0..j.min(n as u32 + 1) {
        let step = match variant {
            ClosedFormVariant::Shifted => n as u64 + i as u64 + j as u64,
            ClosedFormVariant::Alternating | ClosedFormVariant::Plain => n as u64 + i as u64 + 1,
        };
        let d = m as u64 * step;
        if d > t as u64 {
            break;
        }
        let mut term =
            qbinom::<C>(QBinomSpec::new(j as i64 - 1, m as i64, 1), t).shifted(d as u32, m);
        if variant == ClosedFormVariant::Alternating && m % 2 == 1 {
            term = term.neg();
        }
        acc = acc.add(&term);
    }
    acc
}

/// How the product `(q^2,q^3)_j` in `f_N` is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PochReading {
    /// `(q^2;q^3)_j`
    Single,
    /// `(q^2;q)_j (q^3;q)_j`
    Pair,
}

impl PochReading {
    pub fn formula(&self) -> &'static str {
        match self {
            Self::Single => "(q^2;q^3)_j",
            Self::Pair => "(q^2;q)_j (q^3;q)_j",
        }
    }
}

/// `f_N = Σ_j q^{3j²-2j} [N,3j] (q^2,q^3)_j`.
pub fn f_small<C: Coeff>(n: i64, t: u32, reading: PochReading) -> QSeries<C> {
    let mut acc = QSeries::zero(t);
    if n < 0 {
        return acc;
    }
    let mut j = 0u32;
    while 3 * j as i64 <= n {
        let e = 3 * j as u64 * j as u64 - 2 * j as u64;
        if e > t as u64 {
            break;
        }
        let rest = t - e as u32;
        let poch = match reading {
            PochReading::Single => poch_finite::<C>(2, 3, j, rest, 0).unwrap(),
            PochReading::Pair => poch_finite::<C>(2, 1, j, rest, 0)
                .unwrap()
                .mul(&poch_finite::<C>(3, 1, j, rest, 0).unwrap()),
        };
        let term = qbinom::<C>(QBinomSpec::new(n, 3 * j as i64, 1), rest)
            .mul(&poch)
            .extend_polynomial(t);
        acc = acc.add(&term.shifted(e as u32, 0));
        j += 1;
    }
    acc
}

/// Exact q-degree of `f_N` under the single-product reading.
pub fn f_small_degree(n: i64) -> u32 {
    if n < 0 {
        return 0;
    }
    let mut best = 0u64;
    let mut j = 0u64;
    while 3 * j as i64 <= n {
        let poch: u64 = (0..j).map(|s| 2 + 3 * s).sum();
        let e = 3 * j * j - 2 * j + 3 * j * (n as u64 - 3 * j) + poch;
        best = best.max(e);
        j += 1;
    }
    best as u32
}

/// `b_N = F_{N-1}(0,1,1;1) + sign·q^{N-1} F_{N-2}(0,1,1;1)`.
pub fn b_seq<C: Coeff>(n: i64, t: u32, sign: i64) -> QSeries<C> {
    let f1 = f_upper_n::<C>(FamilyParams::new(0, 1, 1, n - 1), t).eval_x_one();
    if n < 2 {
        return f1;
    }
    let f2 = f_upper_n::<C>(FamilyParams::new(0, 1, 1, n - 2), t).eval_x_one();
    f1.add(&f2.shifted(n as u32 - 1, 0).scale(&C::from_i64(sign)))
}

/// `F(i,k;x) / (xq;q)_∞` with `x` counting parts.
pub fn overpartition_gf<C: Coeff>(i: u32, k: u32, t: u32) -> QSeries<C> {
    let num = f_infinite::<C>(i, k, t, true);
    if t == 0 {
        return num;
    }
    let den = poch_infinite::<C>(1, 1, t, 1).unwrap();
    num.mul(&den.inverse().expect("(xq;q)_inf has constant term 1"))
}
