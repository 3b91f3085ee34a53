//! Exact checks of linear q-recurrences with `x ↦ xq^p` rescaling.
//!
//! A [`RecurrenceSchema`] is a list of terms `coeff(N) · a_{N-s}(xq^p)`; it
//! holds at `N` when the sum of its terms is the zero polynomial. Member
//! sequences are exact polynomials, and the truncation order of every check
//! is chosen from their degrees, so a PASS is an identity of polynomials.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use qcore::{poch_finite, poch_finite_inverse, poch_infinite, Int, Series};

use crate::fnfamily::{
    f_infinite, f_small, f_small_degree, overpartition_gf, FamilyCache, FamilyParams, PochReading,
};
use crate::report::{Report, Resolution};

/// `c · q^{q_n·N + q_off} · x^x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub c: i64,
    pub q_n: i64,
    pub q_off: i64,
    pub x: u32,
}

impl Monomial {
    pub fn new(c: i64, q_n: i64, q_off: i64, x: u32) -> Self {
        Monomial { c, q_n, q_off, x }
    }

    pub fn q_exponent(&self, n: i64) -> i64 {
        self.q_n * n + self.q_off
    }
}

/// A polynomial in `q^N`, `q` and `x` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Coefficient(pub Vec<Monomial>);

impl Coefficient {
    pub fn constant(c: i64) -> Self {
        Coefficient(vec![Monomial::new(c, 0, 0, 0)])
    }

    pub fn mono(c: i64, q_n: i64, q_off: i64, x: u32) -> Self {
        Coefficient(vec![Monomial::new(c, q_n, q_off, x)])
    }

    pub fn plus(mut self, c: i64, q_n: i64, q_off: i64, x: u32) -> Self {
        self.0.push(Monomial::new(c, q_n, q_off, x));
        self
    }

    fn max_exponent(&self, n: i64) -> i64 {
        self.0.iter().map(|m| m.q_exponent(n)).max().unwrap_or(0)
    }

    fn eval(&self, n: i64, t: u32) -> Result<Series, String> {
        let mut out = Series::zero(t);
        for m in &self.0 {
            let d = m.q_exponent(n);
            if d < 0 {
                return Err(format!("coefficient exponent q^{d} is negative"));
            }
            if (m.x as i64) > d {
                return Err(format!("coefficient x^{} q^{d} has more x than q", m.x));
            }
            out = out.add(
                &Series::monomial(Int::from(m.c), d, m.x as i64, t).map_err(|e| e.to_string())?,
            );
        }
        Ok(out)
    }

    fn describe(&self) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|m| {
                let q = match (m.q_n, m.q_off) {
                    (0, 0) => String::new(),
                    (0, 1) => "q".into(),
                    (0, o) => format!("q^{o}"),
                    (1, 0) => "q^N".to_string(),
                    (a, 0) => format!("q^{a}N"),
                    (1, o) => format!("q^(N{o:+})"),
                    (a, o) => format!("q^({a}N{o:+})"),
                };
                let x = match m.x {
                    0 => String::new(),
                    1 => "x".into(),
                    e => format!("x^{e}"),
                };
                match (m.c, x.is_empty() && q.is_empty()) {
                    (c, true) => format!("{c:+}"),
                    (1, false) => format!("+{x}{q}"),
                    (-1, false) => format!("-{x}{q}"),
                    (c, false) => format!("{c:+}{x}{q}"),
                }
            })
            .collect();
        parts.join(" ")
    }
}

/// `coeff(N) · member_{N-shift}(x q^xsub)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecTerm {
    pub coeff: Coefficient,
    pub member: usize,
    pub shift: u32,
    pub xsub: u32,
}

impl RecTerm {
    pub fn new(coeff: Coefficient, member: usize, shift: u32, xsub: u32) -> Self {
        RecTerm {
            coeff,
            member,
            shift,
            xsub,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceSchema {
    pub name: String,
    pub terms: Vec<RecTerm>,
    pub range: (i64, i64),
}

impl RecurrenceSchema {
    pub fn new(name: impl Into<String>, terms: Vec<RecTerm>, range: (i64, i64)) -> Self {
        RecurrenceSchema {
            name: name.into(),
            terms,
            range,
        }
    }

    /// Merges terms acting on the same shifted member.
    pub fn normalized(&self) -> Self {
        let mut merged: BTreeMap<(usize, u32, u32), Coefficient> = BTreeMap::new();
        for t in &self.terms {
            merged
                .entry((t.member, t.shift, t.xsub))
                .or_default()
                .0
                .extend(t.coeff.0.iter().cloned());
        }
        let terms = merged
            .into_iter()
            .map(|((member, shift, xsub), coeff)| RecTerm {
                coeff,
                member,
                shift,
                xsub,
            })
            .collect();
        RecurrenceSchema {
            name: self.name.clone(),
            terms,
            range: self.range,
        }
    }

    /// The schema with one monomial's q-offset moved by `delta`.
    pub fn perturbed(&self, term: usize, mono: usize, delta: i64) -> Self {
        let mut s = self.clone();
        s.terms[term].coeff.0[mono].q_off += delta;
        s.name = format!("{} (perturbed)", self.name);
        s
    }

    pub fn with_offset(&self, term: usize, mono: usize, offset: i64) -> Self {
        let mut s = self.clone();
        s.terms[term].coeff.0[mono].q_off = offset;
        s
    }

    pub fn with_sign(&self, term: usize, mono: usize, sign: i64) -> Self {
        let mut s = self.clone();
        let c = &mut s.terms[term].coeff.0[mono].c;
        *c = c.abs() * sign.signum();
        s
    }

    pub fn with_range(&self, lo: i64, hi: i64) -> Self {
        RecurrenceSchema {
            range: (lo, hi),
            ..self.clone()
        }
    }

    pub fn describe(&self) -> String {
        self.terms
            .iter()
            .map(|t| {
                let sub = if t.xsub == 0 {
                    String::new()
                } else {
                    format!("(xq^{})", t.xsub)
                };
                format!(
                    "[{}]·a{}_(N-{}){}",
                    t.coeff.describe(),
                    t.member,
                    t.shift,
                    sub
                )
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A sequence of exact polynomials indexed by an integer.
pub trait Sequence: Send + Sync {
    fn label(&self) -> String;
    fn exact(&self, n: i64) -> Arc<Series>;
}

/// `F_N(i,j,k;x)`, or its value at `x = 1`.
pub struct FSeq {
    pub i: u32,
    pub j: u32,
    pub k: u32,
    pub x_one: bool,
    pub cache: Arc<FamilyCache>,
}

impl FSeq {
    pub fn new(i: u32, j: u32, k: u32, cache: Arc<FamilyCache>) -> Self {
        FSeq {
            i,
            j,
            k,
            x_one: false,
            cache,
        }
    }

    pub fn at_x_one(i: u32, j: u32, k: u32, cache: Arc<FamilyCache>) -> Self {
        FSeq {
            i,
            j,
            k,
            x_one: true,
            cache,
        }
    }
}

impl Sequence for FSeq {
    fn label(&self) -> String {
        let x = if self.x_one { "1" } else { "x" };
        format!("F_N({},{},{};{x})", self.i, self.j, self.k)
    }

    fn exact(&self, n: i64) -> Arc<Series> {
        let v = self.cache.get(FamilyParams::new(self.i, self.j, self.k, n));
        if self.x_one {
            Arc::new(v.eval_x_one())
        } else {
            v
        }
    }
}

/// `f_N` under a given product reading.
pub struct FSmallSeq {
    pub reading: PochReading,
}

impl Sequence for FSmallSeq {
    fn label(&self) -> String {
        format!("f_N with {}", self.reading.formula())
    }

    fn exact(&self, n: i64) -> Arc<Series> {
        let bound = match self.reading {
            PochReading::Single => f_small_degree(n),
            PochReading::Pair => f_small_degree(n) + (n.max(0) as u32).pow(2),
        };
        Arc::new(f_small::<Int>(n, bound, self.reading))
    }
}

/// `b_N = F_{N-1}(0,1,1;1) + sign·q^{N-1} F_{N-2}(0,1,1;1)`.
pub struct BSeq {
    pub sign: i64,
    pub cache: Arc<FamilyCache>,
}

impl Sequence for BSeq {
    fn label(&self) -> String {
        format!("b_N with sign {:+}", self.sign)
    }

    fn exact(&self, n: i64) -> Arc<Series> {
        let f1 = self
            .cache
            .get(FamilyParams::new(0, 1, 1, n - 1))
            .eval_x_one();
        let f2 = self
            .cache
            .get(FamilyParams::new(0, 1, 1, n - 2))
            .eval_x_one();
        if f2.is_zero() || n < 2 {
            return Arc::new(f1);
        }
        let t = f1.truncation().max(f2.truncation() + n as u32 - 1);
        let v = f1.extend_polynomial(t).add(
            &f2.extend_polynomial(t)
                .shifted(n as u32 - 1, 0)
                .scale(&Int::from(self.sign)),
        );
        Arc::new(v)
    }
}

/// `S(N) = F_N - (1 + xq^N) F_{N-1} + x^2 q^{2N-1} F_{N-2}` for `F = F(0,1,1)`.
pub struct TelescopeSeq {
    pub cache: Arc<FamilyCache>,
}

impl Sequence for TelescopeSeq {
    fn label(&self) -> String {
        "S(N)".into()
    }

    fn exact(&self, n: i64) -> Arc<Series> {
        let f = FSeq::new(0, 1, 1, self.cache.clone());
        let schema = fixed_recurrence().with_range(n, n);
        Arc::new(residual(&schema, &[&f], n).unwrap_or_else(|_| Series::zero(0)))
    }
}

/// The residual `Σ terms` at `n`, computed exactly.
pub fn residual(
    schema: &RecurrenceSchema,
    members: &[&dyn Sequence],
    n: i64,
) -> Result<Series, String> {
    let mut parts = Vec::new();
    let mut t = 0u32;
    for term in &schema.terms {
        let m = members[term.member].exact(n - term.shift as i64);
        if m.is_zero() {
            continue;
        }
        let ce = term.coeff.max_exponent(n).max(0) as u64;
        let deg = m.q_degree().unwrap() as u64 + term.xsub as u64 * m.x_degree() as u64 + ce;
        t = t.max(u32::try_from(deg).map_err(|_| "degree overflow".to_string())?);
        parts.push((term, m));
    }
    let mut acc = Series::zero(t);
    for (term, m) in parts {
        let c = term.coeff.eval(n, t)?;
        let v = m.extend_polynomial(t).subst_x(term.xsub);
        acc = acc.add(&c.mul(&v));
    }
    Ok(acc)
}

/// Checks the schema at every `N` in its range.
pub fn check(schema: &RecurrenceSchema, members: &[&dyn Sequence]) -> Report {
    let schema = schema.normalized();
    let (lo, hi) = schema.range;
    let mut report = Report::new(schema.name.clone(), [lo, hi]);
    let results: Vec<(i64, Result<Series, String>)> = (lo..=hi)
        .into_par_iter()
        .map(|n| (n, residual(&schema, members, n)))
        .collect();
    for (n, r) in results {
        match r {
            Ok(res) if res.is_zero() => {}
            Ok(res) => report.fail(n, Some(&res), None),
            Err(e) => report.fail(n, None, Some(e)),
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq)]
pub enum Fit {
    Unique(i64),
    None,
    Multiple(Vec<i64>),
}

impl Fit {
    pub fn unique(&self) -> Option<i64> {
        match self {
            Fit::Unique(v) => Some(*v),
            _ => None,
        }
    }
}

/// Finds the offsets of one monomial that make the schema pass.
pub fn fit_exponent(
    schema: &RecurrenceSchema,
    term: usize,
    mono: usize,
    candidates: std::ops::RangeInclusive<i64>,
    members: &[&dyn Sequence],
) -> Fit {
    let passing: Vec<i64> = candidates
        .filter(|&d| check(&schema.with_offset(term, mono, d), members).passed())
        .collect();
    classify(passing)
}

/// Finds the signs of one monomial that make the schema pass.
pub fn fit_sign(
    schema: &RecurrenceSchema,
    term: usize,
    mono: usize,
    members: &[&dyn Sequence],
) -> Fit {
    let passing: Vec<i64> = [1, -1]
        .into_iter()
        .filter(|&s| check(&schema.with_sign(term, mono, s), members).passed())
        .collect();
    classify(passing)
}

fn classify(passing: Vec<i64>) -> Fit {
    match passing.len() {
        0 => Fit::None,
        1 => Fit::Unique(passing[0]),
        _ => Fit::Multiple(passing),
    }
}

/// `F_N = F_{N-1} + x q^{N+off} F_{N-2} - x^K q^{K(N-k)+i} F_{N-K}` with `K = 2k+1`.
pub fn general_recurrence(i: u32, j: u32, k: u32, middle_offset: i64) -> RecurrenceSchema {
    let kk = 2 * k as i64 + 1;
    RecurrenceSchema::new(
        format!("general recurrence F_N({i},{j},{k};x)"),
        vec![
            RecTerm::new(Coefficient::constant(1), 0, 0, 0),
            RecTerm::new(Coefficient::constant(-1), 0, 1, 0),
            RecTerm::new(Coefficient::mono(-1, 1, middle_offset, 1), 0, 2, 0),
            RecTerm::new(
                Coefficient::mono(1, kk, -kk * k as i64 + i as i64, kk as u32),
                0,
                kk as u32,
                0,
            ),
        ],
        (j as i64 + 1, 40),
    )
}

/// Middle-term offsets `(j+k-1, i+j-1)`; only the second one holds.
pub fn general_middle_offsets(i: u32, j: u32, k: u32) -> (i64, i64) {
    (j as i64 + k as i64 - 1, i as i64 + j as i64 - 1)
}

/// `F_N = (1 + xq^N) F_{N-1} - x^2 q^{2N-1} F_{N-2}` for `F = F(0,1,1)`.
pub fn fixed_recurrence() -> RecurrenceSchema {
    RecurrenceSchema::new(
        "three-term recurrence F_N(0,1,1;x)",
        vec![
            RecTerm::new(Coefficient::constant(1), 0, 0, 0),
            RecTerm::new(Coefficient::constant(-1).plus(-1, 1, 0, 1), 0, 1, 0),
            RecTerm::new(Coefficient::mono(1, 2, -1, 2), 0, 2, 0),
        ],
        (1, 40),
    )
}

/// `F_N(i,j) = F_N(i,j-1) + x q^{N+off} F_{N-1}(i,j-1)`; members `[F(i,j), F(i,j-1)]`.
pub fn j_shift_recurrence(i: u32, j: u32, k: u32, offset: i64) -> RecurrenceSchema {
    RecurrenceSchema::new(
        format!("j-shift recurrence F_N({i},{j},{k};x)"),
        vec![
            RecTerm::new(Coefficient::constant(1), 0, 0, 0),
            RecTerm::new(Coefficient::constant(-1), 1, 0, 0),
            RecTerm::new(Coefficient::mono(-1, 1, offset, 1), 1, 1, 0),
        ],
        (0, 40),
    )
}

/// `F_N(x) - F_{N-1}(xq) - x q^{off} F_{N-2}(xq^2) + x^K q^{C(K+1,2)+i} F_{N-K}(xq^K)` at `j = 0`.
pub fn top_row_recurrence(i: u32, k: u32, middle_offset: i64) -> RecurrenceSchema {
    let kk = 2 * k + 1;
    let top = (kk as i64 + 1) * kk as i64 / 2 + i as i64;
    RecurrenceSchema::new(
        format!("top-row recurrence F_N({i},0,{k};x)"),
        vec![
            RecTerm::new(Coefficient::constant(1), 0, 0, 0),
            RecTerm::new(Coefficient::constant(-1), 0, 1, 1),
            RecTerm::new(Coefficient::mono(-1, 0, middle_offset, 1), 0, 2, 2),
            RecTerm::new(Coefficient::mono(1, 0, top, kk), 0, kk, kk),
        ],
        (1, 40),
    )
}

/// `F_N(x) = (1 + xq) F_{N-1}(xq) + sign·x^2 q^3 F_{N-2}(xq^2)` for `F = F(0,1,1)`.
pub fn tridiagonal_recurrence(sign: i64) -> RecurrenceSchema {
    RecurrenceSchema::new(
        "rescaled recurrence F_N(0,1,1;x)",
        vec![
            RecTerm::new(Coefficient::constant(1), 0, 0, 0),
            RecTerm::new(Coefficient::constant(-1).plus(-1, 0, 1, 1), 0, 1, 1),
            RecTerm::new(Coefficient::mono(-sign, 0, 3, 2), 0, 2, 2),
        ],
        (1, 40),
    )
}

/// `S(N) + x q^N S(N-1) = 0`.
pub fn telescoping_schema() -> RecurrenceSchema {
    RecurrenceSchema::new(
        "telescoping S(N) + xq^N S(N-1)",
        vec![
            RecTerm::new(Coefficient::constant(1), 0, 0, 0),
            RecTerm::new(Coefficient::mono(1, 1, 0, 1), 0, 1, 0),
        ],
        (2, 40),
    )
}

/// `(1-q^{N-2}) a_N - (1-q^{2N-3}) a_{N-1} + q^{2N-4}(1-q^{N-1}) a_{N-2} = 0`.
pub fn second_order_schema() -> RecurrenceSchema {
    RecurrenceSchema::new(
        "second-order recurrence of f_N",
        vec![
            RecTerm::new(Coefficient::constant(1).plus(-1, 1, -2, 0), 0, 0, 0),
            RecTerm::new(Coefficient::constant(-1).plus(1, 2, -3, 0), 0, 1, 0),
            RecTerm::new(Coefficient::mono(1, 2, -4, 0).plus(-1, 3, -5, 0), 0, 2, 0),
        ],
        (2, 40),
    )
}

/// `f_N = F_{N-1}(0,1,1;1) + sign·q^{N-1} F_{N-2}(0,1,1;1)`; members `[f, F(0,1,1;1)]`.
pub fn fsmall_identity_schema(sign: i64) -> RecurrenceSchema {
    RecurrenceSchema::new(
        "f_N against F_{N-1}(0,1,1;1)",
        vec![
            RecTerm::new(Coefficient::constant(1), 0, 0, 0),
            RecTerm::new(Coefficient::constant(-1), 1, 1, 0),
            RecTerm::new(Coefficient::mono(-sign, 1, -1, 0), 1, 2, 0),
        ],
        (1, 41),
    )
}

/// Checks `f(x) = f(xq)/(1-xq) + xq^{i+1+δ}/((1-xq)(1-xq^2)) f(xq^2) - x^K q^{C(K+1,2)+i}/(xq;q)_K f(xq^K)`
/// for `f = F(i,k;x)/(xq;q)_∞`, with `δ` a perturbation of the middle exponent.
pub fn check_functional_equation(i: u32, k: u32, t: u32, delta: u32) -> Report {
    let name = if delta == 0 {
        format!("functional equation ({i},{k})")
    } else {
        format!("functional equation ({i},{k}) (perturbed)")
    };
    let mut report = Report::new(name, [0, t as i64]);
    let kk = 2 * k + 1;
    let f = overpartition_gf::<Int>(i, k, t);
    let first = f.subst_x(1).div_one_minus(1, 1);
    let middle = Series::monomial(Int::from(1), (i + 1 + delta) as i64, 1, t)
        .unwrap()
        .mul(&f.subst_x(2))
        .div_one_minus(1, 1)
        .div_one_minus(2, 1);
    let top = (kk + 1) * kk / 2 + i;
    let last = Series::monomial(Int::from(1), top as i64, kk as i64, t)
        .unwrap()
        .mul(&f.subst_x(kk))
        .mul(&poch_finite_inverse::<Int>(1, 1, kk, t, 1).unwrap());
    let rhs = first.add(&middle).sub(&last);
    let res = f.sub(&rhs);
    if !res.is_zero() {
        report.fail(t as i64, Some(&res), Some("sides differ".into()));
    }
    if f.get(0, 0) != Int::from(1) || rhs.get(0, 0) != Int::from(1) {
        report.fail(0, None, Some("constant term is not 1".into()));
    }
    report
}

/// `Σ_j q^{3j²-2j} P_j / (q;q)_{3j}` with `P_j = (q^2;q^3)_j`, or `(q^2;q^3)_∞` when `infinite`.
pub fn qgauss_lhs(t: u32, infinite: bool) -> Series {
    let mut acc = Series::zero(t);
    let mut j = 0u32;
    let inf = poch_infinite::<Int>(2, 3, t, 0).unwrap();
    while 3 * j * j - 2 * j <= t {
        let e = 3 * j * j - 2 * j;
        let p = if infinite {
            inf.clone()
        } else {
            poch_finite::<Int>(2, 3, j, t, 0).unwrap()
        };
        let term = p
            .mul(&poch_finite_inverse::<Int>(1, 1, 3 * j, t, 0).unwrap())
            .shifted(e, 0);
        acc = acc.add(&term);
        j += 1;
    }
    acc
}

/// `Σ_j q^{3j²-2j} (q^2;q^3)_j/(q;q)_{3j} = 1/(q;q^3)_∞`, under both product readings.
pub fn check_qgauss_limit(t: u32) -> Report {
    let rhs = poch_infinite::<Int>(1, 3, t, 0).unwrap().inverse().unwrap();
    let finite = qgauss_lhs(t, false).sub(&rhs);
    let infinite = qgauss_lhs(t, true).sub(&rhs);
    let mut report = Report::new("q-Gauss limit", [0, t as i64]);
    if !finite.is_zero() {
        report.fail(
            t as i64,
            Some(&finite),
            Some("(q^2;q^3)_j reading fails".into()),
        );
    }
    report.note(format!(
        "(q^2;q^3)_inf reading: {}",
        if infinite.is_zero() {
            "agrees".to_string()
        } else {
            format!("differs from q^{}", infinite.order().unwrap())
        }
    ));
    report.with_resolution(Resolution {
        item: "q-Gauss limit product".into(),
        stated: "(q^2;q^3)_inf inside the sum".into(),
        resolved: "(q^2;q^3)_j inside the sum".into(),
        evidence: Some(format!("checked to q^{t}")),
    })
}

/// `F(0,1;1) = 1/(q;q^3)_∞` to order `T`.
pub fn check_mod3_identity(t: u32) -> Report {
    let lhs = f_infinite::<Int>(0, 1, t, false);
    let rhs = poch_infinite::<Int>(1, 3, t, 0).unwrap().inverse().unwrap();
    let mut report = Report::new("F(0,1;1) = 1/(q;q^3)_inf", [0, t as i64]);
    let res = lhs.sub(&rhs);
    if !res.is_zero() {
        report.fail(t as i64, Some(&res), None);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_schema_passes() {
        let s = RecurrenceSchema::new("empty", vec![], (0, 5));
        assert!(check(&s, &[]).passed());
    }

    #[test]
    fn shift_collision_merges() {
        let s = general_recurrence(0, 0, 0, -1).normalized();
        assert_eq!(s.terms.len(), 3);
        assert_eq!(s.terms[1].coeff.0.len(), 2);
    }

    #[test]
    fn describe_is_readable() {
        let d = fixed_recurrence().describe();
        assert!(d.contains("[-1 -xq^N]"), "{d}");
    }
}
