//! Banded upper-Hessenberg matrices whose determinants are `F_N`.

use serde_json::{json, Value};

use qcore::{Int, Series};

use crate::recurrences::{Coefficient, RecurrenceSchema};

/// Entries on the diagonal `col - row = offset`, as a function of the row.
///
/// Each monomial `c·q^{q_n·r + q_off}·x^x` is evaluated at the 1-based row `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalRule {
    pub offset: i64,
    pub entry: Coefficient,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BandMatrixSpec {
    pub size: usize,
    pub rules: Vec<DiagonalRule>,
    /// Explicit entries at 1-based `(row, col)`, added to any rule entries.
    pub extra: Vec<((usize, usize), Series)>,
    /// Rows are evaluated at `r + row_offset`; nonzero for trailing blocks.
    pub row_offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecError {
    BelowSubdiagonal {
        row: usize,
        col: usize,
    },
    SubdiagonalNotMinusOne {
        row: usize,
    },
    DiagonalConstantNotOne {
        row: usize,
    },
    InvalidEntry {
        row: usize,
        col: usize,
        reason: String,
    },
}

impl std::fmt::Display for SpecError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpecError::BelowSubdiagonal { row, col } => {
                write!(f, "nonzero entry below the subdiagonal at ({row},{col})")
            }
            SpecError::SubdiagonalNotMinusOne { row } => {
                write!(f, "subdiagonal entry in row {row} is not -1")
            }
            SpecError::DiagonalConstantNotOne { row } => {
                write!(f, "diagonal entry in row {row} does not start with 1")
            }
            SpecError::InvalidEntry { row, col, reason } => {
                write!(f, "entry ({row},{col}): {reason}")
            }
        }
    }
}

impl std::error::Error for SpecError {}

impl BandMatrixSpec {
    pub fn new(size: usize, rules: Vec<DiagonalRule>) -> Self {
        BandMatrixSpec {
            size,
            rules,
            extra: Vec::new(),
            row_offset: 0,
        }
    }

    /// `size x size` identity with `-1` on the subdiagonal.
    pub fn unit(size: usize) -> Self {
        Self::new(
            size,
            vec![
                DiagonalRule {
                    offset: 0,
                    entry: Coefficient::constant(1),
                },
                DiagonalRule {
                    offset: -1,
                    entry: Coefficient::constant(-1),
                },
            ],
        )
    }

    /// The trailing block on rows and columns `start+1..=size`.
    pub fn trailing(&self, start: usize) -> Self {
        let extra = self
            .extra
            .iter()
            .filter(|((r, c), _)| *r > start && *c > start)
            .map(|((r, c), s)| ((r - start, c - start), s.clone()))
            .collect();
        BandMatrixSpec {
            size: self.size - start,
            rules: self.rules.clone(),
            extra,
            row_offset: self.row_offset + start,
        }
    }

    fn max_offset(&self) -> i64 {
        let from_rules = self.rules.iter().map(|r| r.offset).max().unwrap_or(0);
        let from_extra = self
            .extra
            .iter()
            .map(|((r, c), _)| *c as i64 - *r as i64)
            .max()
            .unwrap_or(0);
        from_rules.max(from_extra)
    }

    /// Entry at 1-based `(row, col)`, truncated at `T`.
    pub fn entry(&self, row: usize, col: usize, t: u32) -> Result<Series, SpecError> {
        let mut out = Series::zero(t);
        let off = col as i64 - row as i64;
        for rule in self.rules.iter().filter(|r| r.offset == off) {
            let r = (row + self.row_offset) as i64;
            for m in &rule.entry.0 {
                let d = m.q_exponent(r);
                let v = Series::monomial(Int::from(m.c), d, m.x as i64, t).map_err(|e| {
                    SpecError::InvalidEntry {
                        row,
                        col,
                        reason: e.to_string(),
                    }
                })?;
                out = out.add(&v);
            }
        }
        for ((r, c), s) in &self.extra {
            if (*r, *c) == (row, col) {
                out = out.add(s);
            }
        }
        Ok(out)
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        let t = 4;
        for row in 1..=self.size {
            for col in 1..=self.size {
                let e = self.entry(row, col, t)?;
                if col + 1 < row && !e.is_zero() {
                    return Err(SpecError::BelowSubdiagonal { row, col });
                }
                if col + 1 == row && e != Series::constant(Int::from(-1), t) {
                    return Err(SpecError::SubdiagonalNotMinusOne { row });
                }
                if col == row && e.get(0, 0) != Int::from(1) {
                    return Err(SpecError::DiagonalConstantNotOne { row });
                }
            }
        }
        Ok(())
    }

    /// Nonzero entries as `{"row", "col", "entry"}` objects.
    pub fn to_json(&self, t: u32) -> Result<Value, SpecError> {
        let mut out = Vec::new();
        for row in 1..=self.size {
            for col in 1..=self.size {
                let e = self.entry(row, col, t)?;
                if !e.is_zero() {
                    out.push(json!({"row": row, "col": col, "entry": qcore::json::to_json(&e)}));
                }
            }
        }
        Ok(Value::Array(out))
    }
}

/// How the superdiagonals of the general matrix are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneralReading {
    /// First superdiagonal `x q^{r + c1}`.
    pub c1: i64,
    /// Second superdiagonal `x^2 q^{2r + c2}`, if present.
    pub c2: Option<i64>,
}

impl GeneralReading {
    pub fn two_superdiagonals() -> Self {
        GeneralReading { c1: 0, c2: Some(1) }
    }

    pub fn resolved(i: u32) -> Self {
        GeneralReading {
            c1: i as i64,
            c2: None,
        }
    }

    pub fn describe(&self, k: u32) -> String {
        let kk = 2 * k + 1;
        let second = match self.c2 {
            Some(c) => format!(", x^2 q^(2r{c:+}) on offset 2"),
            None => String::new(),
        };
        format!(
            "x q^(r{:+}) on offset 1{second}, -x^{kk} q^({kk}(r+{k})+i) on offset {}",
            self.c1,
            kk - 1
        )
    }
}

/// The general matrix under a given reading.
pub fn build_general_with(n: usize, i: u32, k: u32, reading: GeneralReading) -> BandMatrixSpec {
    let kk = 2 * k as i64 + 1;
    let mut rules = vec![
        DiagonalRule {
            offset: 0,
            entry: Coefficient::constant(1),
        },
        DiagonalRule {
            offset: -1,
            entry: Coefficient::constant(-1),
        },
        DiagonalRule {
            offset: 1,
            entry: Coefficient::mono(1, 1, reading.c1, 1),
        },
        DiagonalRule {
            offset: kk - 1,
            entry: Coefficient::mono(-1, kk, kk * k as i64 + i as i64, kk as u32),
        },
    ];
    if let Some(c2) = reading.c2 {
        rules.push(DiagonalRule {
            offset: 2,
            entry: Coefficient::mono(1, 2, c2, 2),
        });
    }
    BandMatrixSpec::new(n, rules)
}

/// The general matrix whose determinant is `F_N(i,0,k;x)`.
pub fn build_general(n: usize, i: u32, k: u32) -> BandMatrixSpec {
    build_general_with(n, i, k, GeneralReading::resolved(i))
}

/// Tridiagonal matrix with diagonal `1 + xq^r`, superdiagonal `-x^2 q^{2r+1}`.
pub fn build_tridiagonal(n: usize) -> BandMatrixSpec {
    BandMatrixSpec::new(
        n,
        vec![
            DiagonalRule {
                offset: 0,
                entry: Coefficient::constant(1).plus(1, 1, 0, 1),
            },
            DiagonalRule {
                offset: -1,
                entry: Coefficient::constant(-1),
            },
            DiagonalRule {
                offset: 1,
                entry: Coefficient::mono(-1, 2, 1, 2),
            },
        ],
    )
}

/// Determinant truncated at `T`, by the last-column recurrence
/// `D_n = Σ_r (-1)^{n-r} h_{r,n} ∏_{t=r}^{n-1} h_{t+1,t} D_{r-1}`.
pub fn det(spec: &BandMatrixSpec, t: u32) -> Result<Series, SpecError> {
    let band = spec.max_offset().max(0) as usize;
    let mut d: Vec<Series> = vec![Series::one(t)];
    for n in 1..=spec.size {
        let mut acc = Series::zero(t);
        let lo = n.saturating_sub(band).max(1);
        let mut sub_product = Series::one(t);
        for r in (lo..=n).rev() {
            if r < n {
                let s = spec.entry(r + 1, r, t)?;
                sub_product = sub_product.mul(&s).neg();
            }
            let h = spec.entry(r, n, t)?;
            if h.is_zero() {
                continue;
            }
            acc = acc.add(&h.mul(&sub_product).mul(&d[r - 1]));
        }
        d.push(acc);
    }
    Ok(d.pop().unwrap())
}

/// Upper bound on the q-degree of the determinant.
pub fn degree_bound(spec: &BandMatrixSpec) -> Result<u32, SpecError> {
    let probe = 1 << 20;
    let mut deg = vec![0u64];
    let band = spec.max_offset().max(0) as usize;
    for n in 1..=spec.size {
        let mut best = 0u64;
        let lo = n.saturating_sub(band).max(1);
        let mut sub = 0u64;
        for r in (lo..=n).rev() {
            if r < n {
                sub += spec.entry(r + 1, r, probe)?.q_degree().unwrap_or(0) as u64;
            }
            if let Some(h) = spec.entry(r, n, probe)?.q_degree() {
                best = best.max(h as u64 + sub + deg[r - 1]);
            }
        }
        deg.push(best);
    }
    Ok(*deg.last().unwrap() as u32)
}

/// The exact determinant polynomial.
pub fn det_exact(spec: &BandMatrixSpec) -> Result<Series, SpecError> {
    det(spec, degree_bound(spec)?)
}

/// Determinant by summing over all permutations; for small sizes only.
pub fn det_brute_force(spec: &BandMatrixSpec, t: u32) -> Result<Series, SpecError> {
    let n = spec.size;
    assert!(n <= 8, "permutation expansion is limited to n <= 8");
    let mut entries = vec![vec![Series::zero(t); n]; n];
    for (r, row) in entries.iter_mut().enumerate() {
        for (c, e) in row.iter_mut().enumerate() {
            *e = spec.entry(r + 1, c + 1, t)?;
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Series::zero(t);
    permute(&mut perm, 0, &mut |p| {
        let mut prod = Series::one(t);
        for (r, &c) in p.iter().enumerate() {
            prod = prod.mul(&entries[r][c]);
            if prod.is_zero() {
                return;
            }
        }
        let inversions = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| p[a] > p[b])
            .count();
        total = if inversions % 2 == 0 {
            total.add(&prod)
        } else {
            total.sub(&prod)
        };
    });
    Ok(total)
}

fn permute(p: &mut Vec<usize>, start: usize, f: &mut dyn FnMut(&[usize])) {
    if start == p.len() {
        f(p);
        return;
    }
    for i in start..p.len() {
        p.swap(start, i);
        permute(p, start + 1, f);
        p.swap(start, i);
    }
}

/// Last-column expansion `D_n = Σ_r h_{r,n} D_{r-1}` as `(shift n-r+1, h_{r,n})` pairs.
///
/// Requires the `-1` subdiagonal.
pub fn last_column(spec: &BandMatrixSpec, t: u32) -> Result<Vec<(u32, Series)>, SpecError> {
    let n = spec.size;
    let mut out = Vec::new();
    for r in 1..=n {
        let h = spec.entry(r, n, t)?;
        if !h.is_zero() {
            out.push(((n - r + 1) as u32, h));
        }
    }
    Ok(out)
}

/// Top-row expansion `D = Σ_c h_{1,c} · det(trailing block after c)` as
/// `(c, h_{1,c}, minor)` triples. Requires the `-1` subdiagonal.
pub fn top_row(spec: &BandMatrixSpec, t: u32) -> Result<Vec<(u32, Series, Series)>, SpecError> {
    let mut out = Vec::new();
    for c in 1..=spec.size {
        let h = spec.entry(1, c, t)?;
        if !h.is_zero() {
            out.push((c as u32, h, det(&spec.trailing(c), t)?));
        }
    }
    Ok(out)
}

/// Whether an expansion's coefficients match a schema's (single-member) terms
/// at `N = n`: the schema must read `a_N - Σ coeff_s a_{N-s}(xq^{p_s})` with
/// `coeff_s` equal to the expansion coefficient for shift `s`.
pub fn matches_schema(
    expansion: &[(u32, Series)],
    schema: &RecurrenceSchema,
    n: i64,
    xsub_equals_shift: bool,
) -> bool {
    let schema = schema.normalized();
    let t = expansion
        .iter()
        .map(|(_, s)| s.truncation())
        .max()
        .unwrap_or(0);
    let mut expected: Vec<(u32, Series)> = Vec::new();
    for term in &schema.terms {
        if term.shift == 0 {
            continue;
        }
        if term.shift as i64 > n
            || (xsub_equals_shift && term.xsub != term.shift)
            || (!xsub_equals_shift && term.xsub != 0)
        {
            continue;
        }
        let mut c = Series::zero(t);
        for m in &term.coeff.0 {
            match Series::monomial(Int::from(-m.c), m.q_exponent(n), m.x as i64, t) {
                Ok(v) => c = c.add(&v),
                Err(_) => return false,
            }
        }
        if !c.is_zero() {
            expected.push((term.shift, c));
        }
    }
    expected.sort_by_key(|(s, _)| *s);
    let mut got: Vec<(u32, Series)> = expansion.to_vec();
    got.sort_by_key(|(s, _)| *s);
    got == expected
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: u32, terms: &[(u32, u32, i64)]) -> Series {
        Series::from_terms(t, terms.iter().map(|&(d, e, c)| (d, e, Int::from(c)))).unwrap()
    }

    #[test]
    fn unit_matrix_has_determinant_one() {
        for n in 0..5 {
            assert_eq!(det(&BandMatrixSpec::unit(n), 10).unwrap(), Series::one(10));
        }
    }

    #[test]
    fn tridiagonal_small_sizes() {
        let t = 30;
        assert_eq!(
            det(&build_tridiagonal(1), t).unwrap(),
            s(t, &[(0, 0, 1), (1, 1, 1)])
        );
        assert_eq!(
            det(&build_tridiagonal(2), t).unwrap(),
            s(t, &[(0, 0, 1), (1, 1, 1), (2, 1, 1)])
        );
        assert_eq!(
            det(&build_tridiagonal(3), t).unwrap(),
            s(
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
    }

    #[test]
    fn two_superdiagonal_block() {
        let spec = build_general_with(3, 0, 1, GeneralReading::two_superdiagonals());
        let t = 10;
        // the displayed block, read literally, with the offset-2 entry of the
        // (2k+1) rule folded in
        assert_eq!(spec.entry(1, 2, t).unwrap(), s(t, &[(1, 1, 1)]));
        assert_eq!(spec.entry(2, 3, t).unwrap(), s(t, &[(2, 1, 1)]));
        assert_eq!(spec.entry(2, 1, t).unwrap(), s(t, &[(0, 0, -1)]));
        assert_eq!(spec.entry(3, 1, t).unwrap(), Series::zero(t));
    }

    #[test]
    fn validation() {
        assert!(build_general(6, 1, 2).validate().is_ok());
        assert!(build_tridiagonal(4).validate().is_ok());
        let mut bad = BandMatrixSpec::unit(3);
        bad.extra.push(((3, 1), Series::one(4)));
        assert_eq!(
            bad.validate(),
            Err(SpecError::BelowSubdiagonal { row: 3, col: 1 })
        );
    }

    #[test]
    fn json_dump_lists_nonzero_entries() {
        let v = build_tridiagonal(2).to_json(10).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 4);
        assert_eq!(v[0]["row"], 1);
        assert_eq!(v[0]["entry"]["terms"][1]["x"], 1);
    }
}
