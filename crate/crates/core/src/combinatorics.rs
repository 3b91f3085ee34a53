//! Brute-force enumeration of overpartitions and 2-color partitions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Parts in weakly decreasing order; within a run of equal sizes only the
/// first copy may carry the overline.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Overpartition {
    parts: Vec<(u32, bool)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseOverpartitionError(String);

impl fmt::Display for ParseOverpartitionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid overpartition: {}", self.0)
    }
}

impl std::error::Error for ParseOverpartitionError {}

impl Overpartition {
    pub fn empty() -> Self {
        Overpartition { parts: Vec::new() }
    }

    /// Builds from `(size, overlined)` pairs in any order.
    pub fn new(mut parts: Vec<(u32, bool)>) -> Result<Self, ParseOverpartitionError> {
        if parts.iter().any(|&(v, _)| v == 0) {
            return Err(ParseOverpartitionError("parts must be positive".into()));
        }
        parts.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)));
        for w in parts.windows(2) {
            if w[0].0 == w[1].0 && w[1].1 {
                return Err(ParseOverpartitionError(format!(
                    "size {} is overlined twice",
                    w[0].0
                )));
            }
        }
        Ok(Overpartition { parts })
    }

    pub fn parts(&self) -> &[(u32, bool)] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().map(|p| p.0).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `size → (copies, overlined)`.
    pub fn multiplicities(&self) -> BTreeMap<u32, (u32, bool)> {
        let mut m: BTreeMap<u32, (u32, bool)> = BTreeMap::new();
        for &(v, o) in &self.parts {
            let e = m.entry(v).or_insert((0, false));
            e.0 += 1;
            e.1 |= o;
        }
        m
    }

    pub fn is_valid(&self) -> bool {
        self.parts
            .windows(2)
            .all(|w| w[0].0 > w[1].0 || (w[0].0 == w[1].0 && !w[1].1))
            && self.parts.iter().all(|p| p.0 > 0)
    }

    /// Every part increased by `j`.
    pub fn shifted(&self, j: u32) -> Self {
        Overpartition {
            parts: self.parts.iter().map(|&(v, o)| (v + j, o)).collect(),
        }
    }
}

impl fmt::Display for Overpartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("0");
        }
        let s: Vec<String> = self
            .parts
            .iter()
            .map(|&(v, o)| if o { format!("{v}~") } else { v.to_string() })
            .collect();
        f.write_str(&s.join("+"))
    }
}

impl FromStr for Overpartition {
    type Err = ParseOverpartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(Overpartition::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split('+') {
            let tok = tok.trim();
            let (num, over) = match tok.strip_suffix('~') {
                Some(n) => (n, true),
                None => (tok, false),
            };
            let v: u32 = num
                .parse()
                .map_err(|_| ParseOverpartitionError(format!("bad part {tok:?}")))?;
            parts.push((v, over));
        }
        Overpartition::new(parts)
    }
}

/// All overpartitions of `n`.
pub fn enum_overpartitions(n: u32) -> Vec<Overpartition> {
    assert!(n <= 30, "full enumeration is limited to n <= 30");
    let mut out = Vec::new();
    let mut cur = Vec::new();
    descend(n, n, &mut cur, &mut out);
    out
}

fn descend(rest: u32, max: u32, cur: &mut Vec<(u32, bool)>, out: &mut Vec<Overpartition>) {
    if rest == 0 {
        out.push(Overpartition { parts: cur.clone() });
        return;
    }
    for v in (1..=max.min(rest)).rev() {
        for copies in 1..=rest / v {
            for over in [false, true] {
                let mark = cur.len();
                cur.push((v, over));
                cur.extend(std::iter::repeat_n((v, false), copies as usize - 1));
                descend(rest - v * copies, v - 1, cur, out);
                cur.truncate(mark);
            }
        }
    }
}

/// A run of consecutive values with prescribed overlines, matched at any shift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqPattern {
    pub entries: Vec<(u32, bool)>,
}

impl SeqPattern {
    /// Whether the pattern shifted by `j` is a sub-multiset of `op`: overlined
    /// entries need the overlined copy, plain entries need distinct plain copies.
    pub fn matches_at(&self, m: &BTreeMap<u32, (u32, bool)>, j: u32) -> bool {
        let mut need: BTreeMap<u32, (u32, u32)> = BTreeMap::new();
        for &(a, over) in &self.entries {
            let e = need.entry(a + j).or_insert((0, 0));
            if over {
                e.0 += 1;
            } else {
                e.1 += 1;
            }
        }
        need.iter().all(|(v, &(no, np))| {
            let (c, o) = m.get(v).copied().unwrap_or((0, false));
            (no == 0 || o) && no <= 1 && c - o as u32 >= np
        })
    }

    pub fn matches(&self, op: &Overpartition) -> bool {
        let m = op.multiplicities();
        let top = m.keys().next_back().copied().unwrap_or(0);
        (0..=top).any(|j| self.matches_at(&m, j))
    }
}

impl fmt::Display for SeqPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .entries
            .iter()
            .map(|&(v, o)| if o { format!("{v}~") } else { v.to_string() })
            .collect();
        f.write_str(&s.join("+"))
    }
}

/// The sequence excluded for parameters `(i, k)`.
///
/// For `i = 0` it is `1~+2+3~+…+(2k+1)~`. For `i > 0` it is
/// `2+…+i+(i+1)~+(i+1)+(i+2)+(i+3)~+…` up to `2k+1`, with overlines on the
/// values of the same parity as `i+1`.
pub fn forbidden_patterns(i: u32, k: u32) -> Vec<SeqPattern> {
    let kk = 2 * k + 1;
    if i == 0 {
        return vec![SeqPattern {
            entries: (1..=kk).map(|v| (v, v % 2 == 1)).collect(),
        }];
    }
    let mut entries: Vec<(u32, bool)> = (2..=i).map(|v| (v, false)).collect();
    entries.push((i + 1, true));
    entries.push((i + 1, false));
    for v in i + 2..=kk {
        entries.push((v, (v - (i + 1)).is_multiple_of(2)));
    }
    vec![SeqPattern { entries }]
}

/// How the sequence conditions are applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Semantics {
    /// Exclude every overpartition containing a forbidden sequence.
    Literal,
    /// The reading that reproduces the generating function (see [`Constraints`]).
    Calibrated,
}

/// The conditions on overpartitions counted by `F(i,k;x)/(xq;q)_∞`.
///
/// Both readings forbid overlines on adjacent sizes and, for `i > 0`, any
/// overlined part `<= i`. Under [`Semantics::Calibrated`] the sequence rule
/// becomes, for `i = 0`: every maximal run of consecutive sizes holds at most
/// `k` overlined parts; for `i > 0`: [`peel_weight`] equals 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Constraints {
    pub i: u32,
    pub k: u32,
    pub semantics: Semantics,
}

impl Constraints {
    pub fn new(i: u32, k: u32, semantics: Semantics) -> Self {
        Constraints { i, k, semantics }
    }

    pub fn admits(&self, op: &Overpartition) -> bool {
        let m = op.multiplicities();
        for (&v, &(_, o)) in &m {
            if o && m.get(&(v + 1)).is_some_and(|e| e.1) {
                return false;
            }
            if o && v <= self.i {
                return false;
            }
        }
        let top = m.keys().next_back().copied().unwrap_or(0);
        let patterns = forbidden_patterns(self.i, self.k);
        match (self.semantics, self.i) {
            (Semantics::Literal, _) => !patterns
                .iter()
                .any(|p| (0..=top).any(|j| p.matches_at(&m, j))),
            (Semantics::Calibrated, 0) => runs_within(&m, self.k),
            (Semantics::Calibrated, _) => peel_weight(op, self.i, self.k) == 1,
        }
    }
}

/// Signed weight obtained by peeling the smallest parts off `op`, following the
/// functional equation of the generating function for `i > 0`.
///
/// Every overpartition gets weight 0 or 1 when `i > 0`; for `i = 0` some get -1.
pub fn peel_weight(op: &Overpartition, i: u32, k: u32) -> i64 {
    peel(op.parts.clone(), i, k, &forbidden_patterns(i, k)[0])
}

fn peel(parts: Vec<(u32, bool)>, i: u32, k: u32, pat: &SeqPattern) -> i64 {
    if parts.is_empty() {
        return 1;
    }
    if parts.iter().any(|&(v, o)| o && v <= i) {
        return 0;
    }
    let lowered = |rest: &[(u32, bool)], by: u32| -> Option<Vec<(u32, bool)>> {
        if rest.iter().any(|&(v, o)| o && v <= by) {
            return None;
        }
        Some(
            rest.iter()
                .filter(|p| p.0 > by)
                .map(|&(v, o)| (v - by, o))
                .collect(),
        )
    };
    let Some(pos) = parts.iter().position(|&p| p == (i + 1, true)) else {
        return lowered(&parts, 1).map_or(0, |rest| peel(rest, i, k, pat));
    };
    let mut rest = parts.clone();
    rest.remove(pos);
    let mut val = lowered(&rest, 2).map_or(0, |r| peel(r, i, k, pat));
    let mut rem = parts;
    for e in &pat.entries {
        match rem.iter().position(|p| p == e) {
            Some(at) => {
                rem.remove(at);
            }
            None => return val,
        }
    }
    if let Some(r) = lowered(&rem, 2 * k + 1) {
        val -= peel(r, i, k, pat);
    }
    val
}

fn runs_within(m: &BTreeMap<u32, (u32, bool)>, k: u32) -> bool {
    let mut prev: Option<u32> = None;
    let mut overlined = 0;
    for (&v, &(_, o)) in m {
        if prev != Some(v.wrapping_sub(1)) {
            overlined = 0;
        }
        overlined += o as u32;
        if overlined > k {
            return false;
        }
        prev = Some(v);
    }
    true
}

/// Number of admitted overpartitions of `n`, in total and by number of parts.
pub fn count_filtered(n: u32, c: Constraints) -> (u64, Vec<u64>) {
    let mut by_parts = vec![0u64; n as usize + 1];
    for op in enum_overpartitions(n) {
        if c.admits(&op) {
            by_parts[op.len()] += 1;
        }
    }
    (by_parts.iter().sum(), by_parts)
}

/// A partition into red parts and green parts `≡ 1 (mod 3)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoColorPartition {
    pub red: Vec<u32>,
    pub green: Vec<u32>,
}

impl TwoColorPartition {
    pub fn weight(&self) -> u32 {
        self.red.iter().sum::<u32>() + self.green.iter().sum::<u32>()
    }
}

fn partitions(
    n: u32,
    max: u32,
    allowed: &dyn Fn(u32) -> bool,
    cur: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if n == 0 {
        out.push(cur.clone());
        return;
    }
    for v in (1..=max.min(n)).rev().filter(|&v| allowed(v)) {
        cur.push(v);
        partitions(n - v, v, allowed, cur, out);
        cur.pop();
    }
}

pub fn enum_2color(n: u32) -> Vec<TwoColorPartition> {
    let mut out = Vec::new();
    for g in 0..=n {
        let mut greens = Vec::new();
        partitions(g, g, &|v| v % 3 == 1, &mut Vec::new(), &mut greens);
        let mut reds = Vec::new();
        partitions(n - g, n - g, &|_| true, &mut Vec::new(), &mut reds);
        for green in &greens {
            for red in &reds {
                out.push(TwoColorPartition {
                    red: red.clone(),
                    green: green.clone(),
                });
            }
        }
    }
    out
}

pub fn count_2color(n: u32) -> u64 {
    enum_2color(n).len() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let op: Overpartition = "5~+1+1".parse().unwrap();
        assert_eq!(op.to_string(), "5~+1+1");
        assert_eq!(op.weight(), 7);
        assert_eq!("1+1+5~".parse::<Overpartition>().unwrap(), op);
        assert!("2~+2~".parse::<Overpartition>().is_err());
        assert!("0+1".parse::<Overpartition>().is_err());
        assert_eq!(
            "0".parse::<Overpartition>().unwrap(),
            Overpartition::empty()
        );
    }

    #[test]
    fn peel_weights_are_boolean_for_positive_i() {
        for n in 0..=14 {
            for op in enum_overpartitions(n) {
                for (i, k) in [(1, 1), (2, 1), (1, 2), (3, 2)] {
                    let w = peel_weight(&op, i, k);
                    assert!(w == 0 || w == 1, "{op} (i,k)=({i},{k}) weight {w}");
                }
            }
        }
    }

    #[test]
    fn peel_weight_negative_at_i_zero() {
        let op: Overpartition = "4~+3~+2+1~".parse().unwrap();
        assert_eq!(peel_weight(&op, 0, 1), -1);
    }

    #[test]
    fn window_counterexample_rejected() {
        let op: Overpartition = "5~+5+4+3~".parse().unwrap();
        assert!(!Constraints::new(2, 1, Semantics::Calibrated).admits(&op));
        assert!(!Constraints::new(2, 1, Semantics::Literal).admits(&op));
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enum_overpartitions(0), vec![Overpartition::empty()]);
        assert_eq!(enum_overpartitions(3).len(), 8);
        assert_eq!(enum_overpartitions(4).len(), 14);
    }

    #[test]
    fn pattern_from_the_definition() {
        let p = SeqPattern {
            entries: vec![(1, true), (2, false), (3, true)],
        };
        assert!(p.matches(&"4+5~+6+7~+7".parse().unwrap()));
        assert!(!p.matches(&"4+5~+6+7".parse().unwrap()));
    }

    #[test]
    fn repeated_offsets_need_distinct_copies() {
        let p = &forbidden_patterns(1, 1)[0];
        assert_eq!(p.to_string(), "2~+2+3");
        assert!(p.matches(&"3+2~+2".parse().unwrap()));
        assert!(!p.matches(&"3+2~".parse().unwrap()));
    }

    #[test]
    fn patterns_for_larger_i() {
        assert_eq!(forbidden_patterns(0, 2)[0].to_string(), "1~+2+3~+4+5~");
        assert_eq!(forbidden_patterns(2, 1)[0].to_string(), "2+3~+3");
        assert_eq!(forbidden_patterns(1, 2)[0].to_string(), "2~+2+3+4~+5");
        assert_eq!(forbidden_patterns(2, 2)[0].to_string(), "2+3~+3+4+5~");
    }

    #[test]
    fn two_color_small() {
        assert_eq!(count_2color(0), 1);
        assert_eq!(count_2color(4), 13);
    }
}
