//! Verification reports.

use serde::Serialize;
use serde_json::Value;

use qcore::Series;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_pass(&self) -> bool {
        *self == Status::Pass
    }
}

/// A single `c·q^d·x^e` term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Term {
    pub q: u32,
    pub x: u32,
    pub c: String,
}

impl Term {
    pub fn leading(s: &Series) -> Option<Term> {
        s.leading_term().map(|(q, x, c)| Term {
            q,
            x,
            c: c.to_string(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    #[serde(rename = "N")]
    pub n: i64,
    pub residual_leading: Option<Term>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A claimed form that failed, with the form that holds instead.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Resolution {
    pub item: String,
    pub stated: String,
    pub resolved: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Agreement {
    pub depth: u32,
    /// First q-degree at which the two sides differ; `None` when they agree
    /// through the working truncation order.
    pub agreement_order: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: String,
    pub range: [i64; 2],
    pub status: Status,
    pub resolution: Option<Resolution>,
    pub first_failure: Option<Failure>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub agreement: Vec<Agreement>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
}

impl Report {
    pub fn new(schema: impl Into<String>, range: [i64; 2]) -> Self {
        Report {
            schema: schema.into(),
            range,
            status: Status::Pass,
            resolution: None,
            first_failure: None,
            agreement: Vec::new(),
            notes: Vec::new(),
            data: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status.is_pass()
    }

    /// Records a failure at `n`, keeping the earliest one.
    pub fn fail(&mut self, n: i64, residual: Option<&Series>, note: Option<String>) {
        self.status = Status::Fail;
        let replace = match &self.first_failure {
            None => true,
            Some(f) => n < f.n,
        };
        if replace {
            self.first_failure = Some(Failure {
                n,
                residual_leading: residual.and_then(Term::leading),
                note,
            });
        }
    }

    pub fn with_resolution(mut self, r: Resolution) -> Self {
        self.resolution = Some(r);
        self
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn summary_line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = format!(
            "{status} {} [{}, {}]",
            self.schema, self.range[0], self.range[1]
        );
        if let Some(f) = &self.first_failure {
            line.push_str(&format!(" first failure at N={}", f.n));
            if let Some(t) = &f.residual_leading {
                line.push_str(&format!(" (residual {}*x^{}*q^{})", t.c, t.x, t.q));
            }
            if let Some(n) = &f.note {
                line.push_str(&format!(": {n}"));
            }
        }
        if let Some(r) = &self.resolution {
            line.push_str(&format!(" [resolved: {}]", r.resolved));
        }
        line
    }
}

/// Reports from several checks, plus the collected resolutions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Aggregate {
    pub status: Status,
    pub reports: Vec<Report>,
    pub errata: Vec<Resolution>,
}

impl Aggregate {
    pub fn new(reports: Vec<Report>) -> Self {
        let status = Status::from_bool(reports.iter().all(Report::passed));
        let errata = reports
            .iter()
            .filter_map(|r| r.resolution.clone())
            .collect();
        Aggregate {
            status,
            reports,
            errata,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            out.push_str(&r.summary_line());
            out.push('\n');
        }
        if !self.errata.is_empty() {
            out.push_str("errata:\n");
            for e in &self.errata {
                out.push_str(&format!(
                    "  {}: stated {} -> resolved {}\n",
                    e.item, e.stated, e.resolved
                ));
            }
        }
        out.push_str(if self.status.is_pass() {
            "overall: PASS\n"
        } else {
            "overall: FAIL\n"
        });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qcore::Int;

    #[test]
    fn json_shape() {
        let mut r = Report::new("demo", [1, 4]);
        let res = Series::from_terms(5, [(3, 1, Int::from(-2)), (4, 0, Int::from(1))]).unwrap();
        r.fail(3, Some(&res), None);
        r.fail(4, None, None);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["status"], "FAIL");
        assert_eq!(v["range"], serde_json::json!([1, 4]));
        assert_eq!(v["first_failure"]["N"], 3);
        assert_eq!(
            v["first_failure"]["residual_leading"],
            serde_json::json!({"q": 3, "x": 1, "c": "-2"})
        );
        assert!(v["resolution"].is_null());
    }
}
