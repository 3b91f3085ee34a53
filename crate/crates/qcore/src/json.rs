//! JSON encoding of series.
//!
//! A series serializes as `{"truncation": T, "terms": [{"q": d, "x": e, "c": "…"}]}`
//! with terms in ascending `(q, x)` order and coefficients as decimal strings.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeff::Coeff;
use crate::series::QSeries;

#[derive(Serialize, Deserialize)]
struct TermRepr {
    q: u32,
    x: u32,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    truncation: u32,
    terms: Vec<TermRepr>,
}

impl<C: Coeff> Serialize for QSeries<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SeriesRepr {
            truncation: self.truncation(),
            terms: self
                .terms()
                .map(|(q, x, c)| TermRepr {
                    q,
                    x,
                    c: c.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, C: Coeff> Deserialize<'de> for QSeries<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = SeriesRepr::deserialize(d)?;
        let mut terms = Vec::with_capacity(repr.terms.len());
        for t in repr.terms {
            let c = C::parse_decimal(&t.c)
                .ok_or_else(|| D::Error::custom(format!("bad coefficient {:?}", t.c)))?;
            if t.q > repr.truncation {
                return Err(D::Error::custom(format!(
                    "term q^{} beyond truncation {}",
                    t.q, repr.truncation
                )));
            }
            terms.push((t.q, t.x, c));
        }
        QSeries::from_terms(repr.truncation, terms).map_err(D::Error::custom)
    }
}

pub fn to_json<C: Coeff>(s: &QSeries<C>) -> serde_json::Value {
    serde_json::to_value(s).expect("series always serializes")
}
