use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("negative exponent in monomial q^{q} x^{x}")]
    NegativeExponent { q: i64, x: i64 },
    #[error("term q^{q} x^{x} has a larger x-degree than q-degree")]
    XDegreeExceedsQDegree { q: u32, x: u32 },
    #[error("q-degree {degree} exceeds the truncation order {truncation}")]
    BeyondTruncation { degree: u32, truncation: u32 },
    #[error("series is not invertible: its q^0 part must be exactly 1")]
    NotInvertible,
    #[error("invalid Pochhammer factor: x-weight {x_weight} exceeds base q-degree {base}")]
    InvalidFactor { base: u32, x_weight: u32 },
    #[error("malformed series: {0}")]
    Malformed(String),
}
