//! Exact geometry of the base surface: the projective plane and its blow-ups
//! at finitely many points.
//!
//! Everything is computed over arbitrary-precision rationals.

mod arrangement;
mod divisor;
mod linear_system;
mod plane;

pub use arrangement::{
    max_multiplicity, multiple_points, ArrangementFile, LineArrangement, MultiplePoint, ProjPoint,
};
pub use divisor::{chi_class, intersect, DivisorClass};
pub use linear_system::{linear_system_dim, rank, rank_integer};
pub use plane::{chi_plane, h0_plane, h2_plane};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// Exact rational number.
pub type Q = BigRational;

pub(crate) fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("divisor classes live on different blow-ups ({0} vs {1} exceptional curves)")]
    BaseMismatch(usize, usize),
    #[error("class {0} is not integral")]
    NotIntegral(String),
    #[error("lines {0} and {1} coincide")]
    DuplicateLines(usize, usize),
    #[error("line {0} has all coefficients zero")]
    DegenerateLine(usize),
    #[error("point has all coordinates zero")]
    DegeneratePoint,
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
}

/// Parses `"7"`, `"-2/3"` and friends.
pub fn parse_rational(s: &str) -> Result<Q, GeometryError> {
    let bad = || GeometryError::BadRational(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// JSON number or rational string, as accepted in input files.
#[derive(Debug, Clone, serde::Deserialize, serde::Serialize)]
#[serde(untagged)]
pub enum RationalValue {
    Int(i64),
    Text(String),
}

impl RationalValue {
    pub fn to_rational(&self) -> Result<Q, GeometryError> {
        match self {
            RationalValue::Int(n) => Ok(q(*n)),
            RationalValue::Text(s) => parse_rational(s),
        }
    }

    pub fn from_rational(v: &Q) -> Self {
        if v.is_integer() {
            if let Ok(n) = v.to_integer().try_into() {
                return RationalValue::Int(n);
            }
        }
        RationalValue::Text(v.to_string())
    }
}
