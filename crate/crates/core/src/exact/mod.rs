//! Exact arithmetic: Gaussian integers, cyclotomic integers of small order and
//! degree-two polynomials over Z\[i\].
//!
//! Nothing in here touches floating point. Integers are unbounded.

mod cyclotomic;
mod gauss;
mod quadpoly;

pub use cyclotomic::{cyclotomic_poly, lcm_order, CycInt, SUPPORTED_ORDERS};
pub use gauss::GaussInt;
pub use quadpoly::{QuadPoly, Substitution, Term};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("unsupported cyclotomic order {0} (supported: 1, 2, 4, 8, 12, 24)")]
    UnsupportedOrder(u32),
    #[error("coefficient vector has length {got}, expected {expected} for order {order}")]
    BadLength {
        order: u32,
        expected: usize,
        got: usize,
    },
    #[error("order {0} does not contain the Gaussian integers")]
    NoGaussianEmbedding(u32),
    #[error("cannot embed order {from} into order {to}")]
    BadEmbedding { from: u32, to: u32 },
    #[error("polynomial dimension mismatch: {0} vs {1} variables")]
    DimensionMismatch(usize, usize),
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("product of non-linear polynomials would exceed degree 2")]
    DegreeOverflow,
    #[error("inconsistent substitution chain at variable X{0}")]
    InconsistentAlias(usize),
}

/// Integers in JSON are plain numbers when they fit in i64 and decimal strings otherwise.
pub(crate) struct JsonInt<'a>(pub &'a BigInt);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => serializer.serialize_i64(v),
            None => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
pub(crate) enum IntRepr {
    Small(i64),
    Big(String),
}

impl IntRepr {
    pub(crate) fn into_bigint<E: serde::de::Error>(self) -> Result<BigInt, E> {
        match self {
            IntRepr::Small(v) => Ok(BigInt::from(v)),
            IntRepr::Big(s) => s.parse().map_err(E::custom),
        }
    }
}
