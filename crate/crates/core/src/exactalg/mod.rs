//! Exact arithmetic over the field of rational functions in fractional powers of `q`.
//!
//! [`LaurentPoly`] is the ring of Laurent polynomials with rational coefficients
//! in one indeterminate `u`; [`ExactScalar`] is its fraction field, with `u`
//! standing for `q^(1/s)` for a per-value resolution `s`. Inside a rank-`n`
//! context every exponent that occurs is a multiple of `1/(2n)`, so `s`
//! always divides `2n`.

mod laurent;
mod scalar;
mod text;

use std::fmt;

use num_rational::Ratio;

pub use laurent::LaurentPoly;
pub use scalar::{qint, ExactScalar};

use crate::error::{Error, Result};

/// A rational exponent of `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QExponent(Ratio<i64>);

impl QExponent {
    pub fn new(numer: i64, denom: i64) -> Self {
        Self(Ratio::new(numer, denom))
    }

    pub fn from_int(e: i64) -> Self {
        Self(Ratio::from_integer(e))
    }

    pub fn value(&self) -> Ratio<i64> {
        self.0
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Exponent of `u = q^(1/(2n))`; fails if `2n * self` is not an integer.
    pub fn u_exponent(&self, n: usize) -> Result<i64> {
        let v = self.0 * Ratio::from_integer(2 * n as i64);
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::Parse(format!(
                "q-exponent {} is not a multiple of 1/{}",
                self.0,
                2 * n
            )))
        }
    }
}

impl From<Ratio<i64>> for QExponent {
    fn from(r: Ratio<i64>) -> Self {
        Self(r)
    }
}

impl std::ops::Add for QExponent {
    type Output = QExponent;
    fn add(self, rhs: QExponent) -> QExponent {
        QExponent(self.0 + rhs.0)
    }
}

impl std::ops::Mul<i64> for QExponent {
    type Output = QExponent;
    fn mul(self, rhs: i64) -> QExponent {
        QExponent(self.0 * rhs)
    }
}

impl fmt::Display for QExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
