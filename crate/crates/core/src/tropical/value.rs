use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, parse_rational, Rational};

/// An element of T = ℚ ∪ {−∞} with ⊕ = max and ⊙ = +.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TropValue {
    NegInf,
    Finite(Rational),
}

impl TropValue {
    pub fn zero() -> Self {
        TropValue::NegInf
    }

    /// The multiplicative identity, the rational 0.
    pub fn one() -> Self {
        TropValue::Finite(Rational::from_integer(0.into()))
    }

    pub fn is_neg_inf(&self) -> bool {
        matches!(self, TropValue::NegInf)
    }

    pub fn oplus(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn otimes(&self, other: &Self) -> Self {
        match (self, other) {
            (TropValue::Finite(a), TropValue::Finite(b)) => TropValue::Finite(a + b),
            _ => TropValue::NegInf,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match self {
            TropValue::Finite(a) => Ok(TropValue::Finite(-a)),
            TropValue::NegInf => Err(Error::ZeroInverse),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "-inf" => Ok(TropValue::NegInf),
            t => parse_rational(t).map(TropValue::Finite),
        }
    }
}

/// Sum, product and inverse of the first operand, as one record.
pub fn trop_ops(a: &TropValue, b: &TropValue) -> (TropValue, TropValue, Result<TropValue>) {
    (a.oplus(b), a.otimes(b), a.inv())
}

impl PartialOrd for TropValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TropValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (TropValue::NegInf, TropValue::NegInf) => Ordering::Equal,
            (TropValue::NegInf, _) => Ordering::Less,
            (_, TropValue::NegInf) => Ordering::Greater,
            (TropValue::Finite(a), TropValue::Finite(b)) => a.cmp(b),
        }
    }
}

impl From<Rational> for TropValue {
    fn from(x: Rational) -> Self {
        TropValue::Finite(x)
    }
}

impl fmt::Display for TropValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropValue::NegInf => f.write_str("-inf"),
            TropValue::Finite(x) => f.write_str(&fmt_rational(x)),
        }
    }
}
