//! Exact rationals and the extended value `+∞` used by thresholds and masses.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// A coordinate vector of exact rationals.
pub type RatVector = Vec<Rational>;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical text form: always `p/q`, integers included (`3/1`).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

pub fn rat_vector(values: &[i64]) -> RatVector {
    values.iter().map(|&v| int(v)).collect()
}

/// A non-negative quantity that may be `+∞`.
///
/// Ordering puts every finite value below `Infinite`. Arithmetic that would
/// produce an indeterminate form returns an error instead of a value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Extended {
    Finite(Rational),
    Infinite,
}

impl Extended {
    pub fn finite(self) -> Option<Rational> {
        match self {
            Extended::Finite(r) => Some(r),
            Extended::Infinite => None,
        }
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            Extended::Finite(r) => Some(r),
            Extended::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinite)
    }

    pub fn zero() -> Self {
        Extended::Finite(Rational::zero())
    }

    /// `1/x` with `1/0 = +∞` and `1/∞ = 0`; negative inputs are rejected.
    pub fn recip(&self) -> Result<Extended> {
        match self {
            Extended::Infinite => Ok(Extended::zero()),
            Extended::Finite(r) if r.is_zero() => Ok(Extended::Infinite),
            Extended::Finite(r) if r.is_negative() => {
                Err(Error::Indeterminate(format!("reciprocal of negative value {}", format_rational(r))))
            }
            Extended::Finite(r) => Ok(Extended::Finite(r.recip())),
        }
    }

    /// Product of non-negative extended values; `0 · ∞` is an error.
    pub fn mul(&self, other: &Extended) -> Result<Extended> {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => Ok(Extended::Finite(a * b)),
            (Extended::Finite(a), Extended::Infinite) | (Extended::Infinite, Extended::Finite(a)) => {
                if a.is_zero() {
                    Err(Error::Indeterminate("0 · ∞".into()))
                } else {
                    Ok(Extended::Infinite)
                }
            }
            (Extended::Infinite, Extended::Infinite) => Ok(Extended::Infinite),
        }
    }

    pub fn add(&self, other: &Extended) -> Extended {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(a + b),
            _ => Extended::Infinite,
        }
    }

    pub fn min(self, other: Extended) -> Extended {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Extended) -> Extended {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// `"p/q"` or `"inf"`.
    pub fn render(&self) -> String {
        match self {
            Extended::Finite(r) => format_rational(r),
            Extended::Infinite => "inf".to_string(),
        }
    }

    pub fn parse(s: &str) -> Result<Extended> {
        if s.trim() == "inf" {
            Ok(Extended::Infinite)
        } else {
            parse_rational(s).map(Extended::Finite)
        }
    }
}

impl From<Rational> for Extended {
    fn from(r: Rational) -> Self {
        Extended::Finite(r)
    }
}

impl PartialOrd for Extended {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Extended {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => a.cmp(b),
            (Extended::Finite(_), Extended::Infinite) => Ordering::Less,
            (Extended::Infinite, Extended::Finite(_)) => Ordering::Greater,
            (Extended::Infinite, Extended::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
