//! Dual-mode scalars: arbitrary-precision rationals by default, 64-bit floats
//! on request.
//!
//! Exact scalars obey field axioms literally, so every tensor identity checked
//! by this crate can be asserted as `== 0`. Float scalars compare through a
//! single process-wide absolute tolerance (see [`set_tolerance`]); mixing the
//! two modes in an operation promotes to float.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Default absolute tolerance for float-mode comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

// Stored as f64 bits; u64::MAX is the "unset" sentinel so the static needs no
// const float-to-bits conversion.
static TOLERANCE_BITS: AtomicU64 = AtomicU64::new(u64::MAX);

/// Current global absolute tolerance used by float-mode comparisons.
pub fn tolerance() -> f64 {
    let bits = TOLERANCE_BITS.load(AtomicOrdering::Relaxed);
    if bits == u64::MAX {
        DEFAULT_TOLERANCE
    } else {
        f64::from_bits(bits)
    }
}

/// Sets the global absolute tolerance. Panics on non-finite or negative input.
pub fn set_tolerance(tol: f64) {
    assert!(tol.is_finite() && tol >= 0.0, "tolerance must be finite and >= 0");
    TOLERANCE_BITS.store(tol.to_bits(), AtomicOrdering::Relaxed);
}

/// Error raised when a rational literal cannot be parsed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed rational `{input}`: {reason}")]
pub struct ParseRationalError {
    pub input: String,
    pub reason: String,
}

/// A scalar in either exact-rational or float mode.
#[derive(Clone)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact p/q. Panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar::Exact(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn float(x: f64) -> Self {
        Scalar::Float(x)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Float(x) => *x,
        }
    }

    /// The same value demoted to float mode.
    pub fn to_float_mode(&self) -> Scalar {
        Scalar::Float(self.to_f64())
    }

    /// Parses "p", "p/q" (lowest terms not required). Exact mode only.
    pub fn parse_rational(s: &str) -> Result<Self, ParseRationalError> {
        let s = s.trim();
        let err = |reason: &str| ParseRationalError {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        if s.is_empty() {
            return Err(err("empty string"));
        }
        let mut parts = s.splitn(2, '/');
        let num_str = parts.next().unwrap().trim();
        let num: BigInt = num_str.parse().map_err(|_| err("invalid numerator"))?;
        match parts.next() {
            None => Ok(Scalar::Exact(BigRational::from_integer(num))),
            Some(den_str) => {
                let den: BigInt = den_str.trim().parse().map_err(|_| err("invalid denominator"))?;
                if den.is_zero() {
                    return Err(err("zero denominator"));
                }
                Ok(Scalar::Exact(BigRational::new(num, den)))
            }
        }
    }

    /// True when the value is zero (exactly, or within tolerance in float mode).
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(x) => x.abs() <= tolerance(),
        }
    }

    /// -1, 0, +1 with the zero band widened to the tolerance in float mode.
    pub fn sign(&self) -> i8 {
        match self {
            Scalar::Exact(r) => {
                if r.is_zero() {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Scalar::Float(x) => {
                if x.abs() <= tolerance() {
                    0
                } else if *x > 0.0 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Float(x) => Scalar::Float(x.abs()),
        }
    }

    /// Multiplicative inverse. Panics on zero; callers check `is_zero` first.
    pub fn recip(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => {
                assert!(!r.is_zero(), "division by zero");
                Scalar::Exact(r.recip())
            }
            Scalar::Float(x) => Scalar::Float(1.0 / x),
        }
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    /// Exact square root when the value is a perfect rational square.
    /// Float scalars return the float sqrt (None if negative).
    pub fn sqrt_exact(&self) -> Option<Scalar> {
        match self {
            Scalar::Exact(r) => {
                if r.is_negative() {
                    return None;
                }
                let ns = r.numer().sqrt();
                let ds = r.denom().sqrt();
                if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
                    Some(Scalar::Exact(BigRational::new(ns, ds)))
                } else {
                    None
                }
            }
            Scalar::Float(x) => {
                if *x < 0.0 {
                    None
                } else {
                    Some(Scalar::Float(x.sqrt()))
                }
            }
        }
    }

    fn approx_eq(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => (self.to_f64() - other.to_f64()).abs() <= tolerance(),
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.approx_eq(other)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.partial_cmp(b),
            _ => {
                let (a, b) = (self.to_f64(), other.to_f64());
                if (a - b).abs() <= tolerance() {
                    Some(Ordering::Equal)
                } else {
                    a.partial_cmp(&b)
                }
            }
        }
    }
}

impl fmt::Display for Scalar {
    /// Canonical form: lowest-terms "p" or "p/q" with q > 1 for exact values,
    /// shortest round-trip decimal for floats.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Float(x) => write!(f, "{x}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(_) => write!(f, "{self}"),
            Scalar::Float(x) => write!(f, "{x}f"),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    _ => Scalar::Float(self.to_f64() $op rhs.to_f64()),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => {
                assert!(!b.is_zero(), "division by zero");
                Scalar::Exact(a / b)
            }
            _ => Scalar::Float(self.to_f64() / rhs.to_f64()),
        }
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Div<&Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        &self / rhs
    }
}

impl Div<Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self / &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Float(x) => Scalar::Float(-x),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_display() {
        assert_eq!(Scalar::ratio(-6, 4).to_string(), "-3/2");
        assert_eq!(Scalar::ratio(4, 2).to_string(), "2");
        assert_eq!(Scalar::ratio(3, -6).to_string(), "-1/2");
        assert_eq!(Scalar::int(0).to_string(), "0");
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["-3/2", "2", "0", "7/3"] {
            assert_eq!(Scalar::parse_rational(s).unwrap().to_string(), s);
        }
        assert!(Scalar::parse_rational("1/0").is_err());
        assert!(Scalar::parse_rational("x").is_err());
        assert!(Scalar::parse_rational("1/x").is_err());
    }

    #[test]
    fn float_comparison_uses_tolerance() {
        let a = Scalar::float(1.0);
        let b = Scalar::float(1.0 + 1e-12);
        assert_eq!(a, b);
        let c = Scalar::float(1.0 + 1e-6);
        assert!(a != c);
    }

    #[test]
    fn exact_sqrt() {
        assert_eq!(Scalar::ratio(9, 4).sqrt_exact().unwrap(), Scalar::ratio(3, 2));
        assert!(Scalar::int(2).sqrt_exact().is_none());
        assert!(Scalar::int(-4).sqrt_exact().is_none());
    }
}
