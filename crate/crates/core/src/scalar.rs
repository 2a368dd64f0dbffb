//! Scalar backends.
//!
//! Everything algebraic in this crate is written against [`Scalar`], which is
//! implemented by the exact [`Rational`] type and by `f32`/`f64`. Code that
//! needs transcendental functions or linear algebra (simulation, fitting,
//! mobility) is written against [`Real`] instead.

use std::fmt::{Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive, Zero};
use serde_json::Value;

/// Arbitrary precision rational number.
pub type Rational = BigRational;

/// An ordered field element usable as a coefficient.
pub trait Scalar:
    Clone + PartialEq + PartialOrd + Debug + Display + Num + Neg<Output = Self> + Send + Sync + 'static
{
    /// `true` for backends whose arithmetic is exact.
    const EXACT: bool;

    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    fn to_f64(&self) -> f64;

    /// Zero test used by every structural check. Exact backends test `== 0`,
    /// floating backends compare against a small absolute threshold.
    fn is_negligible(&self) -> bool;

    fn to_json(&self) -> Value;

    fn from_json(value: &Value) -> Option<Self>;

    /// Parses `"p"`, `"p/q"` or a decimal literal.
    fn parse_literal(s: &str) -> Option<Self>;

    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Rational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(value: &Value) -> Option<Self> {
        match value {
            Value::String(s) => Self::parse_literal(s),
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Some(Self::from_int(i))
                } else {
                    n.as_f64().and_then(Rational::from_float)
                }
            }
            _ => None,
        }
    }

    fn parse_literal(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num = BigInt::from_str(num.trim()).ok()?;
            let den = BigInt::from_str(den.trim()).ok()?;
            if den.is_zero() {
                return None;
            }
            return Some(Rational::new(num, den));
        }
        if let Ok(n) = BigInt::from_str(s) {
            return Some(Rational::from_integer(n));
        }
        parse_decimal(s)
    }
}

// "1.25" or "-0.5" as an exact rational; exponents are not accepted.
fn parse_decimal(s: &str) -> Option<Rational> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.')?;
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).ok()?;
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let r = Rational::new(numer, denom);
    Some(if neg { -r } else { r })
}

macro_rules! impl_float_scalar {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_ratio(numer: i64, denom: i64) -> Self {
                numer as $t / denom as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn is_negligible(&self) -> bool {
                self.abs() <= $tol
            }

            fn to_json(&self) -> Value {
                serde_json::Number::from_f64(*self as f64).map(Value::Number).unwrap_or(Value::Null)
            }

            fn from_json(value: &Value) -> Option<Self> {
                match value {
                    Value::Number(n) => n.as_f64().map(|x| x as $t),
                    Value::String(s) => Self::parse_literal(s),
                    _ => None,
                }
            }

            fn parse_literal(s: &str) -> Option<Self> {
                if let Some((num, den)) = s.split_once('/') {
                    let num: $t = num.trim().parse().ok()?;
                    let den: $t = den.trim().parse().ok()?;
                    return Some(num / den);
                }
                s.trim().parse().ok()
            }
        }
    };
}

impl_float_scalar!(f64, 1e-12);
impl_float_scalar!(f32, 1e-5);

/// Floating point scalar with the transcendental functions and linear algebra
/// support needed for simulation.
pub trait Real: Scalar + nalgebra::RealField + Copy {
    fn lit(x: f64) -> Self;
}

impl Real for f64 {
    fn lit(x: f64) -> Self {
        x
    }
}

impl Real for f32 {
    fn lit(x: f64) -> Self {
        x as f32
    }
}

/// Converts between backends through `f64`.
pub fn to_real<S: Scalar, R: Real>(s: &S) -> R {
    R::lit(s.to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_literals() {
        assert_eq!(Rational::parse_literal("3/2"), Some(Rational::from_ratio(3, 2)));
        assert_eq!(Rational::parse_literal("-1"), Some(Rational::from_int(-1)));
        assert_eq!(Rational::parse_literal("0.25"), Some(Rational::from_ratio(1, 4)));
        assert_eq!(Rational::parse_literal("-1.5"), Some(Rational::from_ratio(-3, 2)));
        assert_eq!(Rational::parse_literal("1/0"), None);
        assert_eq!(Rational::parse_literal("abc"), None);
    }

    #[test]
    fn rational_json_is_string() {
        let r = Rational::from_ratio(-5, 2);
        assert_eq!(r.to_json(), Value::String("-5/2".into()));
        assert_eq!(Rational::from_json(&r.to_json()), Some(r));
    }

    #[test]
    fn float_json_is_number() {
        let v = 0.5f64.to_json();
        assert!(v.is_number());
        assert_eq!(f64::from_json(&v), Some(0.5));
        assert_eq!(f64::parse_literal("1/4"), Some(0.25));
    }
}
