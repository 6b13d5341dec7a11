//! Exact rational scalars, Pochhammer symbols and validated parameter triples.
//!
//! Every coefficient in the crate lives in [`ExactScalar`], a canonical
//! rational (`gcd(|num|, den) = 1`, `den > 0`) backed by GMP. Arithmetic is
//! exact; the sign of a value is the sign of its numerator.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use rug::{Integer, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number in lowest terms.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactScalar(Rational);

impl ExactScalar {
    pub fn zero() -> Self {
        Self(Rational::new())
    }

    pub fn one() -> Self {
        Self(Rational::from(1))
    }

    pub fn from_integer(n: i64) -> Self {
        Self(Rational::from(n))
    }

    /// `num / den`. Panics when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self(Rational::from((num, den)))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self(r)
    }

    pub fn as_rational(&self) -> &Rational {
        &self.0
    }

    pub fn into_rational(self) -> Rational {
        self.0
    }

    pub fn numer(&self) -> &Integer {
        self.0.numer()
    }

    pub fn denom(&self) -> &Integer {
        self.0.denom()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.0.cmp0() {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.cmp0() == Ordering::Equal
    }

    pub fn is_positive(&self) -> bool {
        self.0.cmp0() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.0.cmp0() == Ordering::Less
    }

    pub fn is_integer(&self) -> bool {
        *self.0.denom() == 1
    }

    pub fn abs(&self) -> Self {
        Self(Rational::from(self.0.abs_ref()))
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Self(Rational::from(self.0.recip_ref()))
    }

    /// Nearest `f64` (round to nearest).
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Self(Rational::from(&self.0 * k))
    }

    pub fn add_int(&self, k: i64) -> Self {
        Self(Rational::from(&self.0 + k))
    }

    pub fn div_int(&self, k: i64) -> Self {
        assert!(k != 0, "division by zero");
        Self(Rational::from(&self.0 / k))
    }

    pub fn square(&self) -> Self {
        Self(Rational::from(self.0.square_ref()))
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// Midpoint of two values.
    pub fn midpoint(&self, other: &Self) -> Self {
        (self + other).div_int(2)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<Rational> for ExactScalar {
    fn from(r: Rational) -> Self {
        Self(r)
    }
}

impl From<Integer> for ExactScalar {
    fn from(n: Integer) -> Self {
        Self(Rational::from(n))
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_integer(s: &str) -> Option<Integer> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Integer::from_str(s).ok()
}

impl FromStr for ExactScalar {
    type Err = Error;

    /// Accepts `n`, `p/q` and finite decimals such as `0.25` (read exactly).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational literal: {s:?}"));
        if let Some((num, den)) = s.split_once('/') {
            let num = parse_integer(num.trim()).ok_or_else(bad)?;
            let den = parse_integer(den.trim()).ok_or_else(bad)?;
            if den == 0 {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            return Ok(Self(Rational::from((num, den))));
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = int.starts_with('-');
            let int_digits = int.strip_prefix(['+', '-']).unwrap_or(int);
            if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let joined = format!("{}{}", if int_digits.is_empty() { "0" } else { int_digits }, frac);
            let mut num = Integer::from_str(&joined).map_err(|_| bad())?;
            if negative {
                num = -num;
            }
            let den = Integer::from(Integer::u_pow_u(10, frac.len() as u32));
            return Ok(Self(Rational::from((num, den))));
        }
        parse_integer(s).map(|n| Self(Rational::from(n))).ok_or_else(bad)
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                ExactScalar(Rational::from((&self.0).$method(&rhs.0)))
            }
        }
        impl $trait<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar(self.0.$method(rhs.0))
            }
        }
        impl $trait<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                ExactScalar(self.0.$method(&rhs.0))
            }
        }
        impl $trait<ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar(Rational::from((&self.0).$method(&rhs.0)))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        assert!(!rhs.is_zero(), "division by zero");
        ExactScalar(Rational::from(&self.0 / &rhs.0))
    }
}

impl Div<ExactScalar> for ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: ExactScalar) -> ExactScalar {
        &self / &rhs
    }
}

impl Div<&ExactScalar> for ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        &self / rhs
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-self.0)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(Rational::from(-&self.0))
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, rhs: &ExactScalar) {
        self.0 *= &rhs.0;
    }
}

impl std::iter::Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a ExactScalar> for ExactScalar {
    fn sum<I: Iterator<Item = &'a ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

/// Rising factorial `(q)_n = q (q+1) ... (q+n-1)`, with `(q)_0 = 1`.
pub fn pochhammer(q: &ExactScalar, n: usize) -> ExactScalar {
    let mut acc = Rational::from(1);
    for k in 0..n {
        acc *= Rational::from(&q.0 + k as u64);
    }
    ExactScalar(acc)
}

/// Hypergeometric parameters `(a, b, c)`, all strictly positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ParameterTriple {
    a: ExactScalar,
    b: ExactScalar,
    c: ExactScalar,
}

impl ParameterTriple {
    pub fn a(&self) -> &ExactScalar {
        &self.a
    }

    pub fn b(&self) -> &ExactScalar {
        &self.b
    }

    pub fn c(&self) -> &ExactScalar {
        &self.c
    }

    /// `ab/c`, the value of F'(0) and the recurring lower threshold.
    pub fn ab_over_c(&self) -> ExactScalar {
        &(&self.a * &self.b) / &self.c
    }

    /// `a + b - c`.
    pub fn excess(&self) -> ExactScalar {
        &(&self.a + &self.b) - &self.c
    }

    /// Triple with every parameter shifted by `k` (the parameters of the k-th derivative of F).
    pub fn shifted(&self, k: i64) -> ParameterTriple {
        ParameterTriple {
            a: self.a.add_int(k),
            b: self.b.add_int(k),
            c: self.c.add_int(k),
        }
    }

    pub fn to_f64(&self) -> (f64, f64, f64) {
        (self.a.to_f64(), self.b.to_f64(), self.c.to_f64())
    }
}

impl fmt::Display for ParameterTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Validates positivity and builds a [`ParameterTriple`].
pub fn make_params(a: ExactScalar, b: ExactScalar, c: ExactScalar) -> Result<ParameterTriple> {
    for (name, value) in [("a", &a), ("b", &b), ("c", &c)] {
        if !value.is_positive() {
            return Err(Error::NonPositiveParameter {
                name,
                value: value.clone(),
            });
        }
    }
    Ok(ParameterTriple { a, b, c })
}
