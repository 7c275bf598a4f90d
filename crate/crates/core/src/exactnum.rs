//! Exact scalars: big rationals, the quadratic field ℚ(√d), and Pochhammer symbols.
//!
//! Every value in the crate is carried as a [`Rational`] except the handful of
//! series whose parameters involve a square root; those run over [`QuadExt`].
//! Generic code (polynomial evaluation, hypergeometric sums) is written against
//! the [`Scalar`] trait so the same routine serves both fields.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(s.to_string());
    let t = s.trim();
    let (p, q) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let p = BigInt::from_str(p).map_err(|_| bad())?;
    let q = BigInt::from_str(q).map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

/// Exact square root of a rational, if it has one.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

pub fn factorial(n: usize) -> Rational {
    pochhammer(&Rational::one(), n)
}

pub fn pow2(n: usize) -> Rational {
    Rational::from_integer(BigInt::one() << n)
}

/// `(-1)^n` as a rational.
pub fn sign(n: usize) -> Rational {
    if n % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Common interface of the two exact fields.
///
/// `lift` embeds a rational into the same field as `self`; for [`QuadExt`] this
/// is what carries the radicand along, since there is no global `d`.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn lift(&self, r: &Rational) -> Self;

    fn is_zero_value(&self) -> bool;

    fn zero_like(&self) -> Self {
        self.lift(&Rational::zero())
    }

    fn one_like(&self) -> Self {
        self.lift(&Rational::one())
    }

    fn add_rational(&self, r: &Rational) -> Self {
        self.clone() + self.lift(r)
    }
}

impl Scalar for Rational {
    fn lift(&self, r: &Rational) -> Self {
        r.clone()
    }

    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }

    fn add_rational(&self, r: &Rational) -> Self {
        self + r
    }
}

/// The rising factorial `(a)_k = a (a+1) ... (a+k-1)`, with `(a)_0 = 1`.
pub fn pochhammer<S: Scalar>(a: &S, k: usize) -> S {
    let mut acc = a.one_like();
    for j in 0..k {
        acc = acc * a.add_rational(&rat(j as i64));
    }
    acc
}

/// `a + b√d` in the quadratic field ℚ(√d).
///
/// `d` is stored per element and must not be the square of a rational.
/// Binary operators panic when the radicands differ; use [`QuadExt::same_field`]
/// to check beforehand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: Rational,
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, d: Rational) -> Result<Self> {
        if rational_sqrt(&d).is_some() {
            return Err(Error::SquareRadicand(d.to_string()));
        }
        Ok(QuadExt { a, b, d })
    }

    /// The element `√d` itself.
    pub fn sqrt_of(d: Rational) -> Result<Self> {
        QuadExt::new(Rational::zero(), Rational::one(), d)
    }

    pub fn from_rational(a: Rational, d: &Rational) -> Result<Self> {
        QuadExt::new(a, Rational::zero(), d.clone())
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> &Rational {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Result<Rational> {
        if self.is_rational() {
            Ok(self.a.clone())
        } else {
            Err(Error::NotRational(self.to_string()))
        }
    }

    pub fn same_field(&self, other: &QuadExt) -> bool {
        self.d == other.d
    }

    pub fn conj(&self) -> QuadExt {
        QuadExt { a: self.a.clone(), b: -&self.b, d: self.d.clone() }
    }

    /// `a² − d b²`, the product of the element with its conjugate.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.d * &self.b * &self.b
    }

    pub fn inverse(&self) -> Result<QuadExt> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QuadExt { a: &self.a / &n, b: -&self.b / &n, d: self.d.clone() })
    }

    fn check_field(&self, other: &QuadExt) {
        if !self.same_field(other) {
            panic!("{}", Error::FieldMismatch(self.d.to_string(), other.d.to_string()));
        }
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})+({})*sqrt({})", self.a, self.b, self.d)
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        self.check_field(&rhs);
        QuadExt { a: self.a + rhs.a, b: self.b + rhs.b, d: self.d }
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        self.check_field(&rhs);
        QuadExt { a: self.a - rhs.a, b: self.b - rhs.b, d: self.d }
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        self.check_field(&rhs);
        let a = &self.a * &rhs.a + &self.d * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QuadExt { a, b, d: self.d }
    }
}

impl Div for QuadExt {
    type Output = QuadExt;
    fn div(self, rhs: QuadExt) -> QuadExt {
        self.check_field(&rhs);
        let inv = rhs.inverse().expect("division by zero in QuadExt");
        self * inv
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Scalar for QuadExt {
    fn lift(&self, r: &Rational) -> Self {
        QuadExt { a: r.clone(), b: Rational::zero(), d: self.d.clone() }
    }

    fn is_zero_value(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn add_rational(&self, r: &Rational) -> Self {
        QuadExt { a: &self.a + r, b: self.b.clone(), d: self.d.clone() }
    }
}
