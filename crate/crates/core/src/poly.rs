//! Dense univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{rat, Rational, Scalar};

/// Coefficient `i` multiplies `x^i`. Trailing zeros are always trimmed, so the
/// zero polynomial has no coefficients at all.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Poly::from_ints(&[0, 1])
    }

    /// `x + c`.
    pub fn linear(c: Rational) -> Self {
        Poly::new(vec![c, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Horner evaluation in whatever field `x` lives in.
    pub fn eval<S: Scalar>(&self, x: &S) -> S {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + x.lift(c);
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    /// `p(x + c)`.
    pub fn shift(&self, c: &Rational) -> Poly {
        self.compose(&Poly::linear(c.clone()))
    }

    /// `p(q(x))`.
    pub fn compose(&self, q: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Forward difference `p(x+1) − p(x)`.
    pub fn forward_difference(&self) -> Poly {
        &self.shift(&Rational::one()) - self
    }

    /// Returns `q` with `x q(x) = p(x)`; fails unless `p(0) = 0`.
    pub fn deflate_at_zero(&self) -> Result<Poly> {
        match self.coeffs.first() {
            None => Ok(Poly::zero()),
            Some(c0) if !c0.is_zero() => Err(Error::NonzeroConstantTerm(c0.to_string())),
            Some(_) => Ok(Poly::new(self.coeffs[1..].to_vec())),
        }
    }

    /// The constant `r` with `self = r · other`, if there is one.
    pub fn proportionality(&self, other: &Poly) -> Option<Rational> {
        if self.degree() != other.degree() {
            return None;
        }
        if other.is_zero() {
            return Some(Rational::zero());
        }
        let r = self.lead() / other.lead();
        (other.scale(&r) == *self).then_some(r)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;
    use proptest::prelude::*;

    #[test]
    fn trims_trailing_zeros() {
        let p = Poly::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(Poly::from_ints(&[0, 0]).degree(), None);
    }

    #[test]
    fn eval_examples() {
        assert_eq!(Poly::zero().eval(&ratio(3, 7)), rat(0));
        assert_eq!(Poly::from_ints(&[-1, 0, 1]).eval(&ratio(3, 2)), ratio(5, 4));
        assert_eq!(Poly::from_ints(&[7]).eval(&ratio(-9, 2)), rat(7));
    }

    #[test]
    fn deflate_examples() {
        assert_eq!(Poly::from_ints(&[0, -1, 0, 1]).deflate_at_zero().unwrap(), Poly::from_ints(&[-1, 0, 1]));
        assert_eq!(Poly::x().deflate_at_zero().unwrap(), Poly::one());
        assert!(matches!(
            Poly::from_ints(&[1, 0, 1]).deflate_at_zero(),
            Err(Error::NonzeroConstantTerm(_))
        ));
    }

    #[test]
    fn shift_and_difference() {
        // (x+1)^2 - x^2 = 2x + 1
        let sq = Poly::from_ints(&[0, 0, 1]);
        assert_eq!(sq.forward_difference(), Poly::from_ints(&[1, 2]));
        assert_eq!(sq.shift(&rat(-1)), Poly::from_ints(&[1, -2, 1]));
        assert_eq!(Poly::one().forward_difference(), Poly::zero());
    }

    #[test]
    fn derivative_and_compose() {
        let p = Poly::from_ints(&[1, 0, 3, 4]);
        assert_eq!(p.derivative(), Poly::from_ints(&[0, 6, 12]));
        let q = Poly::from_ints(&[-1, 0, 2]);
        let x = ratio(2, 3);
        assert_eq!(p.compose(&q).eval(&x), p.eval(&q.eval(&x)));
    }

    #[test]
    fn proportionality_detection() {
        let p = Poly::from_ints(&[2, 4, 6]);
        assert_eq!(p.proportionality(&Poly::from_ints(&[1, 2, 3])), Some(rat(2)));
        assert_eq!(p.proportionality(&Poly::from_ints(&[1, 2, 4])), None);
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-20i64..20, 1i64..9), 0..8)
            .prop_map(|v| Poly::new(v.into_iter().map(|(p, q)| ratio(p, q)).collect()))
    }

    proptest! {
        #[test]
        fn deflate_inverts_multiplication_by_x(q in small_poly()) {
            prop_assert_eq!((&Poly::x() * &q).deflate_at_zero().unwrap(), q);
        }

        #[test]
        fn product_evaluates_pointwise(p in small_poly(), q in small_poly(), x in (-9i64..9, 1i64..5)) {
            let x = ratio(x.0, x.1);
            prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
            prop_assert_eq!((&p - &q).eval(&x), p.eval(&x) - q.eval(&x));
        }
    }
}
