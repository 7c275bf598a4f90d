//! Closed-form data for the supported orthogonal polynomial families.
//!
//! Normalizations: Jacobi `P_n^{(α,β)}` (with Gegenbauer, Legendre and the two
//! Chebyshev kinds as special Jacobi parameters), Hermite `H_n`, Laguerre
//! `L_n^α`, and Hahn `Q_n(x; α, β, N)` as a terminating ₃F₂. Norms are always
//! exposed relative to the total mass, `h_n / h_0`, which is rational for
//! rational parameters.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{factorial, pochhammer, pow2, rat, ratio, sign, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Jacobi { alpha: Rational, beta: Rational },
    Gegenbauer { alpha: Rational },
    Legendre,
    ChebyshevT,
    ChebyshevU,
    Hermite,
    Laguerre { alpha: Rational },
    Hahn { alpha: Rational, beta: Rational, big_n: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Measure {
    ContinuousEven,
    Continuous,
    /// Point masses on `{0, …, N}`.
    Discrete(usize),
}

/// The underlying closed-form engine a kind resolves to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Engine {
    Jacobi,
    Hermite,
    Laguerre,
    Hahn,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    kind: FamilyKind,
    alpha: Rational,
    beta: Rational,
    big_n: Option<usize>,
    measure: Measure,
}

/// Points at which a family has a closed-form value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialPoint {
    /// `p_n(0)`
    Zero,
    /// `p_n'(0)`
    DerivAtZero,
    /// `p_n(1)`
    One,
    /// `p_n(−1)`
    MinusOne,
    /// `p_n(N)`
    BigN,
    /// `p_n(N−1)`
    BigNMinusOne,
}

impl SpecialPoint {
    pub const ALL: [SpecialPoint; 6] = [
        SpecialPoint::Zero,
        SpecialPoint::DerivAtZero,
        SpecialPoint::One,
        SpecialPoint::MinusOne,
        SpecialPoint::BigN,
        SpecialPoint::BigNMinusOne,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialValues {
    pub lead: Rational,
    pub norm_ratio: Rational,
    pub at_zero: Option<Rational>,
    pub deriv_at_zero: Option<Rational>,
    pub at_one: Option<Rational>,
    pub at_minus_one: Option<Rational>,
    pub at_big_n: Option<Rational>,
    pub at_big_n_minus_one: Option<Rational>,
}

fn check_gt_minus_one(name: &str, v: &Rational) -> Result<()> {
    if *v <= rat(-1) {
        return Err(Error::ParameterRange(format!("{name} = {v} must exceed -1")));
    }
    Ok(())
}

impl FamilySpec {
    /// Validates the parameters of `kind`.
    pub fn new(kind: FamilyKind) -> Result<Self> {
        let half = ratio(1, 2);
        let (alpha, beta, big_n, measure) = match &kind {
            FamilyKind::Jacobi { alpha, beta } => {
                check_gt_minus_one("alpha", alpha)?;
                check_gt_minus_one("beta", beta)?;
                let measure = if alpha == beta { Measure::ContinuousEven } else { Measure::Continuous };
                (alpha.clone(), beta.clone(), None, measure)
            }
            FamilyKind::Gegenbauer { alpha } => {
                check_gt_minus_one("alpha", alpha)?;
                (alpha.clone(), alpha.clone(), None, Measure::ContinuousEven)
            }
            FamilyKind::Legendre => (rat(0), rat(0), None, Measure::ContinuousEven),
            FamilyKind::ChebyshevT => (-half.clone(), -half, None, Measure::ContinuousEven),
            FamilyKind::ChebyshevU => (half.clone(), half, None, Measure::ContinuousEven),
            FamilyKind::Hermite => (rat(0), rat(0), None, Measure::ContinuousEven),
            FamilyKind::Laguerre { alpha } => {
                check_gt_minus_one("alpha", alpha)?;
                (alpha.clone(), rat(0), None, Measure::Continuous)
            }
            FamilyKind::Hahn { alpha, beta, big_n } => {
                check_gt_minus_one("alpha", alpha)?;
                check_gt_minus_one("beta", beta)?;
                if *big_n < 1 {
                    return Err(Error::ParameterRange(format!("N = {big_n} must be at least 1")));
                }
                (alpha.clone(), beta.clone(), Some(*big_n), Measure::Discrete(*big_n))
            }
        };
        Ok(FamilySpec { kind, alpha, beta, big_n, measure })
    }

    pub fn jacobi(alpha: Rational, beta: Rational) -> Result<Self> {
        FamilySpec::new(FamilyKind::Jacobi { alpha, beta })
    }

    pub fn gegenbauer(alpha: Rational) -> Result<Self> {
        FamilySpec::new(FamilyKind::Gegenbauer { alpha })
    }

    pub fn legendre() -> Self {
        FamilySpec::new(FamilyKind::Legendre).expect("fixed parameters")
    }

    pub fn chebyshev_t() -> Self {
        FamilySpec::new(FamilyKind::ChebyshevT).expect("fixed parameters")
    }

    pub fn chebyshev_u() -> Self {
        FamilySpec::new(FamilyKind::ChebyshevU).expect("fixed parameters")
    }

    pub fn hermite() -> Self {
        FamilySpec::new(FamilyKind::Hermite).expect("fixed parameters")
    }

    pub fn laguerre(alpha: Rational) -> Result<Self> {
        FamilySpec::new(FamilyKind::Laguerre { alpha })
    }

    pub fn hahn(alpha: Rational, beta: Rational, big_n: usize) -> Result<Self> {
        FamilySpec::new(FamilyKind::Hahn { alpha, beta, big_n })
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn big_n(&self) -> Option<usize> {
        self.big_n
    }

    pub fn measure(&self) -> Measure {
        self.measure
    }

    pub fn is_even(&self) -> bool {
        self.measure == Measure::ContinuousEven
    }

    pub fn is_discrete(&self) -> bool {
        matches!(self.measure, Measure::Discrete(_))
    }

    /// Largest degree for which the family is defined (`N` for Hahn).
    pub fn max_degree(&self) -> Option<usize> {
        self.big_n
    }

    fn engine(&self) -> Engine {
        match self.kind {
            FamilyKind::Hermite => Engine::Hermite,
            FamilyKind::Laguerre { .. } => Engine::Laguerre,
            FamilyKind::Hahn { .. } => Engine::Hahn,
            _ => Engine::Jacobi,
        }
    }

    pub fn check_degree(&self, n: usize) -> Result<()> {
        match self.big_n {
            Some(max) if n > max => Err(Error::DegreeOutOfRange { degree: n, max }),
            _ => Ok(()),
        }
    }

    fn undefined(&self, what: impl Into<String>) -> Error {
        Error::Undefined { what: what.into(), family: self.to_string() }
    }

    /// `α + β + 1`, the parameter that recurs in Jacobi and Hahn formulas.
    fn s(&self) -> Rational {
        &self.alpha + &self.beta + rat(1)
    }

    fn big_n_rat(&self) -> Rational {
        rat(self.big_n.unwrap_or(0) as i64)
    }

    /// Leading coefficient `k_n` of `p_n`.
    pub fn lead_coeff(&self, n: usize) -> Rational {
        let nr = rat(n as i64);
        match self.engine() {
            Engine::Jacobi => pochhammer(&(&nr + self.s()), n) / (pow2(n) * factorial(n)),
            Engine::Hermite => pow2(n),
            Engine::Laguerre => sign(n) / factorial(n),
            Engine::Hahn => {
                pochhammer(&(&nr + self.s()), n)
                    / (pochhammer(&(&self.alpha + rat(1)), n) * pochhammer(&-self.big_n_rat(), n))
            }
        }
    }

    /// `h_n / h_0`.
    pub fn norm_ratio(&self, n: usize) -> Rational {
        if n == 0 {
            return Rational::one();
        }
        let nr = rat(n as i64);
        let a1 = &self.alpha + rat(1);
        let b1 = &self.beta + rat(1);
        match self.engine() {
            Engine::Jacobi => {
                pochhammer(&a1, n) * pochhammer(&b1, n)
                    / (factorial(n)
                        * (rat(2 * n as i64) + self.s())
                        * pochhammer(&(self.s() + rat(1)), n - 1))
            }
            Engine::Hermite => pow2(n) * factorial(n),
            Engine::Laguerre => pochhammer(&a1, n) / factorial(n),
            Engine::Hahn => {
                let s = self.s();
                let big_n = self.big_n_rat();
                (&nr + &s) / (rat(2 * n as i64) + &s)
                    * sign(n)
                    * factorial(n)
                    / pochhammer(&-big_n.clone(), n)
                    * pochhammer(&b1, n)
                    / pochhammer(&a1, n)
                    * pochhammer(&(big_n + &s + rat(1)), n)
                    / pochhammer(&(s + rat(1)), n)
            }
        }
    }

    /// Total mass of a Hahn weight, `h_0 = (α+β+2)_N / N!`.
    pub fn hahn_total_mass(&self) -> Result<Rational> {
        let big_n = self.big_n.ok_or_else(|| self.undefined("total mass"))?;
        Ok(pochhammer(&(self.s() + rat(1)), big_n) / factorial(big_n))
    }

    /// Hahn weight `w_x = (α+1)_x/x! · (β+1)_{N−x}/(N−x)!` for `0 ≤ x ≤ N`.
    pub fn hahn_weight(&self, x: usize) -> Result<Rational> {
        let big_n = self.big_n.ok_or_else(|| self.undefined("point weight"))?;
        if x > big_n {
            return Err(Error::ParameterRange(format!("weight index {x} exceeds N = {big_n}")));
        }
        Ok(pochhammer(&(&self.alpha + rat(1)), x) / factorial(x)
            * pochhammer(&(&self.beta + rat(1)), big_n - x)
            / factorial(big_n - x))
    }

    fn explicit_b(&self, n: usize) -> Rational {
        let nr = rat(n as i64);
        match self.engine() {
            Engine::Hermite => Rational::zero(),
            Engine::Jacobi if self.alpha == self.beta => Rational::zero(),
            Engine::Jacobi => {
                if n == 0 {
                    return (&self.alpha - &self.beta) / rat(2);
                }
                let s = self.s();
                (&self.alpha * &self.alpha - &self.beta * &self.beta) * (rat(2 * n as i64) + &s)
                    / (rat(2) * (&nr + rat(1)) * (&nr + &s) * (rat(2 * n as i64) + s - rat(1)))
            }
            Engine::Laguerre => (rat(2 * n as i64) + &self.alpha + rat(1)) / (nr + rat(1)),
            Engine::Hahn => {
                // p_{n+1} = ((A+C−x) p_n − C p_{n−1})/A in the usual Hahn recurrence
                let s = self.s();
                let big_n = self.big_n_rat();
                let a_up = if n == 0 {
                    (&self.alpha + rat(1)) * &big_n / (&s + rat(1))
                } else {
                    let two_n = rat(2 * n as i64);
                    (&nr + &s) * (&nr + &self.alpha + rat(1)) * (&big_n - &nr)
                        / ((&two_n + &s) * (&two_n + &s + rat(1)))
                };
                let c_down = if n == 0 {
                    Rational::zero()
                } else {
                    let two_n = rat(2 * n as i64);
                    &nr * (&nr + &s + &big_n) * (&nr + &self.beta)
                        / ((&two_n + &s - rat(1)) * (&two_n + &s))
                };
                rat(1) + c_down / a_up
            }
        }
    }

    /// Three-term recurrence coefficients `(A_n, B_n, C_n)` of
    /// `p_{n+1} = (A_n x + B_n) p_n − C_n p_{n−1}`.
    ///
    /// `A_n` and `C_n` come from the leading coefficients and norms; `C_0` is 0.
    pub fn recur_coeffs(&self, n: usize) -> Result<(Rational, Rational, Rational)> {
        if let Some(big_n) = self.big_n {
            if n + 1 > big_n {
                return Err(Error::DegreeOutOfRange { degree: n + 1, max: big_n });
            }
        }
        let k_n = self.lead_coeff(n);
        let k_next = self.lead_coeff(n + 1);
        let a = &k_next / &k_n;
        let c = if n == 0 {
            Rational::zero()
        } else {
            let k_prev = self.lead_coeff(n - 1);
            k_prev * k_next * self.norm_ratio(n) / (&k_n * &k_n * self.norm_ratio(n - 1))
        };
        Ok((a, self.explicit_b(n), c))
    }

    /// Closed-form value of `p_n` (or `p_n'`) at a special point.
    pub fn special_value(&self, n: usize, point: SpecialPoint) -> Result<Rational> {
        self.check_degree(n)?;
        let nr = rat(n as i64);
        let a1 = &self.alpha + rat(1);
        let b1 = &self.beta + rat(1);
        let undefined = || self.undefined(format!("{point:?} value"));
        match (self.engine(), point) {
            (Engine::Jacobi, SpecialPoint::One) => Ok(pochhammer(&a1, n) / factorial(n)),
            (Engine::Jacobi, SpecialPoint::MinusOne) => Ok(sign(n) * pochhammer(&b1, n) / factorial(n)),
            (Engine::Jacobi, SpecialPoint::Zero) if self.is_even() => {
                if n % 2 == 1 {
                    return Ok(Rational::zero());
                }
                let m = n / 2;
                Ok(sign(m) * pochhammer(&(&self.alpha + rat(m as i64 + 1)), m) / (pow2(2 * m) * factorial(m)))
            }
            (Engine::Jacobi, SpecialPoint::DerivAtZero) if self.is_even() => {
                if n % 2 == 0 {
                    return Ok(Rational::zero());
                }
                let m = n / 2;
                Ok(sign(m) * pochhammer(&(&self.alpha + rat(m as i64 + 1)), m + 1)
                    / (pow2(2 * m) * factorial(m)))
            }
            (Engine::Hermite, SpecialPoint::Zero) => {
                if n % 2 == 1 {
                    return Ok(Rational::zero());
                }
                let m = n / 2;
                Ok(sign(m) * pow2(2 * m) * pochhammer(&ratio(1, 2), m))
            }
            (Engine::Hermite, SpecialPoint::DerivAtZero) => {
                if n % 2 == 0 {
                    return Ok(Rational::zero());
                }
                let even = self.special_value(n - 1, SpecialPoint::Zero)?;
                Ok(rat(2) * nr * even)
            }
            (Engine::Laguerre, SpecialPoint::Zero) => Ok(pochhammer(&a1, n) / factorial(n)),
            (Engine::Hahn, SpecialPoint::Zero) => Ok(Rational::one()),
            (Engine::Hahn, SpecialPoint::BigN) => Ok(sign(n) * pochhammer(&b1, n) / pochhammer(&a1, n)),
            (Engine::Hahn, SpecialPoint::BigNMinusOne) => {
                let at_n = self.special_value(n, SpecialPoint::BigN)?;
                Ok(at_n * (rat(1) - &nr * (&nr + self.s()) / (&b1 * self.big_n_rat())))
            }
            _ => Err(undefined()),
        }
    }

    pub fn special_values(&self, n: usize) -> Result<SpecialValues> {
        self.check_degree(n)?;
        let get = |p| self.special_value(n, p).ok();
        Ok(SpecialValues {
            lead: self.lead_coeff(n),
            norm_ratio: self.norm_ratio(n),
            at_zero: get(SpecialPoint::Zero),
            deriv_at_zero: get(SpecialPoint::DerivAtZero),
            at_one: get(SpecialPoint::One),
            at_minus_one: get(SpecialPoint::MinusOne),
            at_big_n: get(SpecialPoint::BigN),
            at_big_n_minus_one: get(SpecialPoint::BigNMinusOne),
        })
    }

    /// Factor turning the Jacobi-normalized `p_n` into the classical Chebyshev
    /// `T_n` or `U_n`; `None` for other kinds.
    pub fn rescale(&self, n: usize) -> Option<Rational> {
        match self.kind {
            FamilyKind::ChebyshevT => Some(factorial(n) / pochhammer(&ratio(1, 2), n)),
            FamilyKind::ChebyshevU => Some(factorial(n + 1) / pochhammer(&ratio(3, 2), n)),
            _ => None,
        }
    }

    /// `h_0 / π` for the Chebyshev kinds, whose total masses are `π` and `π/2`.
    pub fn h0_over_pi(&self) -> Option<Rational> {
        match self.kind {
            FamilyKind::ChebyshevT => Some(rat(1)),
            FamilyKind::ChebyshevU => Some(ratio(1, 2)),
            _ => None,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FamilyKind::Jacobi { alpha, beta } => write!(f, "jacobi({alpha},{beta})"),
            FamilyKind::Gegenbauer { alpha } => write!(f, "gegenbauer({alpha})"),
            FamilyKind::Legendre => write!(f, "legendre"),
            FamilyKind::ChebyshevT => write!(f, "chebyshev_t"),
            FamilyKind::ChebyshevU => write!(f, "chebyshev_u"),
            FamilyKind::Hermite => write!(f, "hermite"),
            FamilyKind::Laguerre { alpha } => write!(f, "laguerre({alpha})"),
            FamilyKind::Hahn { alpha, beta, big_n } => write!(f, "hahn({alpha},{beta},{big_n})"),
        }
    }
}
