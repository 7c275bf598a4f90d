//! The integral `I_n = ∫ (p_{2n+1}(x)/x)² dμ(x)` for even measures, reported
//! as `I_n/h_0` and computed by four independent routes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::basis::{inner_product_n, Basis};
use crate::cdkernel::kernel_section;
use crate::check::Equality;
use crate::error::{Error, Result};
use crate::exactnum::{factorial, pochhammer, pow2, rat, Rational};
use crate::families::{FamilyKind, FamilySpec, SpecialPoint};
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PsMethod {
    Recurrence,
    Direct,
    CdSum,
    ClosedForm,
}

impl PsMethod {
    pub const ALL: [PsMethod; 4] = [PsMethod::Recurrence, PsMethod::Direct, PsMethod::CdSum, PsMethod::ClosedForm];

    pub fn name(self) -> &'static str {
        match self {
            PsMethod::Recurrence => "recurrence",
            PsMethod::Direct => "direct",
            PsMethod::CdSum => "cd_sum",
            PsMethod::ClosedForm => "closed_form",
        }
    }
}

impl fmt::Display for PsMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PsMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PsMethod::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown method {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsResult {
    pub n: usize,
    /// `I_n / h_0`.
    pub value: Rational,
    pub method: PsMethod,
}

fn require_even(family: &FamilySpec) -> Result<()> {
    if family.is_even() {
        Ok(())
    } else {
        Err(Error::Undefined { what: "integral of (p_{2n+1}/x)^2".into(), family: family.to_string() })
    }
}

/// `k_{2n+1} (h_{2n}/h_0) / (k_{2n} p_{2n}(0))`, the inverse of the constant
/// relating `h_0 K_{2n}(·, 0)` to `p_{2n+1}(x)/x`.
fn inverse_cd_constant(family: &FamilySpec, n: usize, p2n_at_zero: &Rational) -> Rational {
    family.lead_coeff(2 * n + 1) * family.norm_ratio(2 * n) / (family.lead_coeff(2 * n) * p2n_at_zero)
}

/// `I_0/h_0, …, I_nmax/h_0` by one method. Recurrence and kernel-sum methods
/// carry their running state forward, so the whole prefix costs one pass.
pub fn ps_sequence(family: &FamilySpec, nmax: usize, method: PsMethod) -> Result<Vec<Rational>> {
    require_even(family)?;
    match method {
        PsMethod::Recurrence => {
            let mut out = Vec::with_capacity(nmax + 1);
            let k1 = family.lead_coeff(1);
            out.push(&k1 * &k1);
            for n in 1..=nmax {
                let (a, _, c) = family.recur_coeffs(2 * n)?;
                let next = &c * &c * &out[n - 1] + &a * &a * family.norm_ratio(2 * n);
                out.push(next);
            }
            Ok(out)
        }
        PsMethod::CdSum => {
            let basis = Basis::new(family, 2 * nmax + 1)?;
            let zero = rat(0);
            let mut partial = rat(0);
            let mut out = Vec::with_capacity(nmax + 1);
            for n in 0..=nmax {
                let v = basis.poly(2 * n).eval(&zero);
                partial += &v * &v / basis.norm(2 * n);
                let c = inverse_cd_constant(family, n, &v);
                out.push(&c * &c * &partial);
            }
            Ok(out)
        }
        PsMethod::Direct => (0..=nmax).map(|n| ps_direct(family, n)).collect(),
        PsMethod::ClosedForm => (0..=nmax).map(|n| ps_closed_form(family, n)).collect(),
    }
}

fn ps_direct(family: &FamilySpec, n: usize) -> Result<Rational> {
    let odd = Basis::new(family, 2 * n + 1)?.poly(2 * n + 1).deflate_at_zero()?;
    inner_product_n(&odd, &odd, family)
}

/// `I_n/h_0` by a single method.
pub fn ps_integral(family: &FamilySpec, n: usize, method: PsMethod) -> Result<PsResult> {
    require_even(family)?;
    let value = match method {
        PsMethod::Direct => ps_direct(family, n)?,
        PsMethod::ClosedForm => ps_closed_form(family, n)?,
        _ => ps_sequence(family, n, method)?.pop().expect("sequence has n+1 entries"),
    };
    Ok(PsResult { n, value, method })
}

/// `k_{2n+1} (h_{2n}/h_0) p'_{2n+1}(0) / (k_{2n} p_{2n}(0))` from the closed-form
/// special values.
pub fn ps_closed_form(family: &FamilySpec, n: usize) -> Result<Rational> {
    require_even(family)?;
    let p0 = family.special_value(2 * n, SpecialPoint::Zero)?;
    let d0 = family.special_value(2 * n + 1, SpecialPoint::DerivAtZero)?;
    Ok(inverse_cd_constant(family, n, &p0) * d0)
}

/// `(α+1)_{2n+1}² / ((2α+2)_{2n} (2n+1)!)`, the Gegenbauer value of `I_n/h_0`.
pub fn gegenbauer_closed_form(alpha: &Rational, n: usize) -> Rational {
    let a = pochhammer(&(alpha + rat(1)), 2 * n + 1);
    &a * &a / (pochhammer(&(alpha * rat(2) + rat(2)), 2 * n) * factorial(2 * n + 1))
}

/// `2^{2n+2} (2n+1)!`, the Hermite value of `I_n/h_0`.
pub fn hermite_closed_form(n: usize) -> Rational {
    pow2(2 * n + 2) * factorial(2 * n + 1)
}

/// For the Chebyshev aliases: `I_n` of the classically normalized `T_n` or
/// `U_n`, in units of `π`.
pub fn chebyshev_in_pi_units(family: &FamilySpec, value: &Rational, n: usize) -> Result<Rational> {
    let undefined = || Error::Undefined { what: "Chebyshev rescaling".into(), family: family.to_string() };
    let r = family.rescale(2 * n + 1).ok_or_else(undefined)?;
    let h0 = family.h0_over_pi().ok_or_else(undefined)?;
    Ok(&r * &r * value * h0)
}

/// `(k_{2n} p_{2n}(0) / (k_{2n+1} h_{2n}/h_0)) ⟨p, p_{2n+1}/x⟩/h_0` against `p(0)`.
pub fn ps_projection_check(family: &FamilySpec, n: usize, p: &Poly) -> Result<Equality<Rational>> {
    require_even(family)?;
    if let Some(d) = p.degree() {
        if d > 2 * n + 1 {
            return Err(Error::DegreeOutOfRange { degree: d, max: 2 * n + 1 });
        }
    }
    let basis = Basis::new(family, 2 * n + 1)?;
    let odd = basis.poly(2 * n + 1).deflate_at_zero()?;
    let c = inverse_cd_constant(family, n, &basis.poly(2 * n).eval(&rat(0)));
    Ok(Equality::new(basis.inner_product(p, &odd)? / c, p.eval(&rat(0))))
}

/// `h_0 K_{2n}(·, 0)` against the rescaled `p_{2n+1}(x)/x`, after confirming
/// that `h_0 K_{2n+1}(·, 0)` has the same coefficients.
pub fn ps_cd_proportionality(family: &FamilySpec, n: usize) -> Result<Equality<Poly>> {
    require_even(family)?;
    let basis = Basis::new(family, 2 * n + 1)?;
    let zero = rat(0);
    let even = kernel_section(&basis, 2 * n, &zero);
    let odd_order = kernel_section(&basis, 2 * n + 1, &zero);
    Equality::new(odd_order, even.clone()).verify("odd-order kernel at 0")?;
    let c = inverse_cd_constant(family, n, &basis.poly(2 * n).eval(&zero));
    let rhs = basis.poly(2 * n + 1).deflate_at_zero()?.scale(&(rat(1) / c));
    Ok(Equality::new(even, rhs))
}

/// The two coefficients of the recurrence rewritten from the kernel sum,
/// against `(C_{2n}², A_{2n}² h_{2n}/h_0)` from the three-term recurrence. `n ≥ 1`.
pub fn recurrence_form_check(family: &FamilySpec, n: usize) -> Result<[Equality<Rational>; 2]> {
    require_even(family)?;
    if n == 0 {
        return Err(Error::DegreeOutOfRange { degree: 0, max: 0 });
    }
    let k = |m: usize| family.lead_coeff(m);
    let h = |m: usize| family.norm_ratio(m);
    let p0 = |m: usize| family.special_value(m, SpecialPoint::Zero);
    let ratio = k(2 * n - 2) * k(2 * n + 1) * h(2 * n) * p0(2 * n - 2)?
        / (k(2 * n - 1) * k(2 * n) * h(2 * n - 2) * p0(2 * n)?);
    let lead = k(2 * n + 1) / k(2 * n);
    let (a, _, c) = family.recur_coeffs(2 * n)?;
    Ok([
        Equality::new(&ratio * &ratio, &c * &c),
        Equality::new(&lead * &lead * h(2 * n), &a * &a * h(2 * n)),
    ])
}

/// Known closed form of `I_n/h_0` for the even families that have one.
pub fn known_value(family: &FamilySpec, n: usize) -> Option<Rational> {
    match family.kind() {
        FamilyKind::Hermite => Some(hermite_closed_form(n)),
        FamilyKind::Legendre => Some(rat(1)),
        FamilyKind::Jacobi { alpha, beta } if alpha == beta => Some(gegenbauer_closed_form(alpha, n)),
        FamilyKind::Gegenbauer { alpha } => Some(gegenbauer_closed_form(alpha, n)),
        FamilyKind::ChebyshevT => Some(gegenbauer_closed_form(&-crate::exactnum::ratio(1, 2), n)),
        FamilyKind::ChebyshevU => Some(gegenbauer_closed_form(&crate::exactnum::ratio(1, 2), n)),
        _ => None,
    }
}
