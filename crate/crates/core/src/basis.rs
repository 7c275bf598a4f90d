//! Generating a family from its recurrence, expanding in it, and exact
//! `h_0`-normalized inner products.
//!
//! Continuous measures are integrated without quadrature: both factors are
//! expanded in the orthogonal basis and `⟨p, q⟩/h_0 = Σ a_k b_k h_k/h_0`.
//! Discrete (Hahn) measures are summed directly with the exact weights.

use num_traits::Zero;

use crate::check::Equality;
use crate::error::{Error, Result};
use crate::exactnum::{rat, Rational};
use crate::families::{FamilySpec, SpecialPoint};
use crate::poly::Poly;

/// Coefficients `a_k` of `p = Σ a_k p_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisCoeffs {
    pub values: Vec<Rational>,
}

/// Returns `p_0, …, p_nmax` from the three-term recurrence.
pub fn generate_ops(family: &FamilySpec, nmax: usize) -> Result<Vec<Poly>> {
    family.check_degree(nmax)?;
    let x = Poly::x();
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(Poly::one());
    for n in 0..nmax {
        let (a, b, c) = family.recur_coeffs(n)?;
        let step = &(&x.scale(&a) + &Poly::constant(b)) * &out[n];
        let next = if n == 0 { step } else { &step - &out[n - 1].scale(&c) };
        out.push(next);
    }
    Ok(out)
}

/// A family together with its first few polynomials, so repeated expansions
/// and inner products do not regenerate them.
#[derive(Clone, Debug)]
pub struct Basis {
    family: FamilySpec,
    polys: Vec<Poly>,
    norms: Vec<Rational>,
}

impl Basis {
    pub fn new(family: &FamilySpec, nmax: usize) -> Result<Self> {
        let polys = generate_ops(family, nmax)?;
        let norms = (0..=nmax).map(|n| family.norm_ratio(n)).collect();
        Ok(Basis { family: family.clone(), polys, norms })
    }

    pub fn family(&self) -> &FamilySpec {
        &self.family
    }

    pub fn nmax(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn poly(&self, n: usize) -> &Poly {
        &self.polys[n]
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    /// `h_n / h_0`.
    pub fn norm(&self, n: usize) -> &Rational {
        &self.norms[n]
    }

    fn check(&self, p: &Poly) -> Result<()> {
        match p.degree() {
            Some(d) if d > self.nmax() => Err(Error::DegreeOutOfRange { degree: d, max: self.nmax() }),
            _ => Ok(()),
        }
    }

    /// Top-down elimination of leading terms.
    pub fn expand(&self, p: &Poly) -> Result<BasisCoeffs> {
        self.check(p)?;
        let Some(deg) = p.degree() else {
            return Ok(BasisCoeffs { values: Vec::new() });
        };
        let mut values = vec![Rational::zero(); deg + 1];
        let mut rest = p.clone();
        for m in (0..=deg).rev() {
            let c = rest.coeff(m);
            if c.is_zero() {
                continue;
            }
            let a = c / self.polys[m].lead();
            rest = &rest - &self.polys[m].scale(&a);
            values[m] = a;
        }
        debug_assert!(rest.is_zero());
        Ok(BasisCoeffs { values })
    }

    pub fn recombine(&self, coeffs: &BasisCoeffs) -> Poly {
        coeffs
            .values
            .iter()
            .enumerate()
            .fold(Poly::zero(), |acc, (k, a)| &acc + &self.polys[k].scale(a))
    }

    /// `⟨p, q⟩ / h_0` through basis expansion; valid for every family.
    pub fn inner_product_by_expansion(&self, p: &Poly, q: &Poly) -> Result<Rational> {
        let a = self.expand(p)?;
        let b = self.expand(q)?;
        Ok(a.values
            .iter()
            .zip(&b.values)
            .enumerate()
            .fold(Rational::zero(), |acc, (k, (x, y))| acc + x * y * &self.norms[k]))
    }

    /// `⟨p, q⟩ / h_0` by direct weighted summation over `{0, …, N}`.
    pub fn inner_product_by_summation(&self, p: &Poly, q: &Poly) -> Result<Rational> {
        discrete_inner_product(&self.family, p, q)
    }

    /// `⟨p, q⟩ / h_0`: summation for discrete measures, expansion otherwise.
    pub fn inner_product(&self, p: &Poly, q: &Poly) -> Result<Rational> {
        if self.family.is_discrete() {
            self.inner_product_by_summation(p, q)
        } else {
            self.inner_product_by_expansion(p, q)
        }
    }
}

/// `Σ_x p(x) q(x) w_x / h_0` for a Hahn family; no degree restriction applies.
pub fn discrete_inner_product(family: &FamilySpec, p: &Poly, q: &Poly) -> Result<Rational> {
    let big_n = family.big_n().ok_or_else(|| Error::Undefined {
        what: "weighted point sum".into(),
        family: family.to_string(),
    })?;
    let mut acc = Rational::zero();
    for x in 0..=big_n {
        let xr = rat(x as i64);
        acc += p.eval(&xr) * q.eval(&xr) * family.hahn_weight(x)?;
    }
    Ok(acc / family.hahn_total_mass()?)
}

fn nmax_for(p: &Poly, q: &Poly) -> usize {
    p.degree().unwrap_or(0).max(q.degree().unwrap_or(0))
}

pub fn basis_expand(p: &Poly, family: &FamilySpec) -> Result<BasisCoeffs> {
    Basis::new(family, p.degree().unwrap_or(0))?.expand(p)
}

/// `⟨p, q⟩ / h_0` in `family`'s measure.
pub fn inner_product_n(p: &Poly, q: &Poly, family: &FamilySpec) -> Result<Rational> {
    let nmax = nmax_for(p, q);
    if family.is_discrete() {
        family.check_degree(nmax)?;
        return discrete_inner_product(family, p, q);
    }
    Basis::new(family, nmax)?.inner_product(p, q)
}

/// Consequences of the recurrence coefficients for `p_n` built from them:
/// its leading coefficient, its closed-form special values, and for even
/// measures `C_{2m−1} = −p_{2m}(0)/p_{2m−2}(0)` when `n = 2m − 1`.
pub fn recurrence_identity_checks(family: &FamilySpec, n: usize) -> Result<Vec<(String, Equality<Rational>)>> {
    let basis = Basis::new(family, n + 1)?;
    let p = basis.poly(n);
    let mut out = vec![("lead".to_string(), Equality::new(p.lead(), family.lead_coeff(n)))];
    for pt in SpecialPoint::ALL {
        let Ok(expected) = family.special_value(n, pt) else { continue };
        let at = |x: i64| p.eval(&rat(x));
        let got = match pt {
            SpecialPoint::Zero => at(0),
            SpecialPoint::DerivAtZero => p.derivative().eval(&rat(0)),
            SpecialPoint::One => at(1),
            SpecialPoint::MinusOne => at(-1),
            SpecialPoint::BigN => at(family.big_n().unwrap_or(0) as i64),
            SpecialPoint::BigNMinusOne => at(family.big_n().unwrap_or(1) as i64 - 1),
        };
        out.push((format!("{pt:?}"), Equality::new(got, expected)));
    }
    if family.is_even() && n % 2 == 1 {
        let (_, _, c) = family.recur_coeffs(n)?;
        let zero = rat(0);
        let ratio = -basis.poly(n + 1).eval(&zero) / basis.poly(n - 1).eval(&zero);
        out.push(("odd C".to_string(), Equality::new(c, ratio)));
    }
    Ok(out)
}
