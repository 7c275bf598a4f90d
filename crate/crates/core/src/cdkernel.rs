//! Christoffel–Darboux kernels and kernel polynomials.
//!
//! Every kernel is returned multiplied by `h_0`, i.e. `h_0 K_n(x, y) =
//! Σ_{k≤n} p_k(x) p_k(y) / (h_k/h_0)`, which is rational for rational
//! arguments.

use crate::basis::Basis;
use crate::check::Equality;
use crate::error::{Error, Result};
use crate::exactnum::{rat, Rational, Scalar};
use crate::families::{FamilyKind, FamilySpec, SpecialPoint};
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelForm {
    Sum,
    Quotient,
}

/// `q_n = c_n K_n(x_0, ·)` together with `c_n/h_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelPolyResult {
    pub q: Poly,
    pub cn_over_h0: Rational,
    pub x0: Rational,
    /// The family whose `n`-th polynomial `q` is.
    pub target: FamilySpec,
}

/// `k_n / (k_{n+1} h_n/h_0)`, the Christoffel–Darboux prefactor.
fn cd_prefactor(family: &FamilySpec, n: usize) -> Rational {
    family.lead_coeff(n) / (family.lead_coeff(n + 1) * family.norm_ratio(n))
}

/// `h_0 K_n(·, y)` as a polynomial in the free variable.
pub fn kernel_section(basis: &Basis, n: usize, y: &Rational) -> Poly {
    (0..=n).fold(Poly::zero(), |acc, k| {
        let p = basis.poly(k);
        &acc + &p.scale(&(p.eval(y) / basis.norm(k)))
    })
}

fn kernel_sum<S: Scalar>(basis: &Basis, n: usize, x: &S, y: &S) -> S {
    (0..=n).fold(x.zero_like(), |acc, k| {
        let p = basis.poly(k);
        acc + p.eval(x) * p.eval(y) / x.lift(basis.norm(k))
    })
}

/// `h_0 K_n(x, y)` in sum or quotient form.
pub fn cd_kernel<S: Scalar>(family: &FamilySpec, n: usize, x: &S, y: &S, form: KernelForm) -> Result<S> {
    match form {
        KernelForm::Sum => {
            let basis = Basis::new(family, n)?;
            Ok(kernel_sum(&basis, n, x, y))
        }
        KernelForm::Quotient => {
            if x == y {
                return Err(Error::CoincidentPoints);
            }
            let basis = Basis::new(family, n + 1)?;
            let (p0, p1) = (basis.poly(n), basis.poly(n + 1));
            let num = p1.eval(x) * p0.eval(y) - p0.eval(x) * p1.eval(y);
            Ok(x.lift(&cd_prefactor(family, n)) * num / (x.clone() - y.clone()))
        }
    }
}

/// `h_0 K_n(x, x)` from the confluent (derivative) form of the
/// Christoffel–Darboux formula.
pub fn cd_confluent<S: Scalar>(family: &FamilySpec, n: usize, x: &S) -> Result<S> {
    let basis = Basis::new(family, n + 1)?;
    let (p0, p1) = (basis.poly(n), basis.poly(n + 1));
    let num = p1.derivative().eval(x) * p0.eval(x) - p0.derivative().eval(x) * p1.eval(x);
    Ok(x.lift(&cd_prefactor(family, n)) * num)
}

/// `h_0 K_n(x, x)` by direct summation.
pub fn cd_diagonal_sum<S: Scalar>(family: &FamilySpec, n: usize, x: &S) -> Result<S> {
    cd_kernel(family, n, x, x, KernelForm::Sum)
}

/// `h_0 K_{2n}(0, 0)` for an even measure, from the closed-form values of
/// `p_{2n}(0)` and `p'_{2n+1}(0)`.
pub fn cd_even_at_origin(family: &FamilySpec, n: usize) -> Result<Rational> {
    if !family.is_even() {
        return Err(Error::Undefined { what: "even-measure kernel at 0".into(), family: family.to_string() });
    }
    Ok(cd_prefactor(family, 2 * n)
        * family.special_value(2 * n + 1, SpecialPoint::DerivAtZero)?
        * family.special_value(2 * n, SpecialPoint::Zero)?)
}

/// `h_0 K_n(x, x−1)` from the difference form for Hahn polynomials.
pub fn cd_discrete<S: Scalar>(family: &FamilySpec, n: usize, x: &S) -> Result<S> {
    if !family.is_discrete() {
        return Err(Error::Undefined { what: "difference form of the kernel".into(), family: family.to_string() });
    }
    let basis = Basis::new(family, n + 1)?;
    let (p0, p1) = (basis.poly(n), basis.poly(n + 1));
    let xm1 = x.add_rational(&rat(-1));
    let d0 = p0.forward_difference().eval(&xm1);
    let d1 = p1.forward_difference().eval(&xm1);
    let num = p0.eval(x) * d1 - p1.eval(x) * d0;
    Ok(x.lift(&cd_prefactor(family, n)) * num)
}

/// The family of which `q_n = c_n K_n(x_0, ·)` are the orthogonal polynomials,
/// when `x_0` is an endpoint with a known closed form.
pub fn kernel_target(family: &FamilySpec, x0: &Rational, n: usize) -> Result<FamilySpec> {
    let unsupported = || Error::Undefined {
        what: format!("kernel polynomial family at x0 = {x0}"),
        family: family.to_string(),
    };
    let one = rat(1);
    match family.kind() {
        FamilyKind::Hermite => Err(unsupported()),
        FamilyKind::Laguerre { alpha } if *x0 == rat(0) => FamilySpec::laguerre(alpha + one),
        FamilyKind::Laguerre { .. } => Err(unsupported()),
        FamilyKind::Hahn { alpha, beta, big_n } if *x0 == rat(*big_n as i64) => {
            if n + 1 > *big_n {
                return Err(Error::DegreeOutOfRange { degree: n, max: big_n - 1 });
            }
            FamilySpec::hahn(alpha.clone(), beta + one, big_n - 1)
        }
        FamilyKind::Hahn { .. } => Err(unsupported()),
        _ if *x0 == one => FamilySpec::jacobi(family.alpha() + one, family.beta().clone()),
        _ if *x0 == -one.clone() => FamilySpec::jacobi(family.alpha().clone(), family.beta() + one),
        _ => Err(unsupported()),
    }
}

/// Builds `q_n` from the kernel series and cross-checks it, coefficient by
/// coefficient, against the shifted family generated from its own recurrence.
pub fn kernel_poly(family: &FamilySpec, x0: &Rational, n: usize) -> Result<KernelPolyResult> {
    let target = kernel_target(family, x0, n)?;
    let basis = Basis::new(family, n)?;
    let pn_x0 = basis.poly(n).eval(x0);
    if pn_x0 == rat(0) {
        return Err(Error::DivisionByZero);
    }
    let cn_over_h0 = target.lead_coeff(n) * basis.norm(n) / (family.lead_coeff(n) * pn_x0);
    let q = kernel_section(&basis, n, x0).scale(&cn_over_h0);
    let generated = Basis::new(&target, n)?.poly(n).clone();
    Equality::new(q.clone(), generated).verify("kernel polynomial")?;
    Ok(KernelPolyResult { q, cn_over_h0, x0: x0.clone(), target })
}

/// Projection of `p` onto degree `≤ n` evaluated at `y`: `⟨p, h_0 K_n(·, y)⟩/h_0`
/// against `p(y)`.
pub fn reproduce(family: &FamilySpec, n: usize, p: &Poly, y: &Rational) -> Result<Equality<Rational>> {
    if let Some(d) = p.degree() {
        if d > n {
            return Err(Error::DegreeOutOfRange { degree: d, max: n });
        }
    }
    let basis = Basis::new(family, n)?;
    let kernel = kernel_section(&basis, n, y);
    Ok(Equality::new(basis.inner_product(p, &kernel)?, p.eval(y)))
}

/// `h_0 K_n(x_0, x_1)` against `h_0 ⟨K_n(x_0, ·), K_n(x_1, ·)⟩`.
pub fn cross_kernel_check(family: &FamilySpec, n: usize, x0: &Rational, x1: &Rational) -> Result<Equality<Rational>> {
    let basis = Basis::new(family, n)?;
    let direct = kernel_sum(&basis, n, x0, x1);
    let k0 = kernel_section(&basis, n, x0);
    let k1 = kernel_section(&basis, n, x1);
    Ok(Equality::new(direct, basis.inner_product(&k0, &k1)?))
}

/// `⟨q_n, p⟩/h_0` against `(c_n/h_0) p(x_0)` for `deg p ≤ n`.
pub fn kernel_poly_property(family: &FamilySpec, x0: &Rational, n: usize, p: &Poly) -> Result<Equality<Rational>> {
    let kp = kernel_poly(family, x0, n)?;
    let basis = Basis::new(family, n)?;
    Ok(Equality::new(basis.inner_product(&kp.q, p)?, &kp.cn_over_h0 * p.eval(x0)))
}

/// `⟨q_n, q_n⟩/h_0` against `(c_n/h_0) q_n(x_0)`.
pub fn kernel_poly_norm(family: &FamilySpec, x0: &Rational, n: usize) -> Result<Equality<Rational>> {
    let kp = kernel_poly(family, x0, n)?;
    let basis = Basis::new(family, n)?;
    Ok(Equality::new(basis.inner_product(&kp.q, &kp.q)?, &kp.cn_over_h0 * kp.q.eval(x0)))
}

/// `(c_n/h_0) Σ_k p_k(x_0)²/(h_k/h_0)` against `q_n(x_0)`.
pub fn kernel_poly_at_point(family: &FamilySpec, x0: &Rational, n: usize) -> Result<Equality<Rational>> {
    let kp = kernel_poly(family, x0, n)?;
    let basis = Basis::new(family, n)?;
    Ok(Equality::new(&kp.cn_over_h0 * kernel_sum(&basis, n, x0, x0), kp.q.eval(x0)))
}

/// Quadratic transformation for Gegenbauer(α): `p_{2n+1}(x)/x` must be a
/// constant multiple of `q_n(2x² − 1)`, where `q_n` is the kernel polynomial at
/// `−1` of Jacobi(α, −1/2) (the measure mapped by `t = 2x² − 1`).
///
/// Returns the deflated odd polynomial and the rescaled composed kernel polynomial.
pub fn quadratic_transform_check(alpha: &Rational, n: usize) -> Result<Equality<Poly>> {
    let even = FamilySpec::gegenbauer(alpha.clone())?;
    let odd = Basis::new(&even, 2 * n + 1)?.poly(2 * n + 1).deflate_at_zero()?;
    let mapped = FamilySpec::jacobi(alpha.clone(), -crate::exactnum::ratio(1, 2))?;
    let kp = kernel_poly(&mapped, &rat(-1), n)?;
    let composed = kp.q.compose(&Poly::from_ints(&[-1, 0, 2]));
    let scale = odd.lead() / composed.lead();
    Ok(Equality::new(odd, composed.scale(&scale)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{pochhammer, ratio};

    fn grid() -> Vec<FamilySpec> {
        vec![
            FamilySpec::legendre(),
            FamilySpec::chebyshev_t(),
            FamilySpec::gegenbauer(ratio(1, 2)).unwrap(),
            FamilySpec::jacobi(ratio(-1, 3), ratio(7, 3)).unwrap(),
            FamilySpec::hermite(),
            FamilySpec::laguerre(ratio(1, 2)).unwrap(),
            FamilySpec::hahn(ratio(1, 2), ratio(1, 3), 8).unwrap(),
        ]
    }

    #[test]
    fn order_zero_is_one() {
        for f in grid() {
            let v = cd_kernel(&f, 0, &ratio(3, 7), &ratio(-1, 5), KernelForm::Sum).unwrap();
            assert_eq!(v, rat(1));
            assert_eq!(cd_confluent(&f, 0, &ratio(2, 7)).unwrap(), rat(1));
        }
    }

    #[test]
    fn legendre_first_order() {
        // h_0 K_1(x, y) = 1 + 3xy
        let (x, y) = (ratio(2, 5), ratio(-3, 4));
        let v = cd_kernel(&FamilySpec::legendre(), 1, &x, &y, KernelForm::Sum).unwrap();
        assert_eq!(v, rat(1) + rat(3) * &x * &y);
    }

    #[test]
    fn sum_equals_quotient_and_confluent() {
        let (x, y) = (ratio(1, 3), ratio(-2, 5));
        for f in grid() {
            for n in 0..=6 {
                let s = cd_kernel(&f, n, &x, &y, KernelForm::Sum).unwrap();
                let q = cd_kernel(&f, n, &x, &y, KernelForm::Quotient).unwrap();
                assert_eq!(s, q, "{f} n={n}");
                let x = ratio(2, 7);
                assert_eq!(cd_confluent(&f, n, &x).unwrap(), cd_diagonal_sum(&f, n, &x).unwrap(), "{f} n={n}");
            }
        }
    }

    #[test]
    fn quotient_form_rejects_diagonal() {
        let r = cd_kernel(&FamilySpec::legendre(), 2, &rat(1), &rat(1), KernelForm::Quotient);
        assert_eq!(r, Err(Error::CoincidentPoints));
    }

    #[test]
    fn even_kernel_at_origin() {
        for f in [FamilySpec::legendre(), FamilySpec::hermite(), FamilySpec::gegenbauer(ratio(-1, 3)).unwrap()] {
            for n in 0..6 {
                assert_eq!(cd_even_at_origin(&f, n).unwrap(), cd_diagonal_sum(&f, 2 * n, &rat(0)).unwrap());
            }
        }
    }

    #[test]
    fn discrete_difference_form() {
        let h = FamilySpec::hahn(rat(0), rat(0), 5).unwrap();
        for n in 0..=4 {
            for x in 1..=5 {
                let x = rat(x);
                let direct = cd_kernel(&h, n, &x, &(&x - rat(1)), KernelForm::Sum).unwrap();
                assert_eq!(cd_discrete(&h, n, &x).unwrap(), direct);
            }
        }
        let h = FamilySpec::hahn(ratio(1, 2), ratio(1, 3), 6).unwrap();
        let basis = Basis::new(&h, 3).unwrap();
        // brute-force three-term sum
        let brute = (0..=3).fold(rat(0), |acc, k| {
            acc + basis.poly(k).eval(&rat(2)) * basis.poly(k).eval(&rat(1)) / basis.norm(k)
        });
        assert_eq!(cd_discrete(&h, 3, &rat(2)).unwrap(), brute);
        assert_eq!(cd_discrete(&h, 0, &ratio(7, 2)).unwrap(), rat(1));
        assert!(cd_discrete(&FamilySpec::legendre(), 1, &rat(0)).is_err());
    }

    #[test]
    fn jacobi_kernel_poly_at_one() {
        let (a, b) = (ratio(1, 3), ratio(-1, 2));
        let f = FamilySpec::jacobi(a.clone(), b.clone()).unwrap();
        for n in 0..=6 {
            let kp = kernel_poly(&f, &rat(1), n).unwrap();
            let expected = pochhammer(&(&b + rat(1)), n) / pochhammer(&(&a + &b + rat(2)), n);
            assert_eq!(kp.cn_over_h0, expected);
            assert_eq!(kp.target, FamilySpec::jacobi(&a + rat(1), b.clone()).unwrap());
        }
    }

    #[test]
    fn laguerre_kernel_poly_constant() {
        let f = FamilySpec::laguerre(ratio(7, 3)).unwrap();
        for n in 0..=8 {
            assert_eq!(kernel_poly(&f, &rat(0), n).unwrap().cn_over_h0, rat(1));
        }
    }

    #[test]
    fn hahn_kernel_poly_at_big_n() {
        let f = FamilySpec::hahn(ratio(1, 2), ratio(1, 3), 6).unwrap();
        for n in 0..=5 {
            let kp = kernel_poly(&f, &rat(6), n).unwrap();
            assert_eq!(kp.target, FamilySpec::hahn(ratio(1, 2), ratio(4, 3), 5).unwrap());
        }
        assert!(kernel_poly(&f, &rat(6), 6).is_err());
        assert!(kernel_poly(&FamilySpec::hermite(), &rat(0), 2).is_err());
    }

    #[test]
    fn reproduce_examples() {
        let leg = FamilySpec::legendre();
        let c = Poly::constant(ratio(5, 3));
        assert!(reproduce(&leg, 2, &c, &ratio(1, 9)).unwrap().holds());
        let p = Poly::new(vec![rat(0), ratio(-1, 2), rat(0), rat(1)]);
        let eq = reproduce(&leg, 3, &p, &ratio(1, 4)).unwrap();
        assert_eq!(eq.rhs, ratio(-7, 64));
        assert!(eq.holds());
        assert!(matches!(reproduce(&leg, 2, &p, &rat(0)), Err(Error::DegreeOutOfRange { .. })));
    }

    #[test]
    fn cross_kernel_examples() {
        let h = FamilySpec::hahn(rat(0), rat(0), 4).unwrap();
        assert!(cross_kernel_check(&h, 2, &rat(4), &rat(3)).unwrap().holds());
        let leg = FamilySpec::legendre();
        let eq = cross_kernel_check(&leg, 2, &rat(1), &rat(-1)).unwrap();
        assert!(eq.holds());
        // 1 − 3 + 5 with p_k(1) = 1, p_k(−1) = (−1)^k, h_k/h_0 = 1/(2k+1)
        assert_eq!(eq.lhs, rat(3));
        let x = ratio(2, 7);
        let diag = cross_kernel_check(&leg, 4, &x, &x).unwrap();
        assert_eq!(diag.lhs, cd_confluent(&leg, 4, &x).unwrap());
    }

    #[test]
    fn kernel_poly_identities() {
        let cases = [
            (FamilySpec::jacobi(ratio(1, 2), ratio(-1, 3)).unwrap(), rat(1)),
            (FamilySpec::laguerre(ratio(-1, 2)).unwrap(), rat(0)),
            (FamilySpec::hahn(ratio(7, 3), rat(0), 8).unwrap(), rat(8)),
        ];
        for (f, x0) in cases {
            for n in 0..=7 {
                assert!(kernel_poly_norm(&f, &x0, n).unwrap().holds(), "{f} n={n}");
                assert!(kernel_poly_at_point(&f, &x0, n).unwrap().holds(), "{f} n={n}");
                let p = Poly::new((0..=n as i64).map(|i| ratio(i * i - 3, i + 2)).collect());
                assert!(kernel_poly_property(&f, &x0, n, &p).unwrap().holds(), "{f} n={n}");
            }
        }
    }

    #[test]
    fn gegenbauer_quadratic_transformation() {
        for alpha in [rat(0), ratio(-1, 2), ratio(7, 3)] {
            for n in 0..=5 {
                assert!(quadratic_transform_check(&alpha, n).unwrap().holds(), "alpha={alpha} n={n}");
            }
        }
    }
}
