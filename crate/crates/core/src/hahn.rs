//! Kernel identities for Hahn polynomials `Q_n(x; α, β, N)` on `{0, …, N}`
//! specialised at the points `N` and `N − 1`, and their Jacobi limit.

use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::basis::{generate_ops, Basis};
use crate::cdkernel::{kernel_poly, kernel_section};
use crate::check::Equality;
use crate::error::{Error, Result};
use crate::exactnum::{factorial, pochhammer, rat, ratio, rational_sqrt, sign, QuadExt, Rational, Scalar};
use crate::families::FamilySpec;
use crate::hyp::{contiguous_check, pfaff_saalschutz, TruncatedSeries};
use crate::poly::Poly;

/// Largest `N` accepted by the floating-point limit check.
pub const LIMIT_MAX_N: usize = 400;

/// Parameters `(α, β, N)` with the three Hahn families they generate:
/// `Q(·; α, β, N)`, `Q(·; α, β+1, N−1)` and `Q(·; α+1, β+2, N−2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HahnContext {
    alpha: Rational,
    beta: Rational,
    big_n: usize,
    base: FamilySpec,
    shifted: FamilySpec,
    inner: Option<FamilySpec>,
}

impl HahnContext {
    /// `N ≥ 2`; for `N = 2` the innermost family only ever appears as `Q_0 = 1`.
    pub fn new(alpha: Rational, beta: Rational, big_n: usize) -> Result<Self> {
        if big_n < 2 {
            return Err(Error::ParameterRange(format!("N = {big_n} must be at least 2")));
        }
        if &alpha + &beta == rat(-1) {
            return Err(Error::ParameterRange("alpha + beta = -1 is excluded".into()));
        }
        let base = FamilySpec::hahn(alpha.clone(), beta.clone(), big_n)?;
        let shifted = FamilySpec::hahn(alpha.clone(), &beta + rat(1), big_n - 1)?;
        let inner = if big_n >= 3 {
            Some(FamilySpec::hahn(&alpha + rat(1), &beta + rat(2), big_n - 2)?)
        } else {
            None
        };
        Ok(HahnContext { alpha, beta, big_n, base, shifted, inner })
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn big_n(&self) -> usize {
        self.big_n
    }

    pub fn base(&self) -> &FamilySpec {
        &self.base
    }

    pub fn shifted(&self) -> &FamilySpec {
        &self.shifted
    }

    /// `α + β + 1`.
    pub fn s(&self) -> Rational {
        &self.alpha + &self.beta + rat(1)
    }

    fn nr(&self) -> Rational {
        rat(self.big_n as i64)
    }

    pub fn check_n(&self, n: usize) -> Result<()> {
        if n < self.big_n {
            Ok(())
        } else {
            Err(Error::DegreeOutOfRange { degree: n, max: self.big_n - 1 })
        }
    }

    /// `Q_n(x; α, β+1, N−1)`, the kernel polynomial at `N`.
    pub fn q(&self, n: usize) -> Result<Poly> {
        self.check_n(n)?;
        Ok(generate_ops(&self.shifted, n)?.pop().expect("nonempty"))
    }

    /// `Q_m(x; α+1, β+2, N−2)`.
    pub fn q_inner(&self, m: usize) -> Result<Poly> {
        if m == 0 {
            return Ok(Poly::one());
        }
        match &self.inner {
            Some(f) => Ok(generate_ops(f, m)?.pop().expect("nonempty")),
            None => Err(Error::DegreeOutOfRange { degree: m, max: 0 }),
        }
    }

    /// `(N+s+1)_n/(s+1)_n · n!/(1−N)_n`, which turns the very-well-poised
    /// normalization into the finite-sum one.
    pub fn prefactor(&self, n: usize) -> Rational {
        let s = self.s();
        pochhammer(&(self.nr() + &s + rat(1)), n) / pochhammer(&(&s + rat(1)), n) * factorial(n)
            / pochhammer(&(rat(1) - self.nr()), n)
    }

    /// `(−1)^n (β+2)_n / (α+1)_n`, the value of the kernel polynomial at `N − 1`.
    pub fn q_at_n_minus_one(&self, n: usize) -> Rational {
        sign(n) * pochhammer(&(&self.beta + rat(2)), n) / pochhammer(&(&self.alpha + rat(1)), n)
    }

    /// `c_n = h_0 · (N+s+1)_n/(s+1)_n · n!/(1−N)_n` with `h_0 = (s+1)_N/N!`.
    pub fn c_n(&self, n: usize) -> Result<Rational> {
        Ok(self.base.hahn_total_mass()? * self.prefactor(n))
    }
}

/// `(x+α+1)(x−N)(Δf)(x) − x(x−β−N−1)(Δf)(x−1)`.
pub fn lambda_apply(ctx: &HahnContext, f: &Poly) -> Poly {
    let x = Poly::x();
    let diff = f.forward_difference();
    let left = &(&Poly::linear(&ctx.alpha + rat(1)) * &Poly::linear(-ctx.nr())) * &diff;
    let right = &(&x * &Poly::linear(-(&ctx.beta + ctx.nr() + rat(1)))) * &diff.shift(&rat(-1));
    &left - &right
}

/// `Λ q_n` against `n(n+s+1) q_n + n(n+s+1)/((α+1)(N−1)) (x+α+1) Q_{n−1}(x; α+1, β+2, N−2)`.
pub fn lambda_kernel_check(ctx: &HahnContext, n: usize) -> Result<Equality<Poly>> {
    let q = ctx.q(n)?;
    let lhs = lambda_apply(ctx, &q);
    let eig = rat(n as i64) * (rat(n as i64) + ctx.s() + rat(1));
    let mut rhs = q.scale(&eig);
    if n > 0 {
        let c = &eig / ((&ctx.alpha + rat(1)) * (ctx.nr() - rat(1)));
        rhs = &rhs + &(&Poly::linear(&ctx.alpha + rat(1)) * &ctx.q_inner(n - 1)?).scale(&c);
    }
    Ok(Equality::new(lhs, rhs))
}

/// The kernel polynomial at `N` from its recurrence against the connection sum
/// `prefactor · Σ_k (2k+s)/(k+s) (s+1)_k/(N+s+1)_k (−N)_k/k! Q_k(x; α, β, N)`.
pub fn hahn_connection_check(ctx: &HahnContext, n: usize) -> Result<Equality<Poly>> {
    let lhs = ctx.q(n)?;
    let base = generate_ops(&ctx.base, n)?;
    let s = ctx.s();
    let mut sum = Poly::zero();
    for (k, p) in base.iter().enumerate() {
        let kr = rat(k as i64);
        let coeff = (rat(2) * &kr + &s) / (&kr + &s) * pochhammer(&(&s + rat(1)), k)
            / pochhammer(&(ctx.nr() + &s + rat(1)), k)
            * pochhammer(&-ctx.nr(), k)
            / factorial(k);
        sum = &sum + &p.scale(&coeff);
    }
    Ok(Equality::new(lhs, sum.scale(&ctx.prefactor(n))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FirstIdentityForm {
    FiniteSum,
    F65Pair,
    F87Quadext,
}

impl FirstIdentityForm {
    pub const ALL: [FirstIdentityForm; 3] =
        [FirstIdentityForm::FiniteSum, FirstIdentityForm::F65Pair, FirstIdentityForm::F87Quadext];

    pub fn name(self) -> &'static str {
        match self {
            FirstIdentityForm::FiniteSum => "finite_sum",
            FirstIdentityForm::F65Pair => "f65_pair",
            FirstIdentityForm::F87Quadext => "f87_quadext",
        }
    }
}

impl fmt::Display for FirstIdentityForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FirstIdentityForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FirstIdentityForm::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown form {s:?}")))
    }
}

/// `c_n Σ_k p_k(N) p_k(N−1)/h_k` written out term by term, without the
/// connection-coefficient prefactor.
fn first_identity_sum(ctx: &HahnContext, n: usize) -> Rational {
    let s = ctx.s();
    let big = ctx.nr();
    let b1 = &ctx.beta + rat(1);
    (0..=n).fold(rat(0), |acc, k| {
        let kr = rat(k as i64);
        acc + (rat(2) * &kr + &s) / (&kr + &s) * pochhammer(&(&s + rat(1)), k)
            / pochhammer(&(&big + &s + rat(1)), k)
            * pochhammer(&-big.clone(), k)
            / factorial(k)
            * sign(k)
            * pochhammer(&b1, k)
            / pochhammer(&(&ctx.alpha + rat(1)), k)
            * (rat(1) - &kr * (&kr + &s) / (&b1 * &big))
    })
}

/// The pair of very-well-poised `₆F₅(−1)` series.
pub fn eq46_lhs(ctx: &HahnContext, n: usize) -> Result<Rational> {
    ctx.check_n(n)?;
    let s = ctx.s();
    let big = ctx.nr();
    let half = ratio(1, 2);
    let nn = rat(n as i64);
    let first = TruncatedSeries::new(
        vec![s.clone(), rat(1) + &s * &half, &ctx.beta + rat(1), -big.clone(), &nn + &s + rat(1), -nn.clone()],
        vec![&s * &half, &ctx.alpha + rat(1), &big + &s + rat(1), -nn.clone(), &nn + &s + rat(1)],
        rat(-1),
        n,
    )
    .eval()?;
    if n == 0 {
        return Ok(first);
    }
    let s2 = &s + rat(2);
    let second = TruncatedSeries::new(
        vec![s2.clone(), rat(1) + &s2 * &half, &ctx.beta + rat(2), rat(1) - &big, &nn + &s2, rat(1) - &nn],
        vec![&s2 * &half, &ctx.alpha + rat(2), &big + &s2, rat(1) - &nn, &nn + &s2],
        rat(-1),
        n - 1,
    )
    .eval()?;
    let coeff = (&s + rat(1)) * &s2 / ((&big + &s + rat(1)) * (&ctx.alpha + rat(1)));
    Ok(first - coeff * second)
}

/// `(β+2)_n (s+1)_n / ((α+1)_n n!) · (−1)^n (1−N)_n / (N+s+1)_n`.
pub fn eq46_rhs(ctx: &HahnContext, n: usize) -> Rational {
    let s = ctx.s();
    pochhammer(&(&ctx.beta + rat(2)), n) * pochhammer(&(&s + rat(1)), n)
        / (pochhammer(&(&ctx.alpha + rat(1)), n) * factorial(n))
        * sign(n)
        * pochhammer(&(rat(1) - ctx.nr()), n)
        / pochhammer(&(ctx.nr() + &s + rat(1)), n)
}

/// `d = (β+1)N + s²/4`; the extra parameter pair of the single `₈F₇` is
/// `c = s/2 + √d`, a root of `c(s−c) = −(β+1)N`.
pub fn eq60_radicand(ctx: &HahnContext) -> Rational {
    let s = ctx.s();
    (&ctx.beta + rat(1)) * ctx.nr() + &s * &s / rat(4)
}

fn eq60_series<S: Scalar>(ctx: &HahnContext, n: usize, c: S) -> Result<S> {
    let s = ctx.s();
    let big = ctx.nr();
    let nn = rat(n as i64);
    let l = |r: Rational| c.lift(&r);
    let half = ratio(1, 2);
    TruncatedSeries::new(
        vec![
            l(s.clone()),
            l(rat(1) + &s * &half),
            c.add_rational(&rat(1)),
            -c.clone() + l(&s + rat(1)),
            l(&ctx.beta + rat(1)),
            l(-big.clone()),
            l(&nn + &s + rat(1)),
            l(-nn.clone()),
        ],
        vec![
            l(&s * &half),
            c.clone(),
            -c.clone() + l(s.clone()),
            l(&ctx.alpha + rat(1)),
            l(&big + &s + rat(1)),
            l(-nn.clone()),
            l(&nn + &s + rat(1)),
        ],
        l(rat(-1)),
        n,
    )
    .eval()
}

/// For rational `c` the lower parameter `s − c` can be a negative integer, and
/// the pair `(s+1−c)_k/(s−c)_k` becomes `0/0` termwise. Both parameter pairs
/// are then taken in their reduced form `(c+k)(s−c+k)/(c(s−c))`.
fn eq60_reduced(ctx: &HahnContext, n: usize, c: &Rational) -> Result<Rational> {
    let s = ctx.s();
    let big = ctx.nr();
    let nn = rat(n as i64);
    let half = ratio(1, 2);
    let terms = TruncatedSeries::new(
        vec![s.clone(), rat(1) + &s * &half, &ctx.beta + rat(1), -big.clone(), &nn + &s + rat(1), -nn.clone()],
        vec![&s * &half, &ctx.alpha + rat(1), &big + &s + rat(1), -nn.clone(), &nn + &s + rat(1)],
        rat(-1),
        n,
    )
    .terms()?;
    let base = c * (&s - c);
    Ok(terms.into_iter().enumerate().fold(rat(0), |acc, (k, t)| {
        let kr = rat(k as i64);
        acc + t * (c + &kr) * (&s - c + &kr) / &base
    }))
}

/// The single `₈F₇(−1)`; evaluated in `ℚ(√d)` unless `d` is a rational square.
/// Fails with [`Error::NotRational`] if the result keeps an irrational part.
pub fn eq60_lhs(ctx: &HahnContext, n: usize) -> Result<Rational> {
    ctx.check_n(n)?;
    let d = eq60_radicand(ctx);
    let half_s = ctx.s() * ratio(1, 2);
    match rational_sqrt(&d) {
        Some(root) => {
            let c = half_s + root;
            match eq60_series(ctx, n, c.clone()) {
                Err(Error::VanishingDenominator { .. }) => eq60_reduced(ctx, n, &c),
                other => other,
            }
        }
        None => {
            let c = QuadExt::sqrt_of(d)?.add_rational(&half_s);
            eq60_series(ctx, n, c)?.to_rational()
        }
    }
}

/// The first identity in finite-sum normalization: the chosen form of the
/// left side against `(−1)^n (β+2)_n / (α+1)_n`.
pub fn first_identity(ctx: &HahnContext, n: usize, form: FirstIdentityForm) -> Result<Equality<Rational>> {
    ctx.check_n(n)?;
    let vwp = match form {
        FirstIdentityForm::FiniteSum => None,
        FirstIdentityForm::F65Pair => Some(eq46_lhs(ctx, n)?),
        FirstIdentityForm::F87Quadext => Some(eq60_lhs(ctx, n)?),
    };
    let lhs = match vwp {
        None => ctx.prefactor(n) * first_identity_sum(ctx, n),
        Some(v) => ctx.prefactor(n) * v,
    };
    Ok(Equality::new(lhs, ctx.q_at_n_minus_one(n)))
}

/// Every link of the route from the `₆F₅` pair through two balanced `₃F₂`'s to
/// the Pfaff–Saalschütz closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub lhs46: Rational,
    pub expr47: Rational,
    pub expr48: Rational,
    pub rhs46: Rational,
}

/// Evaluates each expression of the chain and reports the first broken link.
pub fn derivation_chain_check(ctx: &HahnContext, n: usize) -> Result<ChainReport> {
    ctx.check_n(n)?;
    let s = ctx.s();
    let big = ctx.nr();
    let nn = rat(n as i64);
    let outer = sign(n) * pochhammer(&(&s + rat(1)), n) / factorial(n);
    let one = rat(1);
    let head = [&big + &ctx.alpha + rat(1), &nn + &s + rat(1), -nn.clone()];
    let den = [&big + &s + rat(1), &ctx.alpha + rat(1)];
    let mut bracket = TruncatedSeries::new(head.to_vec(), den.to_vec(), one.clone(), n).eval()?;
    if n > 0 {
        let shifted = TruncatedSeries::new(
            vec![&big + &ctx.alpha + rat(1), &nn + &s + rat(2), rat(1) - &nn],
            vec![&big + &s + rat(2), &ctx.alpha + rat(2)],
            one.clone(),
            n - 1,
        )
        .eval()?;
        bracket += &nn * (&nn + &s + rat(1)) / ((&big + &s + rat(1)) * (&ctx.alpha + rat(1))) * shifted;
    }
    let expr47 = &outer * bracket;
    let lowered = [&big + &ctx.alpha, &nn + &s + rat(1), -nn.clone()];
    let expr48 = &outer * TruncatedSeries::new(lowered.to_vec(), den.to_vec(), one.clone(), n).eval()?;
    let report = ChainReport { lhs46: eq46_lhs(ctx, n)?, expr47, expr48, rhs46: eq46_rhs(ctx, n) };

    Equality::new(report.lhs46.clone(), report.expr47.clone()).verify("6F5 pair = two balanced 3F2")?;
    // the same step as an instance of the contiguous relation in the last numerator parameter
    contiguous_check(&[nn.clone() + &s + rat(1), -nn.clone(), head[0].clone()], &den, &one, n)?
        .verify("contiguous relation")?;
    Equality::new(report.expr47.clone(), report.expr48.clone()).verify("two balanced 3F2 = single 3F2")?;
    let ps = pfaff_saalschutz(&lowered[0], &lowered[1], &den[1], n)?;
    Equality::new(&outer * &ps.lhs, report.expr48.clone()).verify("Pfaff-Saalschutz series")?;
    Equality::new(&outer * &ps.rhs, report.rhs46.clone()).verify("Pfaff-Saalschutz closed form")?;
    Equality::new(report.expr48.clone(), report.rhs46.clone()).verify("single 3F2 = closed form")?;
    Ok(report)
}

/// `r_n = c_n K_n(N−1, ·)` built three ways: the two-term display, the kernel
/// series, and `q_n − Λq_n/((β+1)N)`.
pub fn r_n_constructions(ctx: &HahnContext, n: usize) -> Result<[Poly; 3]> {
    ctx.check_n(n)?;
    let s = ctx.s();
    let big = ctx.nr();
    let b1 = &ctx.beta + rat(1);
    let eig = rat(n as i64) * (rat(n as i64) + &s + rat(1));
    let q = ctx.q(n)?;

    let mut display = q.scale(&(rat(1) - &eig / (&b1 * &big)));
    if n > 0 {
        let c = &eig / (&big * (&big - rat(1)) * (&ctx.alpha + rat(1)) * &b1);
        let tail = &Poly::linear(&ctx.alpha + rat(1)) * &ctx.q_inner(n - 1)?;
        display = &display - &tail.scale(&c);
    }

    let basis = Basis::new(&ctx.base, n)?;
    let cn_over_h0 = kernel_poly(&ctx.base, &big, n)?.cn_over_h0;
    let series = kernel_section(&basis, n, &(&big - rat(1))).scale(&cn_over_h0);

    let via_lambda = &q - &lambda_apply(ctx, &q).scale(&(rat(1) / (&b1 * &big)));
    Ok([display, series, via_lambda])
}

/// Both sums of the second identity against
/// `h_0 (−1)^n (β+2)_n/(α+1)_n (N+s+1)_n/(s+1)_n n!/(1−N)_n`, after checking
/// that the three constructions of `r_n` coincide and that `q_n(N−1)` takes its
/// closed-form value.
pub fn second_identity_check(ctx: &HahnContext, n: usize) -> Result<Equality<Rational>> {
    let [display, series, via_lambda] = r_n_constructions(ctx, n)?;
    Equality::new(display.clone(), series).verify("r_n display = kernel series")?;
    Equality::new(display, via_lambda).verify("r_n display = q_n - lambda q_n/((beta+1)N)")?;
    let q = ctx.q(n)?;
    let big = ctx.nr();
    Equality::new(q.eval(&(&big - rat(1))), ctx.q_at_n_minus_one(n)).verify("q_n(N-1)")?;

    let s = ctx.s();
    let b1 = &ctx.beta + rat(1);
    let eig = rat(n as i64) * (rat(n as i64) + &s + rat(1));
    let inner = if n > 0 { Some(ctx.q_inner(n - 1)?) } else { None };
    let mut squares = rat(0);
    let mut cross = rat(0);
    for x in 0..=ctx.big_n {
        let xr = rat(x as i64);
        let w = ctx.base.hahn_weight(x)?;
        let qx = q.eval(&xr);
        if let Some(inner) = &inner {
            cross += &qx * inner.eval(&xr) * (&xr + &ctx.alpha + rat(1)) * &w;
        }
        squares += &qx * &qx * w;
    }
    let lhs = (rat(1) - &eig / (&b1 * &big)) * squares
        - &eig / (&big * (&big - rat(1)) * (&ctx.alpha + rat(1)) * &b1) * cross;
    let rhs = ctx.c_n(n)? * ctx.q_at_n_minus_one(n);
    Ok(Equality::new(lhs, rhs))
}

/// The sum of the first identity with very large `N` against the Jacobi
/// endpoint sum with `α` and `β` interchanged; returns both values.
pub fn large_n_coherence(alpha: &Rational, beta: &Rational, n: usize, big_n: usize) -> Result<(Rational, Rational)> {
    let ctx = HahnContext::new(alpha.clone(), beta.clone(), big_n)?;
    let hahn = eq46_lhs(&ctx, n)?;
    let term = crate::hyp::jacobi_endpoint_term(beta, alpha);
    let mut jacobi = rat(0);
    for k in 0..=n {
        jacobi += term.eval(k)?;
    }
    Ok((hahn, jacobi))
}

/// `∫ P_n^{(α,β+1)}(x)² (1−x)^α (1+x)^β dx / h_0 = (α+1)_n (β+2)_n / ((s+1)_n n!)`.
pub fn jacobi_limit_target(alpha: &Rational, beta: &Rational, n: usize) -> Rational {
    let s = alpha + beta + rat(1);
    pochhammer(&(alpha + rat(1)), n) * pochhammer(&(beta + rat(2)), n) / (pochhammer(&(s + rat(1)), n) * factorial(n))
}

/// The endpoint norm of `P_n^{(α+1,β)}` in the Jacobi(α, β) measure over `h_0`,
/// `(α+2)_n (β+1)_n / ((s+1)_n n!)`.
pub fn jacobi_endpoint_norm(alpha: &Rational, beta: &Rational, n: usize) -> Rational {
    let s = alpha + beta + rat(1);
    pochhammer(&(alpha + rat(2)), n) * pochhammer(&(beta + rat(1)), n) / (pochhammer(&(s + rat(1)), n) * factorial(n))
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitPoint {
    pub big_n: usize,
    pub value: f64,
    pub relative_error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitReport {
    pub alpha: Rational,
    pub beta: Rational,
    pub n: usize,
    /// Exact limit over `h_0`.
    pub target: Rational,
    /// The same integral computed exactly by expansion in the Jacobi basis.
    pub target_by_integration: Rational,
    /// The target rewritten as the endpoint norm with `α` and `β` interchanged.
    pub target_rewritten: Rational,
    pub points: Vec<LimitPoint>,
}

impl LimitReport {
    /// The largest-`N` error is at most `10/N`, and it is below the smallest-`N` error.
    pub fn within_tolerance(&self) -> bool {
        match (self.points.first(), self.points.last()) {
            (Some(first), Some(last)) => {
                last.relative_error <= 10.0 / last.big_n as f64
                    && (self.points.len() == 1 || last.relative_error < first.relative_error)
            }
            _ => false,
        }
    }

    pub fn targets_agree(&self) -> bool {
        self.target == self.target_by_integration && self.target == self.target_rewritten
    }
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().expect("finite rational")
}

fn pochhammer_f64(a: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (a + j as f64))
}

/// `Q_m(x; a, b, M)` from its terminating `₃F₂` sum.
fn hahn_f64(m: usize, a: f64, b: f64, big_m: f64, x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..m {
        let k = k as f64;
        term *= (k - m as f64) * (m as f64 + a + b + 1.0 + k) * (k - x) / ((a + 1.0 + k) * (k - big_m) * (k + 1.0));
        sum += term;
    }
    sum
}

/// Left side of the second identity at `N`, in double precision.
fn second_identity_f64(alpha: f64, beta: f64, n: usize, big_n: usize) -> f64 {
    let nf = n as f64;
    let big = big_n as f64;
    let s = alpha + beta + 1.0;
    let eig = nf * (nf + s + 1.0);
    let c1 = 1.0 - eig / ((beta + 1.0) * big);
    let c2 = eig / (big * (big - 1.0) * (alpha + 1.0) * (beta + 1.0));
    let lw0 = ln_gamma(alpha + 1.0) + ln_gamma(beta + 1.0);
    let mut squares = 0.0;
    let mut cross = 0.0;
    for x in 0..=big_n {
        let xf = x as f64;
        let w = (ln_gamma(alpha + 1.0 + xf) - ln_gamma(xf + 1.0) + ln_gamma(beta + 1.0 + big - xf)
            - ln_gamma(big - xf + 1.0)
            - lw0)
            .exp();
        let q = hahn_f64(n, alpha, beta + 1.0, big - 1.0, xf);
        squares += q * q * w;
        if n > 0 {
            cross += q * hahn_f64(n - 1, alpha + 1.0, beta + 2.0, big - 2.0, xf) * (xf + alpha + 1.0) * w;
        }
    }
    c1 * squares - c2 * cross
}

/// Rescales the second identity's left side by `N^{−s} Γ(s+1) ((α+1)_n/n!)²`
/// for each `N` and compares it with the exact limit over `h_0`.
pub fn jacobi_limit_check(alpha: &Rational, beta: &Rational, n: usize, big_ns: &[usize]) -> Result<LimitReport> {
    if big_ns.is_empty() || big_ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::ParameterRange("N list must be nonempty and increasing".into()));
    }
    for &big_n in big_ns {
        if big_n < 2 * n + 2 {
            return Err(Error::ParameterRange(format!("N = {big_n} is below 2n+2")));
        }
        if big_n > LIMIT_MAX_N {
            return Err(Error::ParameterRange(format!("N = {big_n} exceeds {LIMIT_MAX_N}")));
        }
    }
    if alpha + beta == rat(-1) {
        return Err(Error::ParameterRange("alpha + beta = -1 is excluded".into()));
    }
    let target = jacobi_limit_target(alpha, beta, n);
    let measure = FamilySpec::jacobi(alpha.clone(), beta.clone())?;
    let p = generate_ops(&FamilySpec::jacobi(alpha.clone(), beta + rat(1))?, n)?.pop().expect("nonempty");
    let target_by_integration = Basis::new(&measure, n)?.inner_product(&p, &p)?;
    let target_rewritten = jacobi_endpoint_norm(beta, alpha, n);

    let (a, b) = (to_f64(alpha), to_f64(beta));
    let s = a + b + 1.0;
    let norm = pochhammer_f64(a + 1.0, n) / to_f64(&factorial(n));
    let exact = to_f64(&target);
    let points = big_ns
        .iter()
        .map(|&big_n| {
            let value = second_identity_f64(a, b, n, big_n) * (big_n as f64).powf(-s) * ln_gamma(s + 1.0).exp() * norm * norm;
            LimitPoint { big_n, value, relative_error: ((value - exact) / exact).abs() }
        })
        .collect();
    Ok(LimitReport {
        alpha: alpha.clone(),
        beta: beta.clone(),
        n,
        target,
        target_by_integration,
        target_rewritten,
        points,
    })
}
