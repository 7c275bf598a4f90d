//! Terminating hypergeometric series with an explicit last index, closed-form
//! summations, contiguous relations and indefinite-sum certificates.

use crate::check::Equality;
use crate::error::{Error, Result};
use crate::exactnum::{factorial, pochhammer, rat, ratio, Rational, Scalar};
use crate::poly::Poly;

/// `Σ_{k=0}^{trunc} ∏(num)_k / ∏(den)_k · z^k / k!`.
///
/// Termination is always carried by `trunc`; it is never inferred from a
/// nonpositive integer among the parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<S> {
    pub num: Vec<S>,
    pub den: Vec<S>,
    pub z: S,
    pub trunc: usize,
}

impl<S: Scalar> TruncatedSeries<S> {
    pub fn new(num: Vec<S>, den: Vec<S>, z: S, trunc: usize) -> Self {
        TruncatedSeries { num, den, z, trunc }
    }

    /// Parameter lists with every value occurring in both rows removed once
    /// per matching pair.
    pub fn cancelled(&self) -> (Vec<S>, Vec<S>) {
        let mut num = Vec::with_capacity(self.num.len());
        let mut den = self.den.clone();
        for a in &self.num {
            match den.iter().position(|b| b == a) {
                Some(i) => {
                    den.remove(i);
                }
                None => num.push(a.clone()),
            }
        }
        (num, den)
    }

    pub fn eval(&self) -> Result<S> {
        let terms = self.terms()?;
        Ok(terms.into_iter().reduce(|a, b| a + b).expect("term 0 is always present"))
    }

    /// The individual terms `0..=trunc`.
    pub fn terms(&self) -> Result<Vec<S>> {
        let (num, den) = self.cancelled();
        for b in &den {
            for j in 0..self.trunc {
                if b.add_rational(&rat(j as i64)).is_zero_value() {
                    return Err(Error::VanishingDenominator { param: b.to_string(), k: j + 1 });
                }
            }
        }
        let mut term = self.z.one_like();
        let mut out = Vec::with_capacity(self.trunc + 1);
        out.push(term.clone());
        for k in 0..self.trunc {
            let kr = rat(k as i64);
            let mut r = self.z.clone() / self.z.lift(&rat(k as i64 + 1));
            for a in &num {
                r = r * a.add_rational(&kr);
            }
            for b in &den {
                r = r / b.add_rational(&kr);
            }
            term = term * r;
            out.push(term.clone());
        }
        Ok(out)
    }
}

pub fn eval_truncated<S: Scalar>(series: &TruncatedSeries<S>) -> Result<S> {
    series.eval()
}

fn rational_series(num: &[Rational], den: &[Rational], z: Rational, trunc: usize) -> TruncatedSeries<Rational> {
    TruncatedSeries::new(num.to_vec(), den.to_vec(), z, trunc)
}

fn nonvanishing(param: &Rational, n: usize) -> Result<()> {
    if pochhammer(param, n) == rat(0) {
        Err(Error::VanishingDenominator { param: param.to_string(), k: n })
    } else {
        Ok(())
    }
}

/// `₂F₁(−n, b; c; 1)` summed directly, against `(c−b)_n/(c)_n`.
pub fn chu_vandermonde(n: usize, b: &Rational, c: &Rational) -> Result<Equality<Rational>> {
    nonvanishing(c, n)?;
    let lhs = rational_series(&[rat(-(n as i64)), b.clone()], &[c.clone()], rat(1), n).eval()?;
    Ok(Equality::new(lhs, pochhammer(&(c - b), n) / pochhammer(c, n)))
}

/// Balanced `₃F₂(−n, a, b; c, 1+a+b−c−n; 1)` summed directly, against
/// `(c−a)_n (c−b)_n / ((c)_n (c−a−b)_n)`.
pub fn pfaff_saalschutz(a: &Rational, b: &Rational, c: &Rational, n: usize) -> Result<Equality<Rational>> {
    let lower = rat(1) + a + b - c - rat(n as i64);
    nonvanishing(c, n)?;
    nonvanishing(&(c - a - b), n)?;
    let lhs = rational_series(&[rat(-(n as i64)), a.clone(), b.clone()], &[c.clone(), lower], rat(1), n).eval()?;
    let rhs = pochhammer(&(c - a), n) * pochhammer(&(c - b), n) / (pochhammer(c, n) * pochhammer(&(c - a - b), n));
    Ok(Equality::new(lhs, rhs))
}

/// The contiguous relation lowering the last numerator parameter by one:
/// `F(a; b; z) = F(a_1, …, a_r − 1; b; z) + (a_1⋯a_{r−1} z / b_1⋯b_s) F(a_1+1, …, a_{r−1}+1, a_r; b+1; z)`,
/// with every series cut at `trunc` (the shifted one at `trunc − 1`).
pub fn contiguous_check<S: Scalar>(num: &[S], den: &[S], z: &S, trunc: usize) -> Result<Equality<S>> {
    let Some((last, head)) = num.split_last() else {
        return Err(Error::ParameterRange("contiguous relation needs a numerator parameter".into()));
    };
    let lhs = TruncatedSeries::new(num.to_vec(), den.to_vec(), z.clone(), trunc).eval()?;
    let mut lowered = head.to_vec();
    lowered.push(last.add_rational(&rat(-1)));
    let mut rhs = TruncatedSeries::new(lowered, den.to_vec(), z.clone(), trunc).eval()?;
    if trunc > 0 {
        let mut factor = z.clone();
        for a in head {
            factor = factor * a.clone();
        }
        for b in den {
            factor = factor / b.clone();
        }
        let mut up: Vec<S> = head.iter().map(|a| a.add_rational(&rat(1))).collect();
        up.push(last.clone());
        let den_up = den.iter().map(|b| b.add_rational(&rat(1))).collect();
        rhs = rhs + factor * TruncatedSeries::new(up, den_up, z.clone(), trunc - 1).eval()?;
    }
    Ok(Equality::new(lhs, rhs))
}

/// Appell `F₂(a; b1, b2; c1, c2; x, y)` cut at `m ≤ trunc1`, `j ≤ trunc2`.
#[allow(clippy::too_many_arguments)]
pub fn appell_f2_terminating(
    a: &Rational,
    b1: &Rational,
    b2: &Rational,
    c1: &Rational,
    c2: &Rational,
    x: &Rational,
    y: &Rational,
    trunc1: usize,
    trunc2: usize,
) -> Result<Rational> {
    nonvanishing(c1, trunc1)?;
    nonvanishing(c2, trunc2)?;
    let mut sum = rat(0);
    let mut xm = rat(1);
    for m in 0..=trunc1 {
        let outer = pochhammer(b1, m) / (pochhammer(c1, m) * factorial(m)) * &xm;
        let mut yj = rat(1);
        for j in 0..=trunc2 {
            sum += pochhammer(a, m + j) * &outer * pochhammer(b2, j) / (pochhammer(c2, j) * factorial(j)) * &yj;
            yj *= y;
        }
        xm *= x;
    }
    Ok(sum)
}

/// The chain expressing `⟨L_n^{α+1}, L_n^{α+1}⟩/h_0` in the Laguerre(α) measure
/// as an Appell double sum, then as a single sum of `₂F₁`'s, then with each
/// `₂F₁` summed by Chu–Vandermonde. Each link is checked; the returned pair
/// is the double-sum value against `(α+2)_n/n!`.
pub fn laguerre_appell_chain(alpha: &Rational, n: usize) -> Result<Equality<Rational>> {
    let one = rat(1);
    let a = alpha + &one;
    let c = alpha + rat(2);
    let minus_n = rat(-(n as i64));
    let q0 = pochhammer(&c, n) / factorial(n);
    let scale = &q0 * &q0;
    let double = appell_f2_terminating(&a, &minus_n, &minus_n, &c, &c, &one, &one, n, n)? * &scale;
    let mut single = rat(0);
    let mut summed = rat(0);
    for m in 0..=n {
        let w = pochhammer(&a, m) * pochhammer(&minus_n, m) / (factorial(m) * pochhammer(&c, m));
        let inner = chu_vandermonde(n, &(alpha + rat(m as i64 + 1)), &c)?;
        single += &w * &inner.lhs;
        summed += &w * &inner.rhs;
    }
    Equality::new(double.clone(), &single * &scale).verify("Appell double sum against single sum")?;
    Equality::new(double.clone(), &summed * &scale).verify("Chu-Vandermonde reduction")?;
    Ok(Equality::new(double, q0))
}

/// A hypergeometric term
/// `constant · ∏(num)_k/∏(den)_k · power^k · poly_num(k)/poly_den(k)`.
/// Factorials enter as a `1` among the Pochhammer parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperTerm {
    pub constant: Rational,
    pub num: Vec<Rational>,
    pub den: Vec<Rational>,
    pub power: Rational,
    pub poly_num: Poly,
    pub poly_den: Poly,
}

impl HyperTerm {
    pub fn new(constant: Rational, num: Vec<Rational>, den: Vec<Rational>) -> Self {
        HyperTerm { constant, num, den, power: rat(1), poly_num: Poly::one(), poly_den: Poly::one() }
    }

    pub fn eval(&self, k: usize) -> Result<Rational> {
        let kr = rat(k as i64);
        let mut denom = self.poly_den.eval(&kr);
        for b in &self.den {
            denom *= pochhammer(b, k);
        }
        if denom == rat(0) {
            return Err(Error::DivisionByZero);
        }
        let mut numer = &self.constant * self.poly_num.eval(&kr);
        for a in &self.num {
            numer *= pochhammer(a, k);
        }
        for _ in 0..k {
            numer *= &self.power;
        }
        Ok(numer / denom)
    }
}

/// Checks `c_0 = s_0` and `s_n − s_{n−1} = c_n` for `1 ≤ n ≤ nmax`, which proves
/// `Σ_{k≤n} c_k = s_n`. Returns `s_nmax`; a failure names the first bad `n`.
pub fn indefinite_sum_certificate(term: &HyperTerm, closed: &HyperTerm, nmax: usize) -> Result<Rational> {
    let mut prev = closed.eval(0)?;
    if term.eval(0)? != prev {
        return Err(Error::Certificate(0));
    }
    for n in 1..=nmax {
        let cur = closed.eval(n)?;
        if &cur - &prev != term.eval(n)? {
            return Err(Error::Certificate(n));
        }
        prev = cur;
    }
    Ok(prev)
}

/// Summand of the Jacobi endpoint sum
/// `((s+2)/2)_k (s)_k (α+1)_k / ((s/2)_k (β+1)_k k!)`, `s = α+β+1`.
pub fn jacobi_endpoint_term(alpha: &Rational, beta: &Rational) -> HyperTerm {
    let s = alpha + beta + rat(1);
    HyperTerm::new(
        rat(1),
        vec![(&s + rat(2)) * ratio(1, 2), s.clone(), alpha + rat(1)],
        vec![&s * ratio(1, 2), beta + rat(1), rat(1)],
    )
}

/// `(α+2)_n (α+β+2)_n / ((β+1)_n n!)`.
pub fn jacobi_endpoint_sum(alpha: &Rational, beta: &Rational) -> HyperTerm {
    HyperTerm::new(rat(1), vec![alpha + rat(2), alpha + beta + rat(2)], vec![beta + rat(1), rat(1)])
}

/// The same sum as a very-well-poised `₅F₄(1)` carrying `−n` and `n+α+β+2`
/// in both rows.
pub fn jacobi_vwp_series(alpha: &Rational, beta: &Rational, n: usize) -> TruncatedSeries<Rational> {
    let s = alpha + beta + rat(1);
    let big = rat(n as i64) + alpha + beta + rat(2);
    let minus_n = rat(-(n as i64));
    TruncatedSeries::new(
        vec![s.clone(), rat(1) + &s * ratio(1, 2), alpha + rat(1), big.clone(), minus_n.clone()],
        vec![&s * ratio(1, 2), beta + rat(1), minus_n, big],
        rat(1),
        n,
    )
}

/// `(α+1)_k / k!`, the Laguerre endpoint summand.
pub fn laguerre_endpoint_term(alpha: &Rational) -> HyperTerm {
    HyperTerm::new(rat(1), vec![alpha + rat(1)], vec![rat(1)])
}

/// `(α+2)_n / n!`.
pub fn laguerre_endpoint_sum(alpha: &Rational) -> HyperTerm {
    HyperTerm::new(rat(1), vec![alpha + rat(2)], vec![rat(1)])
}
