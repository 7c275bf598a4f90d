//! Batch runner: expands a [`SuiteConfig`] into independent checks, runs them
//! on a worker pool and collects [`IdentityReport`]s in a stable order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::basis::{recurrence_identity_checks, Basis};
use crate::cdkernel::{
    cd_confluent, cd_diagonal_sum, cd_discrete, cd_even_at_origin, cd_kernel, cross_kernel_check, kernel_poly,
    kernel_poly_at_point, kernel_poly_norm, kernel_poly_property, quadratic_transform_check, reproduce, KernelForm,
};
use crate::check::Equality;
use crate::error::{Error, Result};
use crate::exactnum::{factorial, parse_rational, pochhammer, rat, ratio, Rational};
use crate::families::{FamilyKind, FamilySpec};
use crate::hahn::{
    derivation_chain_check, eq46_lhs, jacobi_endpoint_norm, eq46_rhs, eq60_lhs, first_identity, hahn_connection_check, jacobi_limit_check,
    lambda_kernel_check, second_identity_check, FirstIdentityForm, HahnContext,
};
use crate::hyp::{
    chu_vandermonde, contiguous_check, indefinite_sum_certificate, jacobi_endpoint_sum, jacobi_endpoint_term,
    jacobi_vwp_series, laguerre_appell_chain, laguerre_endpoint_sum, laguerre_endpoint_term, pfaff_saalschutz, TruncatedSeries,
};
use crate::poly::Poly;
use crate::symmetric::{
    chebyshev_in_pi_units, known_value, ps_cd_proportionality, ps_integral, ps_projection_check, ps_sequence,
    recurrence_form_check, PsMethod,
};

/// Highest `n` for the direct (polynomial-squaring) integral method.
pub const DIRECT_METHOD_MAX_N: usize = 6;
/// Highest order used by the kernel-form checks of the core suite.
pub const CORE_MAX_N: usize = 6;
/// Highest `n` for the Appell double-sum chain.
pub const APPELL_MAX_N: usize = 6;
/// Highest `n` for the floating-point limit check.
pub const LIMIT_MAX_ORDER: usize = 4;
/// Values of `N` used by the limit check, increasing.
pub const LIMIT_NS: [usize; 4] = [50, 100, 200, 400];
/// Randomized instances per property.
pub const PROPERTY_INSTANCES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Core,
    Symmetric,
    Jacobi,
    Laguerre,
    Hahn,
    Hyp,
    Limits,
    Properties,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Core,
        Suite::Symmetric,
        Suite::Jacobi,
        Suite::Laguerre,
        Suite::Hahn,
        Suite::Hyp,
        Suite::Limits,
        Suite::Properties,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Symmetric => "symmetric",
            Suite::Jacobi => "jacobi",
            Suite::Laguerre => "laguerre",
            Suite::Hahn => "hahn",
            Suite::Hyp => "hyp",
            Suite::Limits => "limits",
            Suite::Properties => "properties",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))
    }
}

/// Family names accepted by the family filter.
pub const FAMILY_NAMES: [&str; 8] =
    ["legendre", "chebyshev_t", "chebyshev_u", "hermite", "gegenbauer", "jacobi", "laguerre", "hahn"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::Config(format!("unknown format {s:?}"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Text => "text",
            OutputFormat::Json => "json",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub suites: BTreeSet<Suite>,
    pub alphas: Vec<Rational>,
    pub betas: Vec<Rational>,
    pub big_ns: Vec<usize>,
    pub nmax: usize,
    pub seed: u64,
    pub jobs: usize,
    pub format: OutputFormat,
    /// `None` runs every family.
    pub families: Option<BTreeSet<String>>,
}

fn default_params() -> Vec<Rational> {
    vec![ratio(-1, 2), ratio(-1, 3), rat(0), ratio(1, 2), rat(1), ratio(7, 3)]
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suites: Suite::ALL.into_iter().collect(),
            alphas: default_params(),
            betas: default_params(),
            big_ns: vec![3, 5, 8, 12],
            nmax: 10,
            seed: 0,
            jobs: 1,
            format: OutputFormat::Text,
            families: None,
        }
    }
}

fn split_list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn parse_usize(key: &str, value: &str) -> Result<usize> {
    value.trim().parse().map_err(|_| Error::Config(format!("{key}: not a nonnegative integer: {value:?}")))
}

impl SuiteConfig {
    /// Sets one key from a config file or command line; list values are
    /// comma separated.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "suite" | "suites" => {
                self.suites = split_list(value).map(Suite::from_str).collect::<Result<_>>()?;
            }
            "alpha" => self.alphas = split_list(value).map(parse_rational).collect::<Result<_>>()?,
            "beta" => self.betas = split_list(value).map(parse_rational).collect::<Result<_>>()?,
            "bigN" | "big_n" | "N" => {
                self.big_ns = split_list(value).map(|v| parse_usize(key, v)).collect::<Result<_>>()?;
            }
            "nmax" => self.nmax = parse_usize(key, value)?,
            "seed" => {
                self.seed = value.trim().parse().map_err(|_| Error::Config(format!("seed: not an integer: {value:?}")))?;
            }
            "jobs" => self.jobs = parse_usize(key, value)?,
            "format" => self.format = value.trim().parse()?,
            "family" | "families" => {
                let names: BTreeSet<String> = split_list(value).map(str::to_string).collect();
                if let Some(bad) = names.iter().find(|n| !FAMILY_NAMES.contains(&n.as_str())) {
                    return Err(Error::Config(format!("unknown family {bad:?}")));
                }
                self.families = Some(names);
            }
            _ => return Err(Error::Config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    /// Applies a flat `key = value` file; `#` starts a comment.
    pub fn apply_file(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
            self.set(key.trim(), value.trim().trim_matches('"'))?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.suites.is_empty() {
            return Err(Error::Config("no suites selected".into()));
        }
        if self.alphas.is_empty() || self.betas.is_empty() || self.big_ns.is_empty() {
            return Err(Error::Config("parameter grid is empty".into()));
        }
        for a in self.alphas.iter().chain(&self.betas) {
            if *a <= rat(-1) {
                return Err(Error::Config(format!("parameter {a} must exceed -1")));
            }
        }
        if let Some(bad) = self.big_ns.iter().find(|&&n| n < 2) {
            return Err(Error::Config(format!("N = {bad} must be at least 2")));
        }
        if self.jobs == 0 {
            return Err(Error::Config("jobs must be at least 1".into()));
        }
        if self.families.as_ref().is_some_and(|f| f.is_empty()) {
            return Err(Error::Config("family filter is empty".into()));
        }
        Ok(())
    }

    fn wants(&self, family: &str) -> bool {
        self.families.as_ref().is_none_or(|f| f.contains(family))
    }

    /// Grid pairs, leaving out `α + β = −1` where `(s/2)_k` vanishes.
    fn pairs(&self) -> Vec<(Rational, Rational)> {
        let mut out = Vec::new();
        for a in &self.alphas {
            for b in &self.betas {
                if a + b != rat(-1) {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    }

    /// The configuration as it appears in the JSON report.
    pub fn to_json(&self) -> serde_json::Value {
        let strs = |v: &[Rational]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        json!({
            "suites": self.suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
            "alpha": strs(&self.alphas),
            "beta": strs(&self.betas),
            "bigN": self.big_ns,
            "nmax": self.nmax,
            "seed": self.seed,
            "jobs": self.jobs,
            "format": self.format.to_string(),
            "families": self.families.as_ref().map(|f| f.iter().cloned().collect::<Vec<_>>()),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub identity_id: String,
    pub params: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
    pub status: Status,
    pub elapsed_ms: f64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

pub fn summarize(reports: &[IdentityReport]) -> Summary {
    let mut s = Summary::default();
    for r in reports {
        match r.status {
            Status::Pass => s.pass += 1,
            Status::Fail => s.fail += 1,
            Status::Skipped => s.skipped += 1,
        }
    }
    s
}

/// What a single check produced.
enum Outcome {
    /// Passes iff the two canonical strings are equal.
    Exact(String, String),
    /// Passes iff the flag is set (floating-point comparison).
    Tolerance(String, String, bool),
    Skipped(String),
}

impl<T: fmt::Display> From<Equality<T>> for Outcome {
    fn from(eq: Equality<T>) -> Self {
        Outcome::Exact(eq.lhs.to_string(), eq.rhs.to_string())
    }
}

type Check = Box<dyn Fn() -> Result<Outcome> + Send + Sync>;

struct Task {
    id: String,
    params: BTreeMap<String, String>,
    check: Check,
}

fn task(id: &str, params: &[(&str, String)], check: impl Fn() -> Result<Outcome> + Send + Sync + 'static) -> Task {
    Task {
        id: id.to_string(),
        params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        check: Box::new(check),
    }
}

fn run_task(t: &Task) -> IdentityReport {
    let start = Instant::now();
    let (lhs, rhs, status) = match (t.check)() {
        Ok(Outcome::Exact(l, r)) => {
            let status = if l == r { Status::Pass } else { Status::Fail };
            (l, r, status)
        }
        Ok(Outcome::Tolerance(l, r, ok)) => (l, r, if ok { Status::Pass } else { Status::Fail }),
        Ok(Outcome::Skipped(why)) => (why, String::new(), Status::Skipped),
        Err(e) => (format!("error: {e}"), String::new(), Status::Fail),
    };
    let elapsed_ms = (start.elapsed().as_secs_f64() * 1e6).round() / 1e3;
    IdentityReport { identity_id: t.id.clone(), params: t.params.clone(), lhs, rhs, status, elapsed_ms }
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
enum SortValue {
    Num(Rational),
    Text(String),
}

fn sort_key(r: &IdentityReport) -> (String, Vec<(String, SortValue)>) {
    let params = r
        .params
        .iter()
        .map(|(k, v)| {
            let val = parse_rational(v).map(SortValue::Num).unwrap_or_else(|_| SortValue::Text(v.clone()));
            (k.clone(), val)
        })
        .collect();
    (r.identity_id.clone(), params)
}

fn even_families(config: &SuiteConfig) -> Vec<(String, FamilySpec)> {
    let mut out = Vec::new();
    for (name, f) in [
        ("legendre", FamilySpec::legendre()),
        ("chebyshev_t", FamilySpec::chebyshev_t()),
        ("chebyshev_u", FamilySpec::chebyshev_u()),
        ("hermite", FamilySpec::hermite()),
    ] {
        if config.wants(name) {
            out.push((name.to_string(), f));
        }
    }
    if config.wants("gegenbauer") {
        for a in &config.alphas {
            if let Ok(f) = FamilySpec::gegenbauer(a.clone()) {
                out.push(("gegenbauer".to_string(), f));
            }
        }
    }
    out
}

fn all_families(config: &SuiteConfig) -> Vec<FamilySpec> {
    let mut out: Vec<FamilySpec> = even_families(config).into_iter().map(|(_, f)| f).collect();
    if config.wants("jacobi") {
        for (a, b) in config.pairs() {
            out.extend(FamilySpec::jacobi(a, b));
        }
    }
    if config.wants("laguerre") {
        for a in &config.alphas {
            out.extend(FamilySpec::laguerre(a.clone()));
        }
    }
    if config.wants("hahn") {
        for (a, b) in config.pairs() {
            for &big_n in &config.big_ns {
                out.extend(FamilySpec::hahn(a.clone(), b.clone(), big_n));
            }
        }
    }
    out
}

fn top_degree(family: &FamilySpec, cap: usize) -> usize {
    family.max_degree().map_or(cap, |m| cap.min(m - 1))
}

fn core_tasks(config: &SuiteConfig, out: &mut Vec<Task>) {
    let nmax = config.nmax.min(CORE_MAX_N);
    for f in all_families(config) {
        for n in 0..=top_degree(&f, nmax) {
            let p = || vec![("family", f.to_string()), ("n", n.to_string())];
            let g = f.clone();
            out.push(task("eq11", &p(), move || {
                let (x, y) = (ratio(1, 3), ratio(-2, 5));
                Ok(Equality::new(
                    cd_kernel(&g, n, &x, &y, KernelForm::Sum)?,
                    cd_kernel(&g, n, &x, &y, KernelForm::Quotient)?,
                )
                .into())
            }));
            let g = f.clone();
            out.push(task("eq26", &p(), move || {
                let x = ratio(2, 7);
                Ok(Equality::new(cd_diagonal_sum(&g, n, &x)?, cd_confluent(&g, n, &x)?).into())
            }));
            let g = f.clone();
            out.push(task("eq57", &p(), move || {
                let q = Poly::new((0..=n as i64).map(|i| ratio(2 * i - 3, i + 1)).collect());
                Ok(reproduce(&g, n, &q, &ratio(1, 4))?.into())
            }));
            let g = f.clone();
            out.push(task("eq49", &p(), move || {
                let (x0, x1) = match g.big_n() {
                    Some(big) => (rat(big as i64), rat(big as i64 - 1)),
                    None => (rat(1), ratio(-1, 2)),
                };
                Ok(cross_kernel_check(&g, n, &x0, &x1)?.into())
            }));
            if f.is_even() {
                let g = f.clone();
                out.push(task("eq27", &p(), move || {
                    Ok(Equality::new(cd_diagonal_sum(&g, 2 * n, &rat(0))?, cd_even_at_origin(&g, n)?).into())
                }));
            }
            if let Some(big) = f.big_n() {
                let g = f.clone();
                out.push(task("eq38", &p(), move || {
                    let mut lhs = Vec::new();
                    let mut rhs = Vec::new();
                    for x in 1..=big {
                        let x = rat(x as i64);
                        lhs.push(cd_discrete(&g, n, &x)?.to_string());
                        rhs.push(cd_kernel(&g, n, &x, &(&x - rat(1)), KernelForm::Sum)?.to_string());
                    }
                    Ok(Outcome::Exact(lhs.join(";"), rhs.join(";")))
                }));
            }
        }
    }
}

fn symmetric_tasks(config: &SuiteConfig, out: &mut Vec<Task>) {
    for (name, f) in even_families(config) {
        let id = match name.as_str() {
            "legendre" => "eq36",
            "hermite" => "hermite_ps",
            "chebyshev_t" | "chebyshev_u" => "chebyshev_ps",
            _ => "eq35",
        };
        for method in PsMethod::ALL {
            let top = if method == PsMethod::Direct { config.nmax.min(DIRECT_METHOD_MAX_N) } else { config.nmax };
            for n in 0..=top {
                let p = vec![("family", f.to_string()), ("method", method.to_string()), ("n", n.to_string())];
                let g = f.clone();
                let cheb = id == "chebyshev_ps";
                out.push(task(id, &p, move || {
                    let value = ps_integral(&g, n, method)?.value;
                    if cheb {
                        let extra = if matches!(g.kind(), FamilyKind::ChebyshevU) { 2 } else { 1 };
                        let expected = rat(2 * n as i64 + extra);
                        return Ok(Equality::new(chebyshev_in_pi_units(&g, &value, n)?, expected).into());
                    }
                    let expected = known_value(&g, n).ok_or(Error::Undefined {
                        what: "closed form".into(),
                        family: g.to_string(),
                    })?;
                    Ok(Equality::new(value, expected).into())
                }));
            }
        }
        for n in 0..=config.nmax {
            let p = vec![("family", f.to_string()), ("n", n.to_string())];
            let g = f.clone();
            out.push(task("eq58", &p, move || Ok(ps_cd_proportionality(&g, n)?.into())));
            let g = f.clone();
            out.push(task("eq59", &p, move || {
                let q = Poly::new((0..=(2 * n + 1) as i64).map(|i| ratio(5 - i * i, i + 2)).collect());
                Ok(ps_projection_check(&g, n, &q)?.into())
            }));
            if n >= 1 {
                let g = f.clone();
                out.push(task("eq25", &p, move || {
                    let [a, b] = recurrence_form_check(&g, n)?;
                    Ok(Outcome::Exact(format!("{};{}", a.lhs, b.lhs), format!("{};{}", a.rhs, b.rhs)))
                }));
            }
        }
        let g = f.clone();
        let nmax = config.nmax;
        out.push(task("ps_methods", &[("family", f.to_string()), ("nmax", nmax.to_string())], move || {
            let rec = ps_sequence(&g, nmax, PsMethod::Recurrence)?;
            let cd = ps_sequence(&g, nmax, PsMethod::CdSum)?;
            let closed = ps_sequence(&g, nmax, PsMethod::ClosedForm)?;
            let join = |v: &[Rational]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(";");
            Equality::new(join(&rec), join(&cd)).verify("recurrence = kernel sum")?;
            Ok(Equality::new(join(&rec), join(&closed)).into())
        }));
    }
}

fn jacobi_tasks(config: &SuiteConfig, out: &mut Vec<Task>) {
    if !config.wants("jacobi") {
        return;
    }
    for (a, b) in config.pairs() {
        let Ok(f) = FamilySpec::jacobi(a.clone(), b.clone()) else { continue };
        for n in 0..=config.nmax {
            let p = vec![("alpha", a.to_string()), ("beta", b.to_string()), ("n", n.to_string())];
            let g = f.clone();
            let (a2, b2) = (a.clone(), b.clone());
            out.push(task("eq10", &p, move || {
                let kp = kernel_poly(&g, &rat(1), n)?;
                let norm = Basis::new(&g, n)?.inner_product(&kp.q, &kp.q)?;
                Ok(Equality::new(norm, jacobi_endpoint_norm(&a2, &b2, n)).into())
            }));
            let g = f.clone();
            out.push(task("eq9", &p, move || Ok(kernel_poly_norm(&g, &rat(1), n)?.into())));
            let g = f.clone();
            out.push(task("eq4", &p, move || Ok(kernel_poly_at_point(&g, &rat(1), n)?.into())));
            let g = f.clone();
            let (a2, b2) = (a.clone(), b.clone());
            out.push(task("kernel_constant", &p, move || {
                let kp = kernel_poly(&g, &rat(1), n)?;
                let expected = pochhammer(&(&b2 + rat(1)), n) / pochhammer(&(&a2 + &b2 + rat(2)), n);
                Ok(Equality::new(kp.cn_over_h0, expected).into())
            }));
            let g = f.clone();
            out.push(task("eq41", &p, move || {
                let q = Poly::new((0..=n as i64).map(|i| ratio(i - 2, 2 * i + 1)).collect());
                Ok(kernel_poly_property(&g, &rat(1), n, &q)?.into())
            }));
            let (a2, b2) = (a.clone(), b.clone());
            out.push(task("eq15", &p, move || {
                let series = jacobi_vwp_series(&a2, &b2, n).eval()?;
                Ok(Equality::new(series, jacobi_endpoint_sum(&a2, &b2).eval(n)?).into())
            }));
        }
        {
            let p = vec![("alpha", a.to_string()), ("beta", b.to_string()), ("nmax", config.nmax.to_string())];
            let (a2, b2, nmax) = (a.clone(), b.clone(), config.nmax);
            out.push(task("eq12", &p, move || {
                let term = jacobi_endpoint_term(&a2, &b2);
                let closed = jacobi_endpoint_sum(&a2, &b2);
                let certified = indefinite_sum_certificate(&term, &closed, nmax)?;
                let mut direct = rat(0);
                for k in 0..=nmax {
                    direct += term.eval(k)?;
                }
                Ok(Equality::new(direct, certified).into())
            }));
        }
    }
    if config.wants("gegenbauer") {
        for a in &config.alphas {
            for n in 0..=config.nmax.min(5) {
                let a2 = a.clone();
                out.push(task("quadratic_transform", &[("alpha", a.to_string()), ("n", n.to_string())], move || {
                    Ok(quadratic_transform_check(&a2, n)?.into())
                }));
            }
        }
    }
}

fn laguerre_tasks(config: &SuiteConfig, out: &mut Vec<Task>) {
    if !config.wants("laguerre") {
        return;
    }
    for a in &config.alphas {
        let Ok(f) = FamilySpec::laguerre(a.clone()) else { continue };
        for n in 0..=config.nmax {
            let p = vec![("alpha", a.to_string()), ("n", n.to_string())];
            let (g, a2) = (f.clone(), a.clone());
            out.push(task("eq31", &p, move || {
                let kp = kernel_poly(&g, &rat(0), n)?;
                let norm = Basis::new(&g, n)?.inner_product(&kp.q, &kp.q)?;
                Ok(Equality::new(norm, pochhammer(&(&a2 + rat(2)), n) / factorial(n)).into())
            }));
            let g = f.clone();
            out.push(task("eq9", &p, move || Ok(kernel_poly_norm(&g, &rat(0), n)?.into())));
            let g = f.clone();
            out.push(task("eq4", &p, move || Ok(kernel_poly_at_point(&g, &rat(0), n)?.into())));
            let g = f.clone();
            out.push(task("kernel_constant", &p, move || {
                Ok(Equality::new(kernel_poly(&g, &rat(0), n)?.cn_over_h0, rat(1)).into())
            }));
            if n <= APPELL_MAX_N {
                let a2 = a.clone();
                out.push(task("appell_f2", &p, move || Ok(laguerre_appell_chain(&a2, n)?.into())));
            }
        }
        let (a2, nmax) = (a.clone(), config.nmax);
        out.push(task("eq32", &[("alpha", a.to_string()), ("nmax", nmax.to_string())], move || {
            let term = laguerre_endpoint_term(&a2);
            let certified = indefinite_sum_certificate(&term, &laguerre_endpoint_sum(&a2), nmax)?;
            let minus_n = rat(-(nmax as i64));
            let series = TruncatedSeries::new(vec![minus_n.clone(), &a2 + rat(1)], vec![minus_n], rat(1), nmax)
                .eval()?;
            Ok(Equality::new(series, certified).into())
        }));
    }
}

fn hahn_tasks(config: &SuiteConfig, out: &mut Vec<Task>) {
    if !config.wants("hahn") {
        return;
    }
    for (a, b) in config.pairs() {
        for &big_n in &config.big_ns {
            let ctx = match HahnContext::new(a.clone(), b.clone(), big_n) {
                Ok(ctx) => ctx,
                Err(e) => {
                    let p = vec![("alpha", a.to_string()), ("beta", b.to_string()), ("N", big_n.to_string())];
                    let why = e.to_string();
                    out.push(task("hahn_context", &p, move || Ok(Outcome::Skipped(why.clone()))));
                    continue;
                }
            };
            for n in 0..big_n {
                let p = vec![
                    ("alpha", a.to_string()),
                    ("beta", b.to_string()),
                    ("N", big_n.to_string()),
                    ("n", n.to_string()),
                ];
                let c = ctx.clone();
                out.push(task("eq39", &p, move || Ok(hahn_connection_check(&c, n)?.into())));
                let c = ctx.clone();
                out.push(task("eq45", &p, move || Ok(first_identity(&c, n, FirstIdentityForm::FiniteSum)?.into())));
                let c = ctx.clone();
                out.push(task("eq46", &p, move || Ok(Equality::new(eq46_lhs(&c, n)?, eq46_rhs(&c, n)).into())));
                let c = ctx.clone();
                out.push(task("eq60", &p, move || Ok(Equality::new(eq60_lhs(&c, n)?, eq46_rhs(&c, n)).into())));
                let c = ctx.clone();
                out.push(task("first_identity_forms", &p, move || {
                    let values = FirstIdentityForm::ALL
                        .iter()
                        .map(|&form| first_identity(&c, n, form).map(|eq| eq.lhs.to_string()))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(Outcome::Exact(values.join(";"), vec![c.q_at_n_minus_one(n).to_string(); 3].join(";")))
                }));
                let c = ctx.clone();
                out.push(task("eq48", &p, move || {
                    let report = derivation_chain_check(&c, n)?;
                    Ok(Equality::new(report.expr48, report.rhs46).into())
                }));
                let c = ctx.clone();
                out.push(task("eq53", &p, move || Ok(second_identity_check(&c, n)?.into())));
                let c = ctx.clone();
                out.push(task("lambda", &p, move || Ok(lambda_kernel_check(&c, n)?.into())));
            }
        }
    }
}

fn hyp_tasks(config: &SuiteConfig, out: &mut Vec<Task>) {
    for (a, b) in config.pairs() {
        for n in 0..=config.nmax {
            let p = vec![("a", a.to_string()), ("b", b.to_string()), ("n", n.to_string())];
            let (a2, b2) = (a.clone(), b.clone());
            out.push(task("chu_vandermonde", &p, move || Ok(chu_vandermonde(n, &a2, &(&b2 + ratio(3, 2)))?.into())));
            let (a2, b2) = (a.clone(), b.clone());
            out.push(task("pfaff_saalschutz", &p, move || {
                Ok(pfaff_saalschutz(&a2, &b2, &(&a2 + &b2 + ratio(5, 2)), n)?.into())
            }));
            let (a2, b2) = (a.clone(), b.clone());
            out.push(task("eq51", &p, move || {
                let nn = rat(n as i64);
                let num = [&nn + &a2 + &b2 + rat(2), -nn.clone(), &a2 + rat(7)];
                let den = [&a2 + &b2 + rat(8), &a2 + rat(1)];
                Ok(contiguous_check(&num, &den, &rat(1), n)?.into())
            }));
            let (a2, b2) = (a.clone(), b.clone());
            out.push(task("eq52", &p, move || {
                let num = [rat(-(n as i64)), &a2 + ratio(1, 3), &b2 + ratio(2, 5), &a2 - &b2 + ratio(1, 7)];
                let den = [&a2 + ratio(3, 2), &b2 + ratio(7, 4), ratio(5, 3)];
                Ok(contiguous_check(&num, &den, &rat(-1), n)?.into())
            }));
        }
    }
}

fn limit_tasks(config: &SuiteConfig, out: &mut Vec<Task>) {
    for (a, b) in config.pairs() {
        for n in 0..=config.nmax.min(LIMIT_MAX_ORDER) {
            let ns = LIMIT_NS.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
            let p = vec![("alpha", a.to_string()), ("beta", b.to_string()), ("N", ns), ("n", n.to_string())];
            let (a2, b2) = (a.clone(), b.clone());
            out.push(task("eq54", &p, move || {
                let report = jacobi_limit_check(&a2, &b2, n, &LIMIT_NS)?;
                let last = report.points.last().expect("nonempty N list");
                let errs = report.points.iter().map(|pt| format!("{:.3e}", pt.relative_error)).collect::<Vec<_>>();
                Ok(Outcome::Tolerance(
                    format!("{:.10} (rel err {})", last.value, errs.join(",")),
                    format!("{} (tol {:.3e})", report.target, 10.0 / last.big_n as f64),
                    report.within_tolerance(),
                ))
            }));
            let (a2, b2) = (a.clone(), b.clone());
            let p = vec![("alpha", a.to_string()), ("beta", b.to_string()), ("n", n.to_string())];
            out.push(task("eq54_target", &p, move || {
                let report = jacobi_limit_check(&a2, &b2, n, &[LIMIT_NS[0]])?;
                Equality::new(report.target.clone(), report.target_rewritten.clone()).verify("rewritten limit value")?;
                Ok(Equality::new(report.target, report.target_by_integration).into())
            }));
        }
    }
}

/// Names of the randomized properties, in run order.
pub const PROPERTY_NAMES: [&str; 11] = [
    "prop_cd_quotient",
    "prop_cd_confluent",
    "prop_cd_even_origin",
    "prop_cd_discrete",
    "prop_reproducing",
    "prop_kernel_poly",
    "prop_kernel_norm",
    "prop_cross_kernel",
    "prop_projection",
    "prop_recurrence_coefficients",
    "prop_contiguous",
];

/// Result of running one property on seeded random instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyOutcome {
    pub holding: usize,
    pub total: usize,
    pub first_failure: Option<String>,
}

fn random_param(rng: &mut ChaCha8Rng) -> Rational {
    let q = rng.gen_range(1..=6i64);
    ratio(rng.gen_range(1 - q..=3 * q), q)
}

fn random_point(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-20..=20), rng.gen_range(1..=9))
}

fn random_poly(rng: &mut ChaCha8Rng, deg: usize) -> Poly {
    Poly::new((0..=deg).map(|_| random_point(rng)).collect())
}

fn random_even_family(rng: &mut ChaCha8Rng) -> FamilySpec {
    match rng.gen_range(0..5) {
        0 => FamilySpec::legendre(),
        1 => FamilySpec::chebyshev_t(),
        2 => FamilySpec::chebyshev_u(),
        3 => FamilySpec::hermite(),
        _ => FamilySpec::gegenbauer(random_param(rng)).expect("parameter above -1"),
    }
}

fn random_hahn(rng: &mut ChaCha8Rng) -> FamilySpec {
    let big_n = rng.gen_range(2..=8);
    FamilySpec::hahn(random_param(rng), random_param(rng), big_n).expect("valid parameters")
}

fn random_family(rng: &mut ChaCha8Rng) -> FamilySpec {
    match rng.gen_range(0..4) {
        0 => random_even_family(rng),
        1 => FamilySpec::jacobi(random_param(rng), random_param(rng)).expect("parameters above -1"),
        2 => FamilySpec::laguerre(random_param(rng)).expect("parameter above -1"),
        _ => random_hahn(rng),
    }
}

/// A family with a kernel point whose kernel polynomials have a closed form.
fn random_endpoint_family(rng: &mut ChaCha8Rng) -> (FamilySpec, Rational) {
    match rng.gen_range(0..4) {
        0 => (FamilySpec::jacobi(random_param(rng), random_param(rng)).expect("valid"), rat(1)),
        1 => (FamilySpec::jacobi(random_param(rng), random_param(rng)).expect("valid"), rat(-1)),
        2 => (FamilySpec::laguerre(random_param(rng)).expect("valid"), rat(0)),
        _ => {
            let f = random_hahn(rng);
            let big = rat(f.big_n().expect("hahn") as i64);
            (f, big)
        }
    }
}

fn random_order(rng: &mut ChaCha8Rng, family: &FamilySpec, cap: usize) -> usize {
    rng.gen_range(0..=top_degree(family, cap))
}

/// Parameter that is never an integer, so neither it nor its unit shift makes
/// a Pochhammer vanish.
fn random_lower(rng: &mut ChaCha8Rng) -> Rational {
    let q = rng.gen_range(2..=7i64);
    let mut p = rng.gen_range(-6 * q..=6 * q);
    if p % q == 0 {
        p += 1;
    }
    ratio(p, q)
}

fn property_instance(name: &str, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let report = |ok: bool, what: String| Ok((ok, what));
    match name {
        "prop_cd_quotient" => {
            let f = random_family(rng);
            let n = random_order(rng, &f, 6);
            let x = random_point(rng);
            let mut y = random_point(rng);
            if y == x {
                y += rat(1);
            }
            let eq = Equality::new(cd_kernel(&f, n, &x, &y, KernelForm::Sum)?, cd_kernel(&f, n, &x, &y, KernelForm::Quotient)?);
            report(eq.holds(), format!("{f} n={n} x={x} y={y}"))
        }
        "prop_cd_confluent" => {
            let f = random_family(rng);
            let n = random_order(rng, &f, 6);
            let x = random_point(rng);
            report(cd_diagonal_sum(&f, n, &x)? == cd_confluent(&f, n, &x)?, format!("{f} n={n} x={x}"))
        }
        "prop_cd_even_origin" => {
            let f = random_even_family(rng);
            let n = rng.gen_range(0..=5);
            report(cd_diagonal_sum(&f, 2 * n, &rat(0))? == cd_even_at_origin(&f, n)?, format!("{f} n={n}"))
        }
        "prop_cd_discrete" => {
            let f = random_hahn(rng);
            let n = random_order(rng, &f, 8);
            let x = random_point(rng);
            let direct = cd_kernel(&f, n, &x, &(&x - rat(1)), KernelForm::Sum)?;
            report(cd_discrete(&f, n, &x)? == direct, format!("{f} n={n} x={x}"))
        }
        "prop_reproducing" => {
            let f = random_family(rng);
            let n = random_order(rng, &f, 6);
            let deg = rng.gen_range(0..=n);
            let p = random_poly(rng, deg);
            let y = random_point(rng);
            report(reproduce(&f, n, &p, &y)?.holds(), format!("{f} n={n} p={p} y={y}"))
        }
        "prop_kernel_poly" => {
            let (f, x0) = random_endpoint_family(rng);
            let n = random_order(rng, &f, 6);
            let deg = rng.gen_range(0..=n);
            let p = random_poly(rng, deg);
            report(kernel_poly_property(&f, &x0, n, &p)?.holds(), format!("{f} x0={x0} n={n} p={p}"))
        }
        "prop_kernel_norm" => {
            let (f, x0) = random_endpoint_family(rng);
            let n = random_order(rng, &f, 6);
            let ok = kernel_poly_norm(&f, &x0, n)?.holds() && kernel_poly_at_point(&f, &x0, n)?.holds();
            report(ok, format!("{f} x0={x0} n={n}"))
        }
        "prop_cross_kernel" => {
            let f = random_family(rng);
            let n = random_order(rng, &f, 6);
            let (x0, x1) = (random_point(rng), random_point(rng));
            report(cross_kernel_check(&f, n, &x0, &x1)?.holds(), format!("{f} n={n} x0={x0} x1={x1}"))
        }
        "prop_projection" => {
            let f = random_even_family(rng);
            let n = rng.gen_range(0..=4);
            let deg = rng.gen_range(0..=2 * n + 1);
            let p = random_poly(rng, deg);
            report(ps_projection_check(&f, n, &p)?.holds(), format!("{f} n={n} p={p}"))
        }
        "prop_recurrence_coefficients" => {
            let f = random_family(rng);
            let n = random_order(rng, &f, 9);
            let checks = recurrence_identity_checks(&f, n)?;
            let bad: Vec<String> = checks.iter().filter(|(_, eq)| !eq.holds()).map(|(w, _)| w.clone()).collect();
            report(bad.is_empty(), format!("{f} n={n} {}", bad.join(",")))
        }
        "prop_contiguous" => {
            let r = rng.gen_range(1..=4);
            let s = rng.gen_range(0..=3);
            let trunc = rng.gen_range(0..=8);
            let mut num: Vec<Rational> = (0..r).map(|_| random_point(rng)).collect();
            if rng.gen_bool(0.5) {
                num[0] = rat(-(trunc as i64));
            }
            let den: Vec<Rational> = (0..s).map(|_| random_lower(rng)).collect();
            let z = random_point(rng);
            let eq = contiguous_check(&num, &den, &z, trunc)?;
            let fmt = |v: &[Rational]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
            report(eq.holds(), format!("num=[{}] den=[{}] z={z} trunc={trunc}", fmt(&num), fmt(&den)))
        }
        _ => Err(Error::Config(format!("unknown property {name:?}"))),
    }
}

/// Runs `instances` seeded random instances of one property.
pub fn run_property(name: &str, seed: u64, instances: usize) -> Result<PropertyOutcome> {
    let index = PROPERTY_NAMES
        .iter()
        .position(|p| *p == name)
        .ok_or_else(|| Error::Config(format!("unknown property {name:?}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index as u64));
    let mut outcome = PropertyOutcome { holding: 0, total: instances, first_failure: None };
    for _ in 0..instances {
        let (ok, what) = match property_instance(name, &mut rng) {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        if ok {
            outcome.holding += 1;
        } else if outcome.first_failure.is_none() {
            outcome.first_failure = Some(what);
        }
    }
    Ok(outcome)
}

fn property_tasks(config: &SuiteConfig, out: &mut Vec<Task>) {
    for name in PROPERTY_NAMES {
        let seed = config.seed;
        let p = vec![("instances", PROPERTY_INSTANCES.to_string()), ("seed", seed.to_string())];
        out.push(task(name, &p, move || {
            let o = run_property(name, seed, PROPERTY_INSTANCES)?;
            let lhs = match &o.first_failure {
                None => o.holding.to_string(),
                Some(what) => format!("{} (first failure: {what})", o.holding),
            };
            Ok(Outcome::Exact(lhs, o.total.to_string()))
        }));
    }
}

fn build_tasks(config: &SuiteConfig) -> Vec<Task> {
    let mut out = Vec::new();
    for suite in &config.suites {
        match suite {
            Suite::Core => core_tasks(config, &mut out),
            Suite::Symmetric => symmetric_tasks(config, &mut out),
            Suite::Jacobi => jacobi_tasks(config, &mut out),
            Suite::Laguerre => laguerre_tasks(config, &mut out),
            Suite::Hahn => hahn_tasks(config, &mut out),
            Suite::Hyp => hyp_tasks(config, &mut out),
            Suite::Limits => limit_tasks(config, &mut out),
            Suite::Properties => property_tasks(config, &mut out),
        }
    }
    out
}

/// Runs every selected check. Exit code 0 when nothing failed, 1 otherwise,
/// 2 for an invalid configuration (with no reports).
pub fn run_suites(config: &SuiteConfig) -> (Vec<IdentityReport>, i32) {
    if let Err(e) = config.validate() {
        eprintln!("{e}");
        return (Vec::new(), 2);
    }
    let tasks = build_tasks(config);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(config.jobs).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("config: cannot start {} workers: {e}", config.jobs);
            return (Vec::new(), 2);
        }
    };
    let mut reports: Vec<IdentityReport> = pool.install(|| tasks.par_iter().map(run_task).collect());
    reports.sort_by_cached_key(sort_key);
    let code = if summarize(&reports).fail == 0 { 0 } else { 1 };
    (reports, code)
}

fn params_string(params: &BTreeMap<String, String>) -> String {
    params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

pub fn render_json(config: &SuiteConfig, reports: &[IdentityReport]) -> String {
    let doc = json!({
        "version": 1,
        "config": config.to_json(),
        "reports": reports,
        "summary": summarize(reports),
    });
    serde_json::to_string_pretty(&doc).expect("report serializes")
}

pub fn render_text(reports: &[IdentityReport]) -> String {
    let rows: Vec<[String; 6]> = reports
        .iter()
        .map(|r| {
            [
                r.status.to_string(),
                r.identity_id.clone(),
                params_string(&r.params),
                r.lhs.clone(),
                r.rhs.clone(),
                format!("{:.3}ms", r.elapsed_ms),
            ]
        })
        .collect();
    let mut widths = [0usize; 6];
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in &rows {
        let line = row
            .iter()
            .zip(widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        out.push_str(line.trim_end());
        out.push('\n');
    }
    let s = summarize(reports);
    out.push_str(&format!("summary: pass {}  fail {}  skipped {}\n", s.pass, s.fail, s.skipped));
    out
}


#[cfg(test)]
mod tests {
    use super::*;

    fn small(suites: &str) -> SuiteConfig {
        let mut c = SuiteConfig::default();
        c.set("suite", suites).unwrap();
        c.set("alpha", "0,1/2").unwrap();
        c.set("beta", "0,-1/3").unwrap();
        c.set("bigN", "3").unwrap();
        c.set("nmax", "3").unwrap();
        c
    }

    #[test]
    fn config_parsing() {
        let mut c = SuiteConfig::default();
        c.apply_file("# grid\nsuite = hahn, hyp\nalpha = 0, 1/2\nbeta=-1/3\nbigN = 3,5\nnmax = 4\nseed = 9\njobs = 2\nformat = json\n")
            .unwrap();
        assert_eq!(c.suites, [Suite::Hahn, Suite::Hyp].into_iter().collect());
        assert_eq!(c.alphas, vec![rat(0), ratio(1, 2)]);
        assert_eq!(c.big_ns, vec![3, 5]);
        assert_eq!((c.nmax, c.seed, c.jobs, c.format), (4, 9, 2, OutputFormat::Json));
        assert!(c.validate().is_ok());
        assert!(c.clone().set("suite", "foo").is_err());
        assert!(c.clone().set("family", "zernike").is_err());
        assert!(c.clone().apply_file("nmax 3").is_err());
        let mut empty = c.clone();
        empty.alphas.clear();
        assert!(empty.validate().is_err());
        let mut bad = c.clone();
        bad.set("alpha", "-1").unwrap();
        assert!(bad.validate().is_err());
    }

    #[test]
    fn unknown_suite_exits_with_two() {
        let mut c = SuiteConfig::default();
        c.suites.clear();
        assert_eq!(run_suites(&c).1, 2);
    }

    #[test]
    fn hahn_worked_instance() {
        let mut c = small("hahn");
        c.set("alpha", "0").unwrap();
        c.set("beta", "0").unwrap();
        c.set("bigN", "2").unwrap();
        let (reports, code) = run_suites(&c);
        assert_eq!(code, 0);
        let r = reports
            .iter()
            .find(|r| r.identity_id == "eq45" && r.params["n"] == "1")
            .expect("eq45 report");
        assert_eq!((r.lhs.as_str(), r.rhs.as_str(), r.status), ("-2", "-2", Status::Pass));
    }

    #[test]
    fn legendre_symmetric_suite() {
        let mut c = small("symmetric");
        c.set("family", "legendre").unwrap();
        c.set("nmax", "20").unwrap();
        let (reports, code) = run_suites(&c);
        assert_eq!(code, 0);
        let eq36: Vec<_> = reports.iter().filter(|r| r.identity_id == "eq36").collect();
        assert!(eq36.len() >= 21);
        assert!(eq36.iter().all(|r| r.lhs == "1" && r.status == Status::Pass));
    }

    #[test]
    fn exact_suites_pass_on_small_grid() {
        let (reports, code) = run_suites(&small("core,symmetric,jacobi,laguerre,hahn,hyp"));
        let failed: Vec<_> = reports.iter().filter(|r| r.status != Status::Pass).collect();
        assert!(failed.is_empty(), "{failed:#?}");
        assert_eq!(code, 0);
    }

    #[test]
    fn parallel_matches_serial_and_is_sorted() {
        let serial = small("hahn,hyp");
        let mut parallel = serial.clone();
        parallel.jobs = 4;
        let strip = |mut v: Vec<IdentityReport>| {
            for r in &mut v {
                r.elapsed_ms = 0.0;
            }
            v
        };
        let (a, _) = run_suites(&serial);
        let (b, _) = run_suites(&parallel);
        let (a, b) = (strip(a), strip(b));
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| sort_key(&w[0]) <= sort_key(&w[1])));
    }

    #[test]
    fn properties_are_deterministic() {
        for name in PROPERTY_NAMES {
            let first = run_property(name, 7, 20).unwrap();
            assert_eq!(first.holding, 20, "{name}: {:?}", first.first_failure);
            assert_eq!(first, run_property(name, 7, 20).unwrap());
        }
    }

    #[test]
    fn text_rendering_has_summary() {
        let (reports, _) = run_suites(&small("hyp"));
        let text = render_text(&reports);
        assert!(text.lines().last().unwrap().starts_with("summary: pass"));
        assert_eq!(text.lines().count(), reports.len() + 1);
        let json: serde_json::Value = serde_json::from_str(&render_json(&small("hyp"), &reports)).unwrap();
        assert_eq!(json["version"], 1);
        assert_eq!(json["summary"]["pass"], reports.len());
    }
}
