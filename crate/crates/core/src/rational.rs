//! Rationality of truncated power series: recurrence fitting, growth
//! schedules for convergent stage products and sums, and certificates.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::conway::{fibonacci, lucas, nabla_j, recursion_states, Z};
use crate::error::{internal, usage, Result};
use crate::linalg::{solve, LinearSolution};
use crate::poly::LaurentPoly;
use crate::series::{RationalSeries, TruncatedSeries};

/// Degree bounds for a fit `P/Q` with `deg P ≤ m`, `deg Q ≤ n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalFitBound {
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
}

impl RationalFitBound {
    pub fn new(m: usize, n: usize) -> Self {
        RationalFitBound { m, n }
    }

    /// Order needed before a missing fit means anything.
    pub fn certification_order(&self) -> usize {
        (2 * self.m).max(self.n * self.n) + 1
    }
}

/// Outcome of the recurrence system for one denominator degree.
enum Attempt {
    Found(Vec<BigRational>),
    Inconsistent { rank: usize, augmented_rank: usize },
}

/// `Σ_{i=1..n} q_i s_{k-i} = -s_k` for `k = m+1..=order`.
fn recurrence_attempt(s: &TruncatedSeries, m: usize, n: usize) -> Attempt {
    let q = |c: &BigInt| BigRational::from_integer(c.clone());
    let mut a = Vec::new();
    let mut b = Vec::new();
    for k in m + 1..=s.order() {
        a.push(
            (1..=n)
                .map(|i| {
                    if k >= i {
                        q(s.coeff(k - i))
                    } else {
                        BigRational::zero()
                    }
                })
                .collect::<Vec<_>>(),
        );
        b.push(-q(s.coeff(k)));
    }
    if n == 0 {
        return if b.iter().all(Zero::is_zero) {
            Attempt::Found(Vec::new())
        } else {
            Attempt::Inconsistent {
                rank: 0,
                augmented_rank: 1,
            }
        };
    }
    match solve(&a, &b) {
        LinearSolution::Consistent { solution, .. } => Attempt::Found(solution),
        LinearSolution::Inconsistent {
            rank,
            augmented_rank,
        } => Attempt::Inconsistent {
            rank,
            augmented_rank,
        },
    }
}

/// The integer fit built from recurrence coefficients, if they are integral
/// and the fraction reproduces `s`.
fn assemble(s: &TruncatedSeries, m: usize, q: &[BigRational]) -> Result<Option<RationalSeries>> {
    if q.iter().any(|c| !c.is_integer()) {
        return Ok(None);
    }
    let var = s.var();
    let mut den = vec![BigInt::one()];
    den.extend(q.iter().map(BigRational::to_integer));
    let den_series = TruncatedSeries::new(var, s.order(), den.iter().cloned());
    let prod = den_series.checked_mul(s)?;
    let num: Vec<BigInt> = prod.coeffs().iter().take(m + 1).cloned().collect();
    let to_poly = |c: &[BigInt]| {
        LaurentPoly::from_terms(
            &[var],
            c.iter().enumerate().map(|(k, v)| ([k as i64, 0], v.clone())),
        )
    };
    let fit = RationalSeries::new(to_poly(&num), to_poly(&den))?;
    if fit.expand(s.order()) != *s {
        return Err(internal("fitted fraction does not reproduce the series"));
    }
    Ok(Some(fit))
}

/// Fit `s = P/Q` with `deg P ≤ M`, `deg Q ≤ N`, `Q(0) = 1`, in lowest terms.
/// `Ok(None)` means there is no such integer fraction.
pub fn fit_rational(s: &TruncatedSeries, bound: RationalFitBound) -> Result<Option<RationalSeries>> {
    if s.order() < bound.m + bound.n {
        return Err(usage(format!(
            "order {} is below M + N = {}",
            s.order(),
            bound.m + bound.n
        )));
    }
    for n in 0..=bound.n {
        if let Attempt::Found(q) = recurrence_attempt(s, bound.m, n) {
            return assemble(s, bound.m, &q);
        }
    }
    Ok(None)
}

/// Result of a certification run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub bound: RationalFitBound,
    pub order: usize,
    pub verdict: Verdict,
    /// Rank of the recurrence matrix at `n = N` (absent when a fit exists).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub augmented_rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fit: Option<FitJson>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Fit,
    NoFit,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitJson {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

impl FitJson {
    fn from_fit(f: &RationalSeries) -> Self {
        FitJson {
            num: f.num().clone(),
            den: f.den().clone(),
        }
    }
}

/// Either a fit inside the bound, or the rank witness of the inconsistent
/// recurrence system (with integrality failure recorded as a fit-free
/// consistent system, `rank == augmented_rank`).
pub fn certify_no_fit(s: &TruncatedSeries, bound: RationalFitBound) -> Result<Certificate> {
    let need = bound.certification_order();
    if s.order() < need {
        return Err(usage(format!(
            "certification needs order ≥ max(2M, N^2) + 1 = {need}, got {}",
            s.order()
        )));
    }
    if let Some(fit) = fit_rational(s, bound)? {
        return Ok(Certificate {
            bound,
            order: s.order(),
            verdict: Verdict::Fit,
            rank: None,
            augmented_rank: None,
            fit: Some(FitJson::from_fit(&fit)),
        });
    }
    let (rank, augmented_rank) = match recurrence_attempt(s, bound.m, bound.n) {
        Attempt::Inconsistent {
            rank,
            augmented_rank,
        } => (rank, augmented_rank),
        Attempt::Found(q) => (q.len(), q.len()),
    };
    Ok(Certificate {
        bound,
        order: s.order(),
        verdict: Verdict::NoFit,
        rank: Some(rank),
        augmented_rank: Some(augmented_rank),
        fit: None,
    })
}

/// The two growth variants: stage products and stage sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Growth1,
    Growth2,
}

impl std::str::FromStr for Variant {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "growth1" => Ok(Variant::Growth1),
            "growth2" => Ok(Variant::Growth2),
            _ => Err(usage(format!("unknown variant {s:?}"))),
        }
    }
}

/// `f(i)`: the least admissible successor of `i` in a schedule.
pub fn growth_f(variant: Variant, i: &BigInt) -> Result<BigInt> {
    if !i.is_positive() {
        return Err(usage("growth bound needs i ≥ 1"));
    }
    Ok(match variant {
        Variant::Growth1 => {
            let t = i * (i + 3);
            &t * &t
        }
        Variant::Growth2 => {
            let t = i * i - i + 1;
            &t * &t + 1
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub variant: Variant,
    pub r: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScheduleVerdict {
    pub valid: bool,
    /// Index of the first entry that breaks a condition.
    pub first_violation: Option<usize>,
}

/// `r_{i+1} ≥ f(r_i)` throughout; with `construction`, also require
/// `r_{i+1} / (3 r_i)` to be an integer greater than 1.
pub fn schedule_validate(s: &Schedule, construction: bool) -> ScheduleVerdict {
    let bad = |i| ScheduleVerdict {
        valid: false,
        first_violation: Some(i),
    };
    if let Some(r0) = s.r.first() {
        if !r0.is_positive() {
            return bad(0);
        }
    }
    for i in 1..s.r.len() {
        let (prev, next) = (&s.r[i - 1], &s.r[i]);
        let f = growth_f(s.variant, prev).expect("positive");
        if next <= prev || *next < f {
            return bad(i);
        }
        if construction {
            let three = prev * 3;
            let (q, rem) = next.div_rem(&three);
            if !rem.is_zero() || q <= BigInt::one() {
                return bad(i);
            }
        }
    }
    ScheduleVerdict {
        valid: true,
        first_violation: None,
    }
}

/// `r_i = 3^(5^(i-1))` for `i = 1..=k`.
pub fn power_schedule(k: u32) -> Vec<BigInt> {
    (0..k)
        .map(|i| num_traits::pow(BigInt::from(3), 5usize.pow(i)))
        .collect()
}

/// One term `P_i / Q_i` of a stage product or sum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageData {
    pub index: usize,
    pub r: usize,
    pub p: LaurentPoly,
    pub q: LaurentPoly,
}

impl StageData {
    /// `P = (-1)^(r+1) z^(r+1) L_{r+1}`, `Q = ∇_{J_r}`, so `1 + P/Q = z^-1 ∇_{M_r} / ∇_{J_r}`.
    pub fn growth1(index: usize, r: usize) -> Result<Self> {
        let ri = r as i64;
        let sign = if r % 2 == 1 { BigInt::one() } else { -BigInt::one() };
        Ok(StageData {
            index,
            r,
            p: lucas(ri + 1).shift([ri + 1, 0], &sign),
            q: nabla_j(r)?,
        })
    }

    /// `P = z^r F_r`, `Q = ∇_{J_r}`.
    pub fn growth2(index: usize, r: usize) -> Result<Self> {
        Ok(StageData {
            index,
            r,
            p: fibonacci(r as i64).shift([r as i64, 0], &BigInt::one()),
            q: nabla_j(r)?,
        })
    }

    pub fn new(variant: Variant, index: usize, r: usize) -> Result<Self> {
        match variant {
            Variant::Growth1 => Self::growth1(index, r),
            Variant::Growth2 => Self::growth2(index, r),
        }
    }

    pub fn stages(variant: Variant, rs: &[usize]) -> Result<Vec<Self>> {
        rs.iter()
            .enumerate()
            .map(|(i, &r)| Self::new(variant, i + 1, r))
            .collect()
    }

    fn ratio(&self, order: usize) -> Result<TruncatedSeries> {
        if !self.q.constant_term().abs().is_one() {
            return Err(usage("stage denominator needs a unit constant term"));
        }
        TruncatedSeries::from_fraction(&self.p, &self.q, order)
    }
}

/// `∏ (1 + P_i/Q_i)` through `order`.
pub fn accumulate_product(stages: &[StageData], order: usize) -> Result<TruncatedSeries> {
    let mut acc = TruncatedSeries::one(Z, order);
    for st in stages {
        let one = TruncatedSeries::one(Z, order);
        acc = acc.checked_mul(&one.checked_add(&st.ratio(order)?)?)?;
    }
    Ok(acc)
}

/// `Σ P_i/Q_i` through `order`.
pub fn accumulate_sum(stages: &[StageData], order: usize) -> Result<TruncatedSeries> {
    let mut acc = TruncatedSeries::zero(Z, order);
    for st in stages {
        acc = acc.checked_add(&st.ratio(order)?)?;
    }
    Ok(acc)
}

/// `(n_i, m_i)` over the full family `r = 1..=i`, from actual degrees.
///
/// `n_i = deg Q_1⋯Q_i`. For products `m_i = deg (P_1+Q_1)⋯(P_i+Q_i)`; for sums
/// `m_i = max_j deg Q_1⋯P_j⋯Q_i`. The closed forms `i(i-1)` and `i(i+3)` or
/// `i^2-i+1` are asserted afterwards.
pub fn degree_bookkeeping(variant: Variant, i: usize) -> Result<(usize, usize)> {
    if i == 0 {
        return Err(usage("bookkeeping index starts at 1"));
    }
    let states = recursion_states(i)?;
    let deg = |p: &LaurentPoly| p.degree().unwrap_or(0) as usize;
    let q_degs: Vec<usize> = states.iter().map(|s| deg(&s.a)).collect();
    let n: usize = q_degs.iter().sum();
    let m = match variant {
        Variant::Growth1 => {
            let mut m = 0;
            for r in 1..=i {
                let st = StageData::growth1(r, r)?;
                m += deg(&(&st.p + &st.q));
            }
            m
        }
        Variant::Growth2 => (1..=i)
            .map(|j| {
                let p = fibonacci(j as i64).shift([j as i64, 0], &BigInt::one());
                n - q_degs[j - 1] + deg(&p)
            })
            .max()
            .unwrap_or(0),
    };
    let expect_m = match variant {
        Variant::Growth1 => i * (i + 3),
        Variant::Growth2 => i * i - i + 1,
    };
    if n != i * (i - 1) || m != expect_m {
        return Err(internal(format!(
            "degree bookkeeping (n, m) = ({n}, {m}) disagrees with the closed form"
        )));
    }
    Ok((n, m))
}

/// `max(2 n_i, m_i^2) + 1`.
pub fn divisibility_threshold(variant: Variant, i: usize) -> Result<usize> {
    let (n, m) = degree_bookkeeping(variant, i)?;
    Ok((2 * n).max(m * m) + 1)
}

/// Whether `P_{next}` is divisible by `z^threshold(prev)`; returns the
/// threshold and the valuation of `P_{next}`.
pub fn stage_divisibility(variant: Variant, prev: usize, next: usize) -> Result<(bool, usize, usize)> {
    let threshold = divisibility_threshold(variant, prev)?;
    let st = StageData::new(variant, 2, next)?;
    let val = st
        .p
        .valuation()
        .ok_or_else(|| internal("stage numerator vanished"))? as usize;
    Ok((val >= threshold, threshold, val))
}

/// `∏_{n≥1} (1 + (x^(n-1) - x^(n+1)) / (1 - x^(2n)))` through `order`, and its fit.
pub fn counterexample_product(order: usize) -> Result<(TruncatedSeries, Option<RationalSeries>)> {
    if order < 4 {
        return Err(usage("order must be at least 4"));
    }
    let mut acc = TruncatedSeries::one("x", order);
    for n in 1..=order as i64 + 1 {
        let num = &LaurentPoly::monomial(&["x"], [n - 1, 0], 1)
            - &LaurentPoly::monomial(&["x"], [n + 1, 0], 1);
        let den = &LaurentPoly::one(&["x"]) - &LaurentPoly::monomial(&["x"], [2 * n, 0], 1);
        let factor = TruncatedSeries::one("x", order)
            .checked_add(&TruncatedSeries::from_fraction(&num, &den, order)?)?;
        acc = acc.checked_mul(&factor)?;
    }
    let fit = fit_rational(&acc, RationalFitBound::new(1, 1))?;
    Ok((acc, fit))
}

/// Möbius function by trial division.
pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut k = 0;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            k += 1;
        }
        p += 1;
    }
    if n > 1 {
        k += 1;
    }
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `c_n = Σ_{d | n} μ(d) 2^(n/d)`.
pub fn necklace_count(n: u64) -> BigInt {
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| BigInt::from(mobius(d)) * num_traits::pow(BigInt::from(2), (n / d) as usize))
        .sum()
}

/// `Σ c_n x^n / (1 - x^n)` through `order`, and its fit.
pub fn counterexample_mobius_sum(order: usize) -> Result<(TruncatedSeries, Option<RationalSeries>)> {
    if order < 4 {
        return Err(usage("order must be at least 4"));
    }
    let mut coeffs = vec![BigInt::zero(); order + 1];
    for n in 1..=order {
        let c = necklace_count(n as u64);
        for k in (n..=order).step_by(n) {
            coeffs[k] += &c;
        }
    }
    let s = TruncatedSeries::new("x", order, coeffs);
    let fit = fit_rational(&s, RationalFitBound::new(1, 1))?;
    Ok((s, fit))
}

/// A power series in two variables truncated by total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateSeries {
    vars: [String; 2],
    order: usize,
    coeffs: BTreeMap<[u32; 2], BigInt>,
}

impl BivariateSeries {
    pub fn zero(vars: [&str; 2], order: usize) -> Self {
        BivariateSeries {
            vars: vars.map(str::to_string),
            order,
            coeffs: BTreeMap::new(),
        }
    }

    /// Expand a polynomial (non-negative exponents) through `order`.
    pub fn from_poly(p: &LaurentPoly, order: usize) -> Result<Self> {
        if p.nvars() != 2 {
            return Err(usage("bivariate series need two variables"));
        }
        let mut s = Self::zero([&p.vars()[0], &p.vars()[1]], order);
        for (e, c) in p.terms() {
            if e[0] < 0 || e[1] < 0 {
                return Err(usage("negative exponent in a power series"));
            }
            s.set([e[0] as u32, e[1] as u32], c.clone());
        }
        Ok(s)
    }

    pub fn set(&mut self, e: [u32; 2], c: BigInt) {
        if (e[0] + e[1]) as usize > self.order {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, c);
        }
    }

    pub fn coeff(&self, e: [u32; 2]) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn vars(&self) -> [&str; 2] {
        [&self.vars[0], &self.vars[1]]
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.vars(), self.order);
        let mut acc: BTreeMap<[u32; 2], BigInt> = BTreeMap::new();
        for (e, c) in p.terms() {
            for (f, d) in &self.coeffs {
                let g = [e[0] as u32 + f[0], e[1] as u32 + f[1]];
                if (g[0] + g[1]) as usize <= self.order {
                    *acc.entry(g).or_default() += c * d;
                }
            }
        }
        for (g, c) in acc {
            out.set(g, c);
        }
        out
    }

    /// Terms of total degree at most `d`, as a polynomial.
    pub fn to_poly(&self, d: usize) -> LaurentPoly {
        LaurentPoly::from_terms(
            &self.vars(),
            self.coeffs
                .iter()
                .filter(|(e, _)| (e[0] + e[1]) as usize <= d)
                .map(|(e, c)| ([e[0] as i64, e[1] as i64], c.clone())),
        )
    }
}

/// `P/Q` in two variables with `Q(0, 0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateFit {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

fn monomials_up_to(d: usize) -> Vec<[u32; 2]> {
    let mut out = Vec::new();
    for t in 0..=d as u32 {
        for i in 0..=t {
            out.push([i, t - i]);
        }
    }
    out
}

/// Total-degree Padé fit: the least `n ≤ N` with `Q s - P ≡ 0` through the
/// order, `deg P ≤ M`, `deg Q ≤ n`, integer coefficients.
pub fn fit_rational_bivariate(s: &BivariateSeries, m: usize, n_max: usize) -> Result<Option<BivariateFit>> {
    if s.order < m + n_max {
        return Err(usage(format!("order {} is below M + N = {}", s.order, m + n_max)));
    }
    let q = |c: BigInt| BigRational::from_integer(c);
    let rows: Vec<[u32; 2]> = monomials_up_to(s.order)
        .into_iter()
        .filter(|b| (b[0] + b[1]) as usize > m)
        .collect();
    for n in 0..=n_max {
        let unknowns: Vec<[u32; 2]> = monomials_up_to(n).into_iter().skip(1).collect();
        let mut a = Vec::with_capacity(rows.len());
        let mut b = Vec::with_capacity(rows.len());
        for beta in &rows {
            a.push(
                unknowns
                    .iter()
                    .map(|al| {
                        if al[0] <= beta[0] && al[1] <= beta[1] {
                            q(s.coeff([beta[0] - al[0], beta[1] - al[1]]))
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect::<Vec<_>>(),
            );
            b.push(-q(s.coeff(*beta)));
        }
        let sol = if unknowns.is_empty() {
            b.iter().all(Zero::is_zero).then(Vec::new)
        } else {
            match solve(&a, &b) {
                LinearSolution::Consistent { solution, .. } => Some(solution),
                LinearSolution::Inconsistent { .. } => None,
            }
        };
        let Some(sol) = sol else { continue };
        if sol.iter().any(|c| !c.is_integer()) {
            return Ok(None);
        }
        let vars = s.vars();
        let den = LaurentPoly::from_terms(
            &vars,
            std::iter::once(([0, 0], BigInt::one())).chain(
                unknowns
                    .iter()
                    .zip(&sol)
                    .map(|(e, c)| ([e[0] as i64, e[1] as i64], c.to_integer())),
            ),
        );
        let prod = s.mul_poly(&den);
        let num = prod.to_poly(m);
        if prod != BivariateSeries::from_poly(&num, s.order)? {
            return Err(internal("bivariate fit does not reproduce the series"));
        }
        return Ok(Some(BivariateFit { num, den }));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn geometric() {
        let s = TruncatedSeries::from_i64s("x", 12, &[1; 13]);
        let f = fit_rational(&s, RationalFitBound::new(0, 1)).unwrap().unwrap();
        assert_eq!(f.num(), &LaurentPoly::parse(&["x"], "1").unwrap());
        assert_eq!(f.den(), &LaurentPoly::parse(&["x"], "1 - x").unwrap());
    }

    #[test]
    fn order_too_small() {
        let s = TruncatedSeries::from_i64s("x", 2, &[1, 1, 1]);
        assert!(fit_rational(&s, RationalFitBound::new(2, 2)).is_err());
    }

    #[test]
    fn growth_values() {
        assert_eq!(growth_f(Variant::Growth1, &big(2)).unwrap(), big(100));
        assert_eq!(growth_f(Variant::Growth2, &big(2)).unwrap(), big(10));
        assert_eq!(growth_f(Variant::Growth2, &big(10)).unwrap(), big(8282));
    }

    #[test]
    fn schedules() {
        let s = |v, r: &[i64]| Schedule {
            variant: v,
            r: r.iter().map(|&x| big(x)).collect(),
        };
        assert!(schedule_validate(&s(Variant::Growth1, &[2, 100]), false).valid);
        assert_eq!(
            schedule_validate(&s(Variant::Growth1, &[2, 99]), false).first_violation,
            Some(1)
        );
    }

    #[test]
    fn mobius_values() {
        let mu: Vec<i64> = (1..=10).map(mobius).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
        assert_eq!(necklace_count(3), big(6));
    }

    #[test]
    fn bivariate_geometric() {
        let p = LaurentPoly::parse(&["u", "v"], "1").unwrap();
        let mut s = BivariateSeries::from_poly(&p, 12).unwrap();
        for k in 1..=3 {
            s.set([2 * k, 2 * k], BigInt::one());
        }
        let f = fit_rational_bivariate(&s, 0, 4).unwrap().unwrap();
        assert_eq!(f.den, LaurentPoly::parse(&["u", "v"], "1 - u^2 v^2").unwrap());
        assert!(f.num.is_one());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn fit_is_sound(coeffs in proptest::collection::vec(-3i64..=3, 10)) {
            let s = TruncatedSeries::from_i64s("x", 9, &coeffs);
            if let Some(f) = fit_rational(&s, RationalFitBound::new(3, 3)).unwrap() {
                prop_assert_eq!(f.expand(9), s);
            }
        }
    }
}
