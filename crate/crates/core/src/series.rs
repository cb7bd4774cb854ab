//! Truncated integer power series and rational series `P/Q` with `Q(0) = ±1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, usage, Error, Result};
use crate::poly::{LaurentPoly, PolyJson, TermJson};

/// A power series known through `x^order`. Coefficients beyond the order are
/// unknown, never zero by assumption, so every binary operation takes the
/// smaller of the two orders.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SeriesJson", into = "SeriesJson")]
pub struct TruncatedSeries {
    var: String,
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// Build from leading coefficients; missing ones are zero and extra ones
    /// past `order` are dropped.
    pub fn new(var: &str, order: usize, coeffs: impl IntoIterator<Item = BigInt>) -> Self {
        let mut c: Vec<BigInt> = coeffs.into_iter().take(order + 1).collect();
        c.resize(order + 1, BigInt::zero());
        TruncatedSeries {
            var: var.to_string(),
            coeffs: c,
        }
    }

    pub fn from_i64s(var: &str, order: usize, coeffs: &[i64]) -> Self {
        Self::new(var, order, coeffs.iter().map(|&c| BigInt::from(c)))
    }

    pub fn zero(var: &str, order: usize) -> Self {
        Self::new(var, order, std::iter::empty())
    }

    pub fn one(var: &str, order: usize) -> Self {
        Self::new(var, order, std::iter::once(BigInt::one()))
    }

    /// Truncate a polynomial. Negative exponents have no power-series meaning.
    pub fn from_poly(p: &LaurentPoly, order: usize) -> Result<Self> {
        if p.nvars() != 1 {
            return Err(usage("power series need a univariate polynomial"));
        }
        let mut s = Self::zero(&p.vars()[0], order);
        for (e, c) in p.terms() {
            if e[0] < 0 {
                return Err(domain("negative exponent in a power series"));
            }
            if (e[0] as usize) <= order {
                s.coeffs[e[0] as usize] = c.clone();
            }
        }
        Ok(s)
    }

    /// Expand `num / den` through `order`.
    pub fn from_fraction(num: &LaurentPoly, den: &LaurentPoly, order: usize) -> Result<Self> {
        let n = Self::from_poly(num, order)?;
        let d = Self::from_poly(den, order)?;
        n.checked_div(&d)
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^n`; panics past the order.
    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient, `None` when zero through the order.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            &[self.var.as_str()],
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| ([k as i64, 0], c.clone())),
        )
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Self::new(&self.var, order, self.coeffs.iter().cloned())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.var != other.var {
            return Err(usage(format!(
                "series variable mismatch: {} vs {}",
                self.var, other.var
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.order().min(other.order());
        Ok(Self::new(
            &self.var,
            n,
            (0..=n).map(|k| &self.coeffs[k] + &other.coeffs[k]),
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.order().min(other.order());
        Ok(Self::new(
            &self.var,
            n,
            (0..=n).map(|k| &self.coeffs[k] - &other.coeffs[k]),
        ))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.order().min(other.order());
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(TruncatedSeries {
            var: self.var.clone(),
            coeffs: out,
        })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        TruncatedSeries {
            var: self.var.clone(),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Multiply by `x^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut c = vec![BigInt::zero(); k.min(n + 1)];
        c.extend(self.coeffs.iter().take((n + 1).saturating_sub(k)).cloned());
        Self::new(&self.var, n, c)
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if !c0.abs().is_one() {
            return Err(domain(format!(
                "series with constant term {c0} is not invertible over the integers"
            )));
        }
        let n = self.order();
        let mut inv = vec![BigInt::zero(); n + 1];
        inv[0] = c0.clone();
        for k in 1..=n {
            let mut acc = BigInt::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &inv[k - j];
                }
            }
            // c0 is ±1, so dividing by it is multiplying by it.
            inv[k] = -(acc * c0);
        }
        Ok(TruncatedSeries {
            var: self.var.clone(),
            coeffs: inv,
        })
    }

    pub fn checked_div(&self, den: &Self) -> Result<Self> {
        self.checked_mul(&den.inverse()?)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(&self.var, self.order());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }
}

macro_rules! series_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a TruncatedSeries> for &'a TruncatedSeries {
            type Output = TruncatedSeries;
            fn $method(self, rhs: &'a TruncatedSeries) -> TruncatedSeries {
                self.$checked(rhs).expect("series variable mismatch")
            }
        }
        impl $tr<TruncatedSeries> for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $method(self, rhs: TruncatedSeries) -> TruncatedSeries {
                (&self).$method(&rhs)
            }
        }
    };
}

series_binop!(Add, add, checked_add);
series_binop!(Sub, sub, checked_sub);
series_binop!(Mul, mul, checked_mul);

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(&BigInt::from(-1))
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.to_poly();
        let mut body = String::new();
        for (e, c) in p.terms() {
            let neg = c.is_negative();
            if body.is_empty() {
                if neg {
                    body.push('-');
                }
            } else {
                body.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            match e[0] {
                0 => body.push_str(&mag.to_string()),
                k => {
                    if !mag.is_one() {
                        body.push_str(&mag.to_string());
                    }
                    body.push_str(&self.var);
                    if k != 1 {
                        body.push_str(&format!("^{k}"));
                    }
                }
            }
        }
        if body.is_empty() {
            body.push('0');
        }
        write!(f, "{body} + O({}^{})", self.var, self.order() + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
    order: usize,
}

impl From<TruncatedSeries> for SeriesJson {
    fn from(s: TruncatedSeries) -> Self {
        let order = s.order();
        let p: PolyJson = s.to_poly().into();
        SeriesJson {
            vars: p.vars,
            terms: p.terms,
            order,
        }
    }
}

impl TryFrom<SeriesJson> for TruncatedSeries {
    type Error = Error;
    fn try_from(j: SeriesJson) -> Result<Self> {
        if j.vars.len() != 1 {
            return Err(Error::Parse("a series has exactly one variable".into()));
        }
        let p = LaurentPoly::try_from(PolyJson {
            vars: j.vars,
            terms: j.terms,
        })?;
        if p.degree().is_some_and(|d| d > j.order as i64) {
            return Err(Error::Parse("series term beyond its order".into()));
        }
        TruncatedSeries::from_poly(&p, j.order)
    }
}

/// A rational power series `P/Q` with integer polynomials and `Q(0) = 1`,
/// kept in lowest terms.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RationalSeries {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalSeries {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if num.vars() != den.vars() || num.nvars() != 1 {
            return Err(usage("numerator and denominator must share one variable"));
        }
        let n = num.dense_coeffs()?;
        let d = den.dense_coeffs()?;
        let d0 = d.first().cloned().unwrap_or_default();
        if !d0.abs().is_one() {
            return Err(domain("denominator constant term must be ±1"));
        }
        let g = upoly::gcd(&n, &d);
        let n = upoly::div_exact(&n, &g).ok_or_else(|| crate::error::internal("gcd does not divide"))?;
        let d = upoly::div_exact(&d, &g).ok_or_else(|| crate::error::internal("gcd does not divide"))?;
        let sign = if d[0].is_negative() { -1 } else { 1 };
        let var = num.vars()[0].clone();
        let mk = |c: Vec<BigInt>| {
            LaurentPoly::from_terms(
                &[var.as_str()],
                c.into_iter()
                    .enumerate()
                    .map(|(k, v)| ([k as i64, 0], v * sign)),
            )
        };
        Ok(RationalSeries {
            num: mk(n),
            den: mk(d),
        })
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn expand(&self, order: usize) -> TruncatedSeries {
        TruncatedSeries::from_fraction(&self.num, &self.den, order)
            .expect("denominator is a unit by construction")
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// Dense univariate integer polynomials, index = exponent.
pub(crate) mod upoly {
    use super::*;

    pub fn trim(mut a: Vec<BigInt>) -> Vec<BigInt> {
        while a.last().is_some_and(Zero::is_zero) {
            a.pop();
        }
        a
    }

    fn content(a: &[BigInt]) -> BigInt {
        a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn primitive(a: &[BigInt]) -> Vec<BigInt> {
        let c = content(a);
        if c.is_zero() {
            return a.to_vec();
        }
        a.iter().map(|x| x / &c).collect()
    }

    /// Pseudo-remainder of `a` by nonzero `b`.
    fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut r = trim(a.to_vec());
        let db = b.len() - 1;
        let lb = &b[db];
        while r.len() > db {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for c in r.iter_mut() {
                *c *= lb;
            }
            for (k, bk) in b.iter().enumerate() {
                r[dr - db + k] -= &lr * bk;
            }
            r = trim(r);
        }
        r
    }

    /// Gcd in Z[x], normalized to positive leading coefficient.
    pub fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let a = trim(a.to_vec());
        let b = trim(b.to_vec());
        if a.is_empty() {
            return normalize(primitive(&b), &b);
        }
        if b.is_empty() {
            return normalize(primitive(&a), &a);
        }
        let cont = content(&a).gcd(&content(&b));
        let (mut p, mut q) = (primitive(&a), primitive(&b));
        if p.len() < q.len() {
            std::mem::swap(&mut p, &mut q);
        }
        while !q.is_empty() {
            let r = prem(&p, &q);
            p = q;
            q = if r.is_empty() { r } else { primitive(&r) };
        }
        let mut g: Vec<BigInt> = p.iter().map(|c| c * &cont).collect();
        if g.last().is_some_and(Signed::is_negative) {
            g = g.into_iter().map(|c| -c).collect();
        }
        g
    }

    fn normalize(mut g: Vec<BigInt>, orig: &[BigInt]) -> Vec<BigInt> {
        if g.is_empty() {
            return vec![BigInt::one()];
        }
        let c = content(orig);
        g = g.into_iter().map(|x| x * &c).collect();
        if g.last().is_some_and(Signed::is_negative) {
            g = g.into_iter().map(|c| -c).collect();
        }
        g
    }

    pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        if b.is_empty() {
            return None;
        }
        if r.is_empty() {
            return Some(vec![]);
        }
        if r.len() < b.len() {
            return None;
        }
        let db = b.len() - 1;
        let mut q = vec![BigInt::zero(); r.len() - db];
        while r.len() > db {
            let dr = r.len() - 1;
            let (qc, rem) = r[dr].div_rem(&b[db]);
            if !rem.is_zero() {
                return None;
            }
            for (k, bk) in b.iter().enumerate() {
                r[dr - db + k] -= &qc * bk;
            }
            q[dr - db] = qc;
            r = trim(r);
        }
        r.is_empty().then_some(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_one_minus_two_z_squared() {
        let s = TruncatedSeries::from_i64s("z", 8, &[1, 0, -2]);
        let inv = s.inverse().unwrap();
        assert_eq!(inv, TruncatedSeries::from_i64s("z", 8, &[1, 0, 2, 0, 4, 0, 8, 0, 16]));
    }

    #[test]
    fn non_unit_constant() {
        let s = TruncatedSeries::from_i64s("z", 4, &[2, 1]);
        assert!(matches!(s.inverse(), Err(Error::Domain(_))));
    }

    #[test]
    fn shift_keeps_order() {
        let s = TruncatedSeries::from_i64s("z", 3, &[1, 2, 3, 4]);
        assert_eq!(s.shift(2), TruncatedSeries::from_i64s("z", 3, &[0, 0, 1, 2]));
    }

    #[test]
    fn rational_lowest_terms() {
        let num = LaurentPoly::parse(&["x"], "1 - x^2").unwrap();
        let den = LaurentPoly::parse(&["x"], "1 - x").unwrap();
        let r = RationalSeries::new(num, den).unwrap();
        assert_eq!(r.num(), &LaurentPoly::parse(&["x"], "1 + x").unwrap());
        assert_eq!(r.den(), &LaurentPoly::one(&["x"]));
    }

    #[test]
    fn upoly_gcd() {
        let a: Vec<BigInt> = [-1, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        let b: Vec<BigInt> = [2, -2].iter().map(|&c| BigInt::from(c)).collect();
        let g = upoly::gcd(&a, &b);
        assert_eq!(g, vec![BigInt::from(-1), BigInt::from(1)]);
    }

    #[test]
    fn json_has_order() {
        let s = TruncatedSeries::from_i64s("z", 2, &[1, 0, -2]);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(
            j,
            r#"{"vars":["z"],"terms":[{"e":[0],"c":"1"},{"e":[2],"c":"-2"}],"order":2}"#
        );
        let back: TruncatedSeries = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
    }
}
