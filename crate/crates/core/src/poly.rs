//! Sparse Laurent polynomials with arbitrary-precision integer coefficients in
//! one or two named variables.
//!
//! A [`LaurentPoly`] stores a map from exponent vectors to nonzero [`BigInt`]
//! coefficients. Univariate polynomials keep the second exponent slot at zero,
//! so every exponent is a fixed-size `[i64; 2]` and the map ordering is plain
//! lexicographic order. Two polynomials are equal exactly when their variable
//! lists and term maps agree, which makes `==` a structural check.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, usage, Error, Result};

/// Exponent vector. The second slot is always zero for univariate polynomials.
pub type Exponent = [i64; 2];

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PolyJson", into = "PolyJson")]
pub struct LaurentPoly {
    vars: Vec<String>,
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPoly {
    pub fn zero(vars: &[&str]) -> Self {
        assert!(
            (1..=2).contains(&vars.len()),
            "a Laurent polynomial has one or two variables"
        );
        LaurentPoly {
            vars: vars.iter().map(|v| v.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &[&str]) -> Self {
        Self::constant(vars, BigInt::one())
    }

    pub fn constant(vars: &[&str], c: impl Into<BigInt>) -> Self {
        Self::monomial(vars, [0, 0], c)
    }

    pub fn monomial(vars: &[&str], e: Exponent, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(vars);
        assert!(vars.len() == 2 || e[1] == 0, "univariate exponent has a second slot");
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    /// The variable with index `idx` as a polynomial.
    pub fn var(vars: &[&str], idx: usize) -> Self {
        let mut e = [0, 0];
        e[idx] = 1;
        Self::monomial(vars, e, 1)
    }

    /// Univariate polynomial `c[0] x^low + c[1] x^(low+1) + ...`.
    pub fn from_coeffs(var: &str, low: i64, coeffs: &[i64]) -> Self {
        let mut p = Self::zero(&[var]);
        for (k, c) in coeffs.iter().enumerate() {
            if *c != 0 {
                p.terms.insert([low + k as i64, 0], BigInt::from(*c));
            }
        }
        p
    }

    pub fn from_terms<I>(vars: &[&str], terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, BigInt)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    /// Same shape, different storage: build from owned variable names.
    pub(crate) fn zero_owned(vars: &[String]) -> Self {
        let v: Vec<&str> = vars.iter().map(String::as_str).collect();
        Self::zero(&v)
    }

    pub fn zero_like(&self) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one_like(&self) -> Self {
        self.constant_like(BigInt::one())
    }

    pub fn constant_like(&self, c: impl Into<BigInt>) -> Self {
        let mut p = self.zero_like();
        p.add_term([0, 0], &c.into());
        p
    }

    pub fn monomial_like(&self, e: Exponent, c: impl Into<BigInt>) -> Self {
        let mut p = self.zero_like();
        p.add_term(e, &c.into());
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&[0, 0]).is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == [0, 0])
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: Exponent) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Coefficient of `var^k` in a univariate polynomial.
    pub fn coeff1(&self, k: i64) -> BigInt {
        self.coeff([k, 0])
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff([0, 0])
    }

    pub(crate) fn add_term(&mut self, e: Exponent, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        debug_assert!(self.vars.len() == 2 || e[1] == 0);
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(usage(format!(
                "variable mismatch: {:?} vs {:?}",
                self.vars, other.vars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut acc: BTreeMap<Exponent, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1]];
                *acc.entry(e).or_default() += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly {
            vars: self.vars.clone(),
            terms: acc,
        })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return self.zero_like();
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// Multiply by the monomial `c * vars^e`.
    pub fn shift(&self, e: Exponent, c: &BigInt) -> Self {
        if c.is_zero() {
            return self.zero_like();
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(f, d)| ([f[0] + e[0], f[1] + e[1]], d * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = self.one_like();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Largest exponent of variable `idx`, `None` for the zero polynomial.
    pub fn degree_in(&self, idx: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[idx]).max()
    }

    /// Smallest exponent of variable `idx`.
    pub fn low_degree_in(&self, idx: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[idx]).min()
    }

    /// Degree of a univariate polynomial; panics on bivariate input.
    pub fn degree(&self) -> Option<i64> {
        assert_eq!(self.nvars(), 1, "degree() is for univariate polynomials");
        self.degree_in(0)
    }

    /// Lowest exponent (the z-adic valuation) of a univariate polynomial.
    pub fn valuation(&self) -> Option<i64> {
        assert_eq!(self.nvars(), 1, "valuation() is for univariate polynomials");
        self.low_degree_in(0)
    }

    /// Replace `var[idx]` by its inverse.
    pub fn invert_var(&self, idx: usize) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut f = *e;
                    f[idx] = -f[idx];
                    (f, c.clone())
                })
                .collect(),
        }
    }

    /// Invert every variable.
    pub fn invert_all(&self) -> Self {
        let mut p = self.invert_var(0);
        if self.nvars() == 2 {
            p = p.invert_var(1);
        }
        p
    }

    /// Exchange the roles of the two variables, keeping the names in place:
    /// `p(x, y) -> p(y, x)`.
    pub fn swap_vars(&self) -> Self {
        assert_eq!(self.nvars(), 2);
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ([e[1], e[0]], c.clone()))
                .collect(),
        }
    }

    /// Same coefficients under new variable names.
    pub fn rename(&self, vars: &[&str]) -> Self {
        assert_eq!(vars.len(), self.nvars());
        LaurentPoly {
            vars: vars.iter().map(|v| v.to_string()).collect(),
            terms: self.terms.clone(),
        }
    }

    /// Embed a univariate polynomial as the `idx` variable of a bivariate ring.
    pub fn embed(&self, vars: &[&str], idx: usize) -> Self {
        assert_eq!(self.nvars(), 1);
        let mut out = Self::zero(vars);
        for (e, c) in &self.terms {
            let mut f = [0, 0];
            f[idx] = e[0];
            out.terms.insert(f, c.clone());
        }
        out
    }

    /// Set variable `idx` to an integer value; the result lives in the ring of
    /// the remaining variable (or is returned as a constant in the same ring
    /// when univariate). Negative exponents need a unit value.
    pub fn specialize(&self, idx: usize, value: &BigInt) -> Result<Self> {
        let unit = value.abs().is_one();
        let mut out = if self.nvars() == 2 {
            LaurentPoly {
                vars: vec![self.vars[1 - idx].clone()],
                terms: BTreeMap::new(),
            }
        } else {
            self.zero_like()
        };
        for (e, c) in &self.terms {
            let k = e[idx];
            let factor = if k >= 0 {
                num_traits::pow(value.clone(), k as usize)
            } else if unit {
                num_traits::pow(value.clone(), (-k) as usize)
            } else {
                return Err(domain(format!(
                    "cannot evaluate negative power {k} at non-unit {value}"
                )));
            };
            let rest = if self.nvars() == 2 { [e[1 - idx], 0] } else { [0, 0] };
            out.add_term(rest, &(c * factor));
        }
        Ok(out)
    }

    /// Evaluate every variable at an integer unit-or-positive point.
    pub fn eval(&self, point: &[BigInt]) -> Result<BigInt> {
        let mut p = self.clone();
        if p.nvars() == 2 {
            p = p.specialize(0, &point[0])?;
            return p.specialize(0, &point[1]).map(|q| q.constant_term());
        }
        p.specialize(0, &point[0]).map(|q| q.constant_term())
    }

    /// Substitute polynomials for the variables. `images[i]` replaces
    /// `vars[i]`; all images must share one variable list. Negative powers
    /// are only allowed when the image is a signed monomial.
    pub fn compose(&self, images: &[LaurentPoly]) -> Result<LaurentPoly> {
        if images.len() != self.nvars() {
            return Err(usage("one image per variable is required"));
        }
        for im in &images[1..] {
            images[0].check_compatible(im)?;
        }
        let mut out = images[0].zero_like();
        let mut caches: Vec<BTreeMap<i64, LaurentPoly>> = vec![BTreeMap::new(); images.len()];
        for (e, c) in &self.terms {
            let mut term = images[0].constant_like(c.clone());
            for (i, image) in images.iter().enumerate() {
                let k = e[i];
                if k == 0 {
                    continue;
                }
                let power = match caches[i].get(&k) {
                    Some(p) => p.clone(),
                    None => {
                        let p = if k > 0 {
                            image.pow(k as u32)
                        } else {
                            image.monomial_inverse().ok_or_else(|| {
                                domain("negative power of a non-monomial substitution")
                            })?
                            .pow((-k) as u32)
                        };
                        caches[i].insert(k, p.clone());
                        p
                    }
                };
                term = &term * &power;
            }
            out += &term;
        }
        Ok(out)
    }

    /// Inverse of a signed monomial `±vars^e`, `None` otherwise.
    pub fn monomial_inverse(&self) -> Option<LaurentPoly> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        if !c.abs().is_one() {
            return None;
        }
        Some(self.monomial_like([-e[0], -e[1]], c.clone()))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    ///
    /// Division runs on lexicographic leading terms. Since the quotient of
    /// two Laurent polynomials has all its exponents between
    /// `low(self) - low(d)` and `lead(self) - lead(d)` in lex order, any
    /// quotient term leaving that window proves non-divisibility.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() || self.vars != d.vars {
            return None;
        }
        if self.is_zero() {
            return Some(self.zero_like());
        }
        let (d_lead_e, d_lead_c) = d.terms.iter().next_back()?;
        let d_low = *d.terms.keys().next()?;
        let a_low = *self.terms.keys().next()?;
        let floor = [a_low[0] - d_low[0], a_low[1] - d_low[1]];
        let mut rem = self.clone();
        let mut quot = self.zero_like();
        while let Some((r_e, r_c)) = rem.terms.iter().next_back() {
            let q_e = [r_e[0] - d_lead_e[0], r_e[1] - d_lead_e[1]];
            if q_e < floor {
                return None;
            }
            let (q_c, remainder) = r_c.div_rem(d_lead_c);
            if !remainder.is_zero() {
                return None;
            }
            quot.add_term(q_e, &q_c);
            let sub = d.shift(q_e, &q_c);
            rem -= &sub;
        }
        Some(quot)
    }

    /// Gcd of the coefficients (non-negative).
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Coefficients of a univariate polynomial with non-negative exponents,
    /// index = exponent.
    pub fn dense_coeffs(&self) -> Result<Vec<BigInt>> {
        if self.nvars() != 1 {
            return Err(usage("dense coefficients need a univariate polynomial"));
        }
        if let Some(low) = self.valuation() {
            if low < 0 {
                return Err(domain("negative exponent in a polynomial"));
            }
        }
        let deg = self.degree().unwrap_or(-1);
        let mut out = vec![BigInt::zero(); (deg + 1) as usize];
        for (e, c) in &self.terms {
            out[e[0] as usize] = c.clone();
        }
        Ok(out)
    }

    /// Reduce every coefficient modulo `m` into `[0, m)`.
    pub fn reduce_mod(&self, m: &BigInt) -> LaurentPoly {
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            out.add_term(*e, &c.mod_floor(m));
        }
        out
    }

    /// Parse an expression such as `t^2 - t + 1`, `2x*y^-1 + 3` or
    /// `x^{-2}y` over the given variables.
    pub fn parse(vars: &[&str], text: &str) -> Result<LaurentPoly> {
        crate::parse::parse_laurent(vars, text)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mut mono = String::new();
            for (i, name) in self.vars.iter().enumerate() {
                match e[i] {
                    0 => {}
                    1 => mono.push_str(name),
                    k => mono.push_str(&format!("{name}^{k}")),
                }
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}{mono}")?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a LaurentPoly> for &'a LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &'a LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).expect("Laurent polynomial variable mismatch")
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &'a LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<LaurentPoly> for &'a LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.check_compatible(rhs)
            .expect("Laurent polynomial variable mismatch");
        for (e, c) in &rhs.terms {
            self.add_term(*e, c);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.check_compatible(rhs)
            .expect("Laurent polynomial variable mismatch");
        for (e, c) in &rhs.terms {
            self.add_term(*e, &-c);
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

/// Wire form: `{"vars":["x","y"],"terms":[{"e":[1,-1],"c":"3"}]}`.
#[derive(Serialize, Deserialize)]
pub(crate) struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct TermJson {
    pub e: Vec<i64>,
    pub c: String,
}

impl From<LaurentPoly> for PolyJson {
    fn from(p: LaurentPoly) -> Self {
        let n = p.nvars();
        PolyJson {
            terms: p
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    e: e[..n].to_vec(),
                    c: c.to_string(),
                })
                .collect(),
            vars: p.vars,
        }
    }
}

impl TryFrom<PolyJson> for LaurentPoly {
    type Error = Error;
    fn try_from(j: PolyJson) -> Result<Self> {
        if !(1..=2).contains(&j.vars.len()) {
            return Err(Error::Parse("\"vars\" must list one or two names".into()));
        }
        let mut p = LaurentPoly::zero_owned(&j.vars);
        for t in j.terms {
            if t.e.len() != j.vars.len() {
                return Err(Error::Parse(format!(
                    "exponent {:?} does not match {} variables",
                    t.e,
                    j.vars.len()
                )));
            }
            let c: BigInt = t
                .c
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {:?}", t.c)))?;
            let e = [t.e[0], t.e.get(1).copied().unwrap_or(0)];
            p.add_term(e, &c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x_minus_xinv() -> LaurentPoly {
        LaurentPoly::from_coeffs("x", -1, &[-1, 0, 1])
    }

    #[test]
    fn squaring_x_minus_inverse() {
        let d = x_minus_xinv();
        assert_eq!(&d * &d, LaurentPoly::from_coeffs("x", -2, &[1, 0, -2, 0, 1]));
    }

    #[test]
    fn zero_absorbs() {
        let p = LaurentPoly::parse(&["x", "y"], "x^2y - 3x^-1").unwrap();
        let z = LaurentPoly::zero(&["x", "y"]);
        assert!((&p * &z).is_zero());
    }

    #[test]
    fn mismatched_vars_is_usage_error() {
        let a = LaurentPoly::one(&["x"]);
        let b = LaurentPoly::one(&["z"]);
        assert!(matches!(a.checked_mul(&b), Err(Error::Usage(_))));
    }

    #[test]
    fn exact_division() {
        let a = LaurentPoly::parse(&["x", "y"], "x^2 - y^2").unwrap();
        let b = LaurentPoly::parse(&["x", "y"], "x - y").unwrap();
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q, LaurentPoly::parse(&["x", "y"], "x + y").unwrap());
        let c = LaurentPoly::parse(&["x", "y"], "x + 2y").unwrap();
        assert!(a.div_exact(&c).is_none());
        let t = LaurentPoly::parse(&["t"], "t^2 - t + 1").unwrap();
        assert!(t.div_exact(&LaurentPoly::parse(&["t"], "1 - t").unwrap()).is_none());
    }

    #[test]
    fn compose_with_negative_powers() {
        let p = LaurentPoly::parse(&["x", "y"], "x y^-1").unwrap();
        let imgs = [
            LaurentPoly::parse(&["t"], "t^2").unwrap(),
            LaurentPoly::parse(&["t"], "-t").unwrap(),
        ];
        assert_eq!(p.compose(&imgs).unwrap(), LaurentPoly::parse(&["t"], "-t").unwrap());
        let bad = [LaurentPoly::parse(&["t"], "t + 1").unwrap(), imgs[1].clone()];
        let q = LaurentPoly::parse(&["x", "y"], "x^-1").unwrap();
        assert!(matches!(q.compose(&bad), Err(Error::Domain(_))));
    }

    #[test]
    fn json_shape() {
        let p = LaurentPoly::parse(&["x", "y"], "3x y^-1").unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"vars":["x","y"],"terms":[{"e":[1,-1],"c":"3"}]}"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn display_orders_descending() {
        let p = LaurentPoly::from_coeffs("x", -2, &[1, 0, -2, 0, 1]);
        assert_eq!(p.to_string(), "x^2 - 2 + x^-2");
    }

    #[test]
    fn specialize_at_one() {
        let p = LaurentPoly::parse(&["x", "y"], "x y + x^-1 y^-1 - 3").unwrap();
        let q = p.specialize(1, &BigInt::one()).unwrap();
        assert_eq!(q, LaurentPoly::parse(&["x"], "x + x^-1 - 3").unwrap());
    }
}
