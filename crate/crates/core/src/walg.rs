//! The ring `Z[u, v, w]/(w^2 + uvw - u^2 - v^2 - 4)` with
//! `u = x - x^-1`, `v = y - y^-1`, `w = x y^-1 + x^-1 y`.
//!
//! Elements are kept w-linear. The parity `lambda` fixes which monomials are
//! legal: `u^i v^j` needs `i ≡ j ≢ lambda` and `u^i v^j w` needs
//! `i ≡ j ≡ lambda` (mod 2). Truncation is by the total `(u, v)` degree
//! `i + j`, which the reduction of `w^2` never lowers.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::conway::XY;
use crate::error::{domain, internal, usage, Error, Result};
use crate::linalg::{rank, solve, LinearSolution};
use crate::poly::LaurentPoly;
use crate::rational::{fit_rational_bivariate, BivariateFit, BivariateSeries};
use crate::series::TruncatedSeries;

/// Key `(i, j, w)` for `u^i v^j w^[w]`.
pub type WKey = (u32, u32, bool);

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "WJson", into = "WJson")]
pub struct WElement {
    lambda: u8,
    terms: BTreeMap<WKey, BigInt>,
    order: Option<u32>,
}

fn legal(lambda: u8, (i, j, w): WKey) -> bool {
    let l = lambda as u32;
    if i % 2 != j % 2 {
        return false;
    }
    if w {
        i % 2 == l
    } else {
        i % 2 != l
    }
}

impl WElement {
    pub fn zero(lambda: u8, order: Option<u32>) -> Self {
        assert!(lambda <= 1);
        WElement {
            lambda,
            terms: BTreeMap::new(),
            order,
        }
    }

    /// The unit, which has parity 1.
    pub fn one(order: Option<u32>) -> Self {
        let mut e = Self::zero(1, order);
        e.terms.insert((0, 0, false), BigInt::one());
        e
    }

    /// `w` itself (parity 0).
    pub fn w() -> Self {
        Self::from_terms(0, [((0, 0, true), BigInt::one())], None).expect("legal")
    }

    pub fn from_terms<I>(lambda: u8, terms: I, order: Option<u32>) -> Result<Self>
    where
        I: IntoIterator<Item = (WKey, BigInt)>,
    {
        if lambda > 1 {
            return Err(usage("lambda is 0 or 1"));
        }
        let mut e = Self::zero(lambda, order);
        for (k, c) in terms {
            if !legal(lambda, k) {
                return Err(usage(format!(
                    "monomial u^{} v^{}{} is not legal for lambda = {lambda}",
                    k.0,
                    k.1,
                    if k.2 { " w" } else { "" }
                )));
            }
            e.add_term(k, &c);
        }
        Ok(e)
    }

    fn add_term(&mut self, k: WKey, c: &BigInt) {
        if c.is_zero() || self.order.is_some_and(|n| k.0 + k.1 > n) {
            return;
        }
        let slot = self.terms.entry(k).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn lambda(&self) -> u8 {
        self.lambda
    }

    pub fn order(&self) -> Option<u32> {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WKey, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: WKey) -> BigInt {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn truncate(&self, order: u32) -> Self {
        let order = self.order.map_or(order, |n| n.min(order));
        let mut e = Self::zero(self.lambda, Some(order));
        for (k, c) in &self.terms {
            e.add_term(*k, c);
        }
        e
    }

    fn merged_order(&self, other: &Self) -> Option<u32> {
        match (self.order, other.order) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, None) => a,
            (None, b) => b,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.lambda != other.lambda {
            return Err(usage("cannot add w-elements of different parity"));
        }
        let mut e = Self::zero(self.lambda, self.merged_order(other));
        for (k, c) in self.terms.iter().chain(other.terms.iter()) {
            e.add_term(*k, c);
        }
        Ok(e)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut e = Self::zero(self.lambda, self.order);
        for (k, a) in &self.terms {
            e.add_term(*k, &(a * c));
        }
        e
    }

    /// Product reduced by `w^2 = u^2 + v^2 + 4 - uvw`.
    pub fn mul(&self, other: &Self) -> Self {
        let lambda = self.lambda ^ other.lambda ^ 1;
        let mut e = Self::zero(lambda, self.merged_order(other));
        for ((i1, j1, w1), a) in &self.terms {
            for ((i2, j2, w2), b) in &other.terms {
                let (i, j) = (i1 + i2, j1 + j2);
                if e.order.is_some_and(|n| i + j > n) {
                    continue;
                }
                let c = a * b;
                if *w1 && *w2 {
                    e.add_term((i + 2, j, false), &c);
                    e.add_term((i, j + 2, false), &c);
                    e.add_term((i, j, false), &(&c * 4));
                    e.add_term((i + 1, j + 1, true), &-&c);
                } else {
                    e.add_term((i, j, *w1 || *w2), &c);
                }
            }
        }
        e
    }

    /// Multiply by `f(u) g(v)` for power series `f`, `g` (w-free, even).
    pub fn mul_uv_series(&self, f: &TruncatedSeries, g: &TruncatedSeries) -> Result<Self> {
        if f.coeffs().iter().skip(1).step_by(2).any(|c| !c.is_zero())
            || g.coeffs().iter().skip(1).step_by(2).any(|c| !c.is_zero())
        {
            return Err(usage("only even series preserve parity"));
        }
        let n = self
            .order
            .ok_or_else(|| usage("series multiplication needs a truncation order"))?;
        let n = n.min(f.order() as u32).min(g.order() as u32);
        let mut e = Self::zero(self.lambda, Some(n));
        for ((i, j, w), c) in &self.terms {
            for (a, fa) in f.coeffs().iter().enumerate() {
                if fa.is_zero() || i + j + a as u32 > n {
                    continue;
                }
                for (b, gb) in g.coeffs().iter().enumerate() {
                    if gb.is_zero() || i + j + (a + b) as u32 > n {
                        continue;
                    }
                    e.add_term((i + a as u32, j + b as u32, *w), &(c * fa * gb));
                }
            }
        }
        Ok(e)
    }

    /// `R(z, z, 2)`, a series in `z` through the truncation order, or an exact
    /// polynomial when untruncated.
    pub fn specialize_diagonal(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero(&["z"]);
        for ((i, j, w), c) in &self.terms {
            let c = if *w { c * 2 } else { c.clone() };
            p = &p + &LaurentPoly::monomial(&["z"], [(i + j) as i64, 0], c);
        }
        p
    }

    /// Substitute `u, v, w` by their Laurent images.
    pub fn to_omega(&self) -> Result<LaurentPoly> {
        if self.order.is_some() {
            return Err(usage("a truncated w-series has no Laurent image"));
        }
        let u = LaurentPoly::parse(&XY, "x - x^-1").expect("static");
        let v = LaurentPoly::parse(&XY, "y - y^-1").expect("static");
        let w = LaurentPoly::parse(&XY, "x y^-1 + x^-1 y").expect("static");
        let mut upow = vec![u.one_like()];
        let mut vpow = vec![v.one_like()];
        let mut out = LaurentPoly::zero(&XY);
        for ((i, j, wk), c) in &self.terms {
            while upow.len() <= *i as usize {
                let next = upow.last().expect("nonempty") * &u;
                upow.push(next);
            }
            while vpow.len() <= *j as usize {
                let next = vpow.last().expect("nonempty") * &v;
                vpow.push(next);
            }
            let mut t = (&upow[*i as usize] * &vpow[*j as usize]).scale(c);
            if *wk {
                t = &t * &w;
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// The part without `w` and the coefficient of `w`, as series in `(u, v)`.
    pub fn split(&self, default_order: u32) -> (BivariateSeries, BivariateSeries) {
        let n = self.order.unwrap_or(default_order) as usize;
        let mut plain = BivariateSeries::zero(["u", "v"], n);
        let mut wpart = BivariateSeries::zero(["u", "v"], n);
        for ((i, j, w), c) in &self.terms {
            let target = if *w { &mut wpart } else { &mut plain };
            target.set([*i, *j], c.clone());
        }
        (plain, wpart)
    }
}

/// Exact rewrite of `Ω(x, y)` in w-linear form with parity `lk mod 2`.
///
/// The candidate monomials are the legal `u^i v^j w^k` whose images fit the
/// degree window of `Ω` (`i + k ≤` max |x-exponent|, `j + k ≤` max
/// |y-exponent|); the coefficients come from an exact linear solve.
pub fn omega_to_w(omega: &LaurentPoly, lk: i64) -> Result<WElement> {
    if omega.vars() != XY {
        return Err(usage("Ω must be written in (x, y)"));
    }
    let lambda = lk.rem_euclid(2) as u8;
    if omega.is_zero() {
        return Ok(WElement::zero(lambda, None));
    }
    let xmax = omega.terms().map(|(e, _)| e[0].abs()).max().unwrap_or(0) as u32;
    let ymax = omega.terms().map(|(e, _)| e[1].abs()).max().unwrap_or(0) as u32;
    let mut columns: Vec<WKey> = Vec::new();
    for k in 0..=1u32 {
        for i in 0..=xmax.saturating_sub(k) {
            for j in 0..=ymax.saturating_sub(k) {
                let key = (i, j, k == 1);
                if i + k <= xmax && j + k <= ymax && legal(lambda, key) {
                    columns.push(key);
                }
            }
        }
    }
    let images: Vec<LaurentPoly> = columns
        .iter()
        .map(|&key| {
            WElement::from_terms(lambda, [(key, BigInt::one())], None)
                .and_then(|e| e.to_omega())
        })
        .collect::<Result<_>>()?;
    let mut rows: BTreeMap<[i64; 2], usize> = BTreeMap::new();
    for p in images.iter().chain(std::iter::once(omega)) {
        for (e, _) in p.terms() {
            let next = rows.len();
            rows.entry(*e).or_insert(next);
        }
    }
    let q = |c: &BigInt| BigRational::from_integer(c.clone());
    let mut a = vec![vec![BigRational::zero(); columns.len()]; rows.len()];
    for (col, p) in images.iter().enumerate() {
        for (e, c) in p.terms() {
            a[rows[e]][col] = q(c);
        }
    }
    let mut b = vec![BigRational::zero(); rows.len()];
    for (e, c) in omega.terms() {
        b[rows[e]] = q(c);
    }
    match solve(&a, &b) {
        LinearSolution::Inconsistent { .. } => Err(domain(
            "Ω has no w-linear representative (symmetry or parity violated)",
        )),
        LinearSolution::Consistent { nullity, .. } if nullity > 0 => {
            Err(internal("w-linear representative is not unique"))
        }
        LinearSolution::Consistent { solution, .. } => {
            let mut terms = Vec::new();
            for (key, c) in columns.iter().zip(solution) {
                if !c.is_integer() {
                    return Err(domain("w-linear representative has non-integer coefficients"));
                }
                terms.push((*key, c.to_integer()));
            }
            WElement::from_terms(lambda, terms, None)
        }
    }
}

/// Whether the Laurent images of all legal monomials with `i + j + k ≤ d`
/// (both parities) are linearly independent; returns `(rank, count)`.
pub fn monomial_image_rank(d: u32, lambda: u8) -> Result<(usize, usize)> {
    let mut keys = Vec::new();
    for i in 0..=d {
        for j in 0..=d - i {
            for k in 0..=1u32 {
                let key = (i, j, k == 1);
                if i + j + k <= d && legal(lambda, key) {
                    keys.push(key);
                }
            }
        }
    }
    let images: Vec<LaurentPoly> = keys
        .iter()
        .map(|&key| {
            WElement::from_terms(lambda, [(key, BigInt::one())], None).and_then(|e| e.to_omega())
        })
        .collect::<Result<_>>()?;
    let mut rows: BTreeMap<[i64; 2], usize> = BTreeMap::new();
    for p in &images {
        for (e, _) in p.terms() {
            let next = rows.len();
            rows.entry(*e).or_insert(next);
        }
    }
    let mut m = vec![vec![BigInt::zero(); rows.len()]; keys.len()];
    for (r, p) in images.iter().enumerate() {
        for (e, c) in p.terms() {
            m[r][rows[e]] = c.clone();
        }
    }
    Ok((rank(m, &BigInt::one())?, keys.len()))
}

/// `℧ / (∇1(u) ∇2(v))` through `order`.
pub fn reduced_w(
    mho: &WElement,
    nabla1: &LaurentPoly,
    nabla2: &LaurentPoly,
    order: u32,
) -> Result<WElement> {
    let n = order as usize;
    let f = TruncatedSeries::from_poly(nabla1, n)?.inverse()?;
    let g = TruncatedSeries::from_poly(nabla2, n)?.inverse()?;
    mho.truncate(order).mul_uv_series(&f, &g)
}

/// The series `P_0, P_1, …` of a reduced element, each in `s = v^2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PkExpansion {
    pub lambda: u8,
    pub p: Vec<TruncatedSeries>,
}

impl PkExpansion {
    /// `C_L = P_1`, as a series in `s = v^2`.
    pub fn cochran(&self) -> Option<&TruncatedSeries> {
        self.p.get(1)
    }
}

/// Which part of the element carries `u^k`: for odd parity, even `k` sits in
/// the w-free part and odd `k` in the w-part (with an extra `v`); even parity
/// swaps the two.
fn pk_slot(lambda: u8, k: u32) -> (bool, u32) {
    let odd_k = k % 2 == 1;
    let w = if lambda == 1 { odd_k } else { !odd_k };
    (w, if odd_k { 1 } else { 0 })
}

pub fn pk_expand(reduced: &WElement, k_max: u32) -> Result<PkExpansion> {
    let n = reduced
        .order
        .ok_or_else(|| usage("P_k expansion needs a truncated series"))?;
    for key in reduced.terms.keys() {
        if !legal(reduced.lambda, *key) {
            return Err(internal("parity violation in reduced element"));
        }
    }
    let mut out = Vec::new();
    for k in 0..=k_max.min(n) {
        let (w, extra) = pk_slot(reduced.lambda, k);
        if k + extra > n {
            break;
        }
        let ord = ((n - k - extra) / 2) as usize;
        let coeffs = (0..=ord).map(|m| reduced.coeff((k, 2 * m as u32 + extra, w)));
        out.push(TruncatedSeries::new("s", ord, coeffs));
    }
    Ok(PkExpansion {
        lambda: reduced.lambda,
        p: out,
    })
}

/// The `u^1`-part of the element as a series in `v` (the w-part when the
/// parity is odd). This is `v · P_1(v^2)`.
pub fn u1_component(reduced: &WElement) -> Result<TruncatedSeries> {
    let n = reduced
        .order
        .ok_or_else(|| usage("needs a truncated series"))?;
    if n == 0 {
        return Err(usage("order too small for a u^1 component"));
    }
    let w = reduced.lambda == 1;
    let ord = (n - 1) as usize;
    Ok(TruncatedSeries::new(
        "v",
        ord,
        (0..=ord).map(|j| reduced.coeff((1, j as u32, w))),
    ))
}

pub fn cochran_splice_add(c1: &TruncatedSeries, c2: &TruncatedSeries) -> Result<TruncatedSeries> {
    c1.checked_add(c2)
}

/// The `b_n` with `s = (1 + b_1 z)(1 + b_2 z^2)(1 + b_3 z^3)…` through the order.
pub fn factor_series(s: &TruncatedSeries) -> Result<Vec<(usize, BigInt)>> {
    if !s.constant_term().is_one() {
        return Err(usage("factor_series needs constant term 1"));
    }
    let mut rest = s.clone();
    let mut out = Vec::new();
    for n in 1..=s.order() {
        let b = rest.coeff(n).clone();
        if !b.is_zero() {
            let mut f = vec![BigInt::zero(); n + 1];
            f[0] = BigInt::one();
            f[n] = b.clone();
            let factor = TruncatedSeries::new(rest.var(), s.order(), f);
            rest = rest.checked_div(&factor)?;
        }
        out.push((n, b));
    }
    if rest != TruncatedSeries::one(s.var(), s.order()) {
        return Err(internal("factorization left a nontrivial remainder"));
    }
    Ok(out)
}

/// `R = R' + w R''` with both parts tested for rationality.
#[derive(Clone, Debug, PartialEq)]
pub enum WSeriesRationalForm {
    Rational {
        plain: BivariateFit,
        w_part: BivariateFit,
    },
    NotDecided,
}

/// Split `R` and hand each half to the bivariate fitter with total-degree
/// bounds `(m, n)`.
pub fn w_series_rational_split(r: &WElement, m: usize, n: usize) -> Result<WSeriesRationalForm> {
    let order = r
        .order
        .ok_or_else(|| usage("rationality split needs a truncated series"))?;
    let (plain, wpart) = r.split(order);
    match (
        fit_rational_bivariate(&plain, m, n)?,
        fit_rational_bivariate(&wpart, m, n)?,
    ) {
        (Some(a), Some(b)) => Ok(WSeriesRationalForm::Rational {
            plain: a,
            w_part: b,
        }),
        _ => Ok(WSeriesRationalForm::NotDecided),
    }
}

impl fmt::Debug for WElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for WElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((i, j, w), c) in &self.terms {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mut mono = String::new();
            for (name, k) in [("u", *i), ("v", *j)] {
                match k {
                    0 => {}
                    1 => mono.push_str(name),
                    k => mono.push_str(&format!("{name}^{k}")),
                }
            }
            if *w {
                mono.push('w');
            }
            let mag = c.abs();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}{mono}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(n) = self.order {
            write!(f, " + O(deg {})", n + 1)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct WJson {
    lambda: u8,
    terms: Vec<WTermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<u32>,
}

#[derive(Serialize, Deserialize)]
struct WTermJson {
    i: u32,
    j: u32,
    w: bool,
    c: String,
}

impl From<WElement> for WJson {
    fn from(e: WElement) -> Self {
        WJson {
            lambda: e.lambda,
            terms: e
                .terms
                .iter()
                .map(|((i, j, w), c)| WTermJson {
                    i: *i,
                    j: *j,
                    w: *w,
                    c: c.to_string(),
                })
                .collect(),
            order: e.order,
        }
    }
}

impl TryFrom<WJson> for WElement {
    type Error = Error;
    fn try_from(j: WJson) -> Result<Self> {
        let mut terms = Vec::new();
        for t in j.terms {
            let c: BigInt = t
                .c
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {:?}", t.c)))?;
            terms.push(((t.i, t.j, t.w), c));
        }
        WElement::from_terms(j.lambda, terms, j.order).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(lambda: u8, terms: &[((u32, u32, bool), i64)]) -> WElement {
        WElement::from_terms(lambda, terms.iter().map(|(k, c)| (*k, BigInt::from(*c))), None)
            .unwrap()
    }

    #[test]
    fn w_squared() {
        let w = WElement::w();
        let expect = el(
            1,
            &[
                ((2, 0, false), 1),
                ((0, 2, false), 1),
                ((0, 0, false), 4),
                ((1, 1, true), -1),
            ],
        );
        assert_eq!(w.mul(&w), expect);
    }

    #[test]
    fn wbar_times_w() {
        let wbar = el(0, &[((1, 1, false), 1), ((0, 0, true), 1)]);
        let expect = el(1, &[((2, 0, false), 1), ((0, 2, false), 1), ((0, 0, false), 4)]);
        assert_eq!(wbar.mul(&WElement::w()), expect);
    }

    #[test]
    fn identity() {
        let a = el(0, &[((1, 1, false), 3), ((2, 0, true), -2)]);
        assert_eq!(a.mul(&WElement::one(None)), a);
    }

    #[test]
    fn illegal_terms_rejected() {
        assert!(WElement::from_terms(1, [((1, 0, false), BigInt::one())], None).is_err());
        assert!(WElement::from_terms(1, [((0, 0, true), BigInt::one())], None).is_err());
    }

    #[test]
    fn hopf_and_wbar_conversion() {
        let one = LaurentPoly::one(&XY);
        assert_eq!(omega_to_w(&one, 1).unwrap(), WElement::one(None));
        let wbar = LaurentPoly::parse(&XY, "x y + x^-1 y^-1").unwrap();
        let e = omega_to_w(&wbar, 0).unwrap();
        assert_eq!(e, el(0, &[((1, 1, false), 1), ((0, 0, true), 1)]));
        assert_eq!(e.to_omega().unwrap(), wbar);
    }

    #[test]
    fn asymmetric_input_rejected() {
        let p = LaurentPoly::parse(&XY, "x").unwrap();
        assert!(matches!(omega_to_w(&p, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn factor_series_pins() {
        let one = TruncatedSeries::one("z", 6);
        assert!(factor_series(&one).unwrap().iter().all(|(_, b)| b.is_zero()));
        let s = TruncatedSeries::from_i64s("z", 6, &[1, 1]);
        let f = factor_series(&s).unwrap();
        assert_eq!(f[0], (1, BigInt::one()));
        assert!(f[1..].iter().all(|(_, b)| b.is_zero()));
    }

    #[test]
    fn json_roundtrip() {
        let e = el(1, &[((1, 1, true), -1)]).truncate(24);
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"lambda":1,"terms":[{"i":1,"j":1,"w":true,"c":"-1"}],"order":24}"#);
        assert_eq!(serde_json::from_str::<WElement>(&s).unwrap(), e);
    }

    #[test]
    fn pk_of_one() {
        let e = WElement::one(Some(8));
        let pk = pk_expand(&e, 4).unwrap();
        assert_eq!(pk.p[0], TruncatedSeries::one("s", 4));
        assert!(pk.p[1..].iter().all(TruncatedSeries::is_zero));
    }
}
