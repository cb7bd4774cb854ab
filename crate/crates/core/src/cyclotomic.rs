//! Exact products over roots of unity.
//!
//! A product `∏_j g(ζ^j)` over all `r`-th roots of unity is a resultant
//! against `T^r - 1`, so it can be computed with a Sylvester determinant
//! over the coefficient ring and no complex numbers at all.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{domain, internal, usage, Result};
use crate::linalg::determinant;
use crate::poly::LaurentPoly;

/// Laurent polynomial in an auxiliary variable `T` whose coefficients lie in
/// a Laurent ring in one or two variables.
#[derive(Clone, PartialEq, Eq)]
pub struct AuxPoly {
    ring: LaurentPoly,
    coeffs: BTreeMap<i64, LaurentPoly>,
}

impl AuxPoly {
    /// The zero element over the ring of `proto`.
    pub fn zero(proto: &LaurentPoly) -> Self {
        AuxPoly {
            ring: proto.zero_like(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(proto: &LaurentPoly, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, LaurentPoly)>,
    {
        let mut p = Self::zero(proto);
        for (k, c) in terms {
            p.add_term(k, &c);
        }
        p
    }

    /// `c · T^k`.
    pub fn monomial(k: i64, c: LaurentPoly) -> Self {
        let proto = c.clone();
        Self::from_terms(&proto, [(k, c)])
    }

    /// Read a bivariate polynomial whose variable `t_idx` plays the role of `T`.
    pub fn from_bivariate(p: &LaurentPoly, t_idx: usize) -> Result<Self> {
        if p.nvars() != 2 {
            return Err(usage("expected a polynomial in a coefficient variable and T"));
        }
        let other = &p.vars()[1 - t_idx];
        let proto = LaurentPoly::zero(&[other.as_str()]);
        let mut out = Self::zero(&proto);
        for (e, c) in p.terms() {
            out.add_term(e[t_idx], &proto.monomial_like([e[1 - t_idx], 0], c.clone()));
        }
        Ok(out)
    }

    fn add_term(&mut self, k: i64, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self
            .coeffs
            .entry(k)
            .or_insert_with(|| self.ring.zero_like());
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn ring(&self) -> &LaurentPoly {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64) -> LaurentPoly {
        self.coeffs
            .get(&k)
            .cloned()
            .unwrap_or_else(|| self.ring.zero_like())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &LaurentPoly)> {
        self.coeffs.iter()
    }

    pub fn low_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn mul(&self, other: &AuxPoly) -> AuxPoly {
        let mut out = AuxPoly::zero(&self.ring);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                out.add_term(a + b, &(ca * cb));
            }
        }
        out
    }

    pub fn add(&self, other: &AuxPoly) -> AuxPoly {
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(*k, c);
        }
        out
    }

    /// Multiply by `T^k`.
    pub fn shift(&self, k: i64) -> AuxPoly {
        AuxPoly {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// `g(T^j)` reduced modulo `T^r - 1`, as a dense vector of length `r`.
    fn power_image_mod(&self, j: i64, r: usize) -> Vec<LaurentPoly> {
        let mut out = vec![self.ring.zero_like(); r];
        for (k, c) in &self.coeffs {
            let idx = (k * j).rem_euclid(r as i64) as usize;
            out[idx] += c;
        }
        out
    }
}

impl fmt::Debug for AuxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(k, c)| format!("({c})T^{k}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Sylvester resultant `Res_T(a, b)` after clearing negative powers of `T`.
/// For monic `a` this is `∏_{a(α)=0} b(α)`.
pub fn resultant(a: &AuxPoly, b: &AuxPoly) -> Result<LaurentPoly> {
    if a.is_zero() || b.is_zero() {
        return Err(domain("resultant of a zero polynomial"));
    }
    if a.ring.vars() != b.ring.vars() {
        return Err(usage("resultant operands live over different rings"));
    }
    let a = a.shift(-a.low_degree().unwrap_or(0));
    let b = b.shift(-b.low_degree().unwrap_or(0));
    let m = a.degree().unwrap_or(0) as usize;
    let n = b.degree().unwrap_or(0) as usize;
    let size = m + n;
    let zero = a.ring.zero_like();
    let mut syl = vec![vec![zero.clone(); size]; size];
    for i in 0..n {
        for k in 0..=m {
            syl[i][i + k] = a.coeff((m - k) as i64);
        }
    }
    for i in 0..m {
        for k in 0..=n {
            syl[n + i][i + k] = b.coeff((n - k) as i64);
        }
    }
    determinant(syl, &a.ring)
}

/// `∏_{j=0}^{r-1} g(ζ^j)` for a primitive `r`-th root of unity `ζ`, as an
/// element of the coefficient ring.
pub fn roots_of_unity_product(g: &AuxPoly, r: usize) -> Result<LaurentPoly> {
    if r == 0 {
        return Err(usage("the order r must be positive"));
    }
    if g.is_zero() {
        return Ok(g.ring.zero_like());
    }
    let d = g.low_degree().unwrap_or(0);
    let h = g.shift(-d);
    let one = g.ring.one_like();
    let t_r_minus_1 = AuxPoly::from_terms(&g.ring, [(r as i64, one.clone()), (0, -&one)]);
    let res = resultant(&t_r_minus_1, &h)?;
    // ∏ ζ^j = (-1)^(r+1), raised to the d-th power.
    let negate = r.is_multiple_of(2) && d.rem_euclid(2) == 1;
    Ok(if negate { -res } else { res })
}

/// Working context for one order `r`: the cyclotomic polynomial `Φ_r` and a
/// second, independent route to root-of-unity products.
#[derive(Clone, Debug)]
pub struct CyclotomicContext {
    r: usize,
    phi: Vec<BigInt>,
}

impl CyclotomicContext {
    pub fn new(r: usize) -> Result<Self> {
        if r == 0 {
            return Err(usage("the order r must be positive"));
        }
        Ok(CyclotomicContext {
            r,
            phi: cyclotomic_poly(r),
        })
    }

    pub fn order(&self) -> usize {
        self.r
    }

    /// Dense coefficients of `Φ_r`, index = exponent.
    pub fn phi(&self) -> &[BigInt] {
        &self.phi
    }

    pub fn product(&self, g: &AuxPoly) -> Result<LaurentPoly> {
        roots_of_unity_product(g, self.r)
    }

    /// The same product computed by expanding `∏_j g(T^j)` in
    /// `R[T]/(T^r - 1)` and projecting onto `R[T]/(Φ_r)`. The projection of a
    /// Galois-invariant element is a constant; anything else is an error.
    pub fn product_by_expansion(&self, g: &AuxPoly) -> Result<LaurentPoly> {
        let r = self.r;
        let zero = g.ring.zero_like();
        let mut acc = vec![zero.clone(); r];
        acc[0] = g.ring.one_like();
        for j in 0..r as i64 {
            let f = g.power_image_mod(j, r);
            let mut next = vec![zero.clone(); r];
            for (a, ca) in acc.iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                for (b, cb) in f.iter().enumerate() {
                    if !cb.is_zero() {
                        next[(a + b) % r] += &(ca * cb);
                    }
                }
            }
            acc = next;
        }
        // Reduce modulo the monic Φ_r.
        let deg = self.phi.len() - 1;
        for k in (deg..r).rev() {
            let lead = std::mem::replace(&mut acc[k], zero.clone());
            if lead.is_zero() {
                continue;
            }
            for (i, c) in self.phi.iter().enumerate().take(deg) {
                if !c.is_zero() {
                    acc[k - deg + i] -= &lead.scale(c);
                }
            }
        }
        if acc[1..deg.max(1)].iter().any(|c| !c.is_zero()) {
            return Err(internal("root-of-unity product did not project to a constant"));
        }
        Ok(acc.swap_remove(0))
    }
}

/// Dense coefficients of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: usize) -> Vec<BigInt> {
    assert!(n >= 1);
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = BigInt::from(-1);
    p[n] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = crate::series::upoly::div_exact(&p, &cyclotomic_poly(d))
                .expect("cyclotomic factors divide T^n - 1");
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(s: &str) -> LaurentPoly {
        LaurentPoly::parse(&["z"], s).unwrap()
    }

    fn aux(terms: &[(i64, &str)]) -> AuxPoly {
        AuxPoly::from_terms(&z("0"), terms.iter().map(|(k, c)| (*k, z(c))))
    }

    #[test]
    fn resultant_evaluation_property() {
        let a = aux(&[(2, "1"), (0, "-1")]);
        let b = aux(&[(1, "1"), (0, "-z")]);
        assert_eq!(resultant(&a, &b).unwrap(), z("z^2 - 1"));
    }

    #[test]
    fn resultant_shared_root() {
        let a = aux(&[(3, "1"), (0, "-1")]);
        let b = aux(&[(1, "1"), (0, "-1")]);
        assert!(resultant(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn resultant_against_linear_factor() {
        let a = aux(&[(0, "1"), (1, "1"), (2, "1")]);
        let b = aux(&[(0, "z"), (1, "-1")]);
        assert_eq!(resultant(&a, &b).unwrap(), z("z^2 + z + 1"));
    }

    #[test]
    fn zero_input_is_domain_error() {
        let a = aux(&[(1, "1")]);
        assert!(resultant(&a, &AuxPoly::zero(&z("0"))).is_err());
    }

    #[test]
    fn product_of_roots_themselves() {
        for r in 1..8 {
            let expect = if r % 2 == 0 { "-1" } else { "1" };
            assert_eq!(roots_of_unity_product(&aux(&[(1, "1")]), r).unwrap(), z(expect));
        }
        assert_eq!(roots_of_unity_product(&aux(&[(1, "1")]), 3).unwrap(), z("1"));
    }

    #[test]
    fn constant_product() {
        assert_eq!(roots_of_unity_product(&aux(&[(0, "2z")]), 5).unwrap(), z("32z^5"));
    }

    #[test]
    fn cube_roots_family_factor() {
        let g = aux(&[(0, "1"), (2, "-z^2"), (1, "z^2")]);
        assert_eq!(roots_of_unity_product(&g, 3).unwrap(), z("1 + 3z^4"));
    }

    #[test]
    fn cyclotomic_table() {
        let c = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(cyclotomic_poly(1), c(&[-1, 1]));
        assert_eq!(cyclotomic_poly(4), c(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(6), c(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), c(&[1, 0, -1, 0, 1]));
    }
}
