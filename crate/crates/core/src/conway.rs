//! Conway potential functions and Conway polynomials of the fake Mazur link
//! family `M_r = (J_r, B)` together with the splice and cover toolbox.
//!
//! Conventions: Conway polynomials live in `z`; two-component potentials live
//! in `(x, y)` with the first component on `x`. `u = x - x^-1` and
//! `v = y - y^-1` are the images of `z` under the two specializations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::cyclotomic::{roots_of_unity_product, AuxPoly};
use crate::error::{internal, usage, Result};
use crate::poly::LaurentPoly;

pub const Z: &str = "z";
pub const XY: [&str; 2] = ["x", "y"];
/// Coefficient ring of the cover oracle: `eta` stands for `y^(1/r)`.
pub const XETA: [&str; 2] = ["x", "eta"];

fn z_poly(coeffs: &[i64]) -> LaurentPoly {
    LaurentPoly::from_coeffs(Z, 0, coeffs)
}

fn z_var() -> LaurentPoly {
    LaurentPoly::var(&[Z], 0)
}

fn check_r(r: usize) -> Result<()> {
    if r == 0 {
        return Err(usage("cover degree r must be at least 1"));
    }
    Ok(())
}

fn sign(k: i64) -> BigInt {
    if k.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn two_term_recursion(n: i64, seed0: LaurentPoly, seed1: LaurentPoly) -> LaurentPoly {
    let z = z_var();
    let (mut a, mut b) = (seed0, seed1);
    for _ in 0..n {
        let c = &(&z * &b) + &a;
        a = b;
        b = c;
    }
    a
}

/// Fibonacci polynomial `F_n(z)`; `F_{-n} = (-1)^(n+1) F_n`.
pub fn fibonacci(n: i64) -> LaurentPoly {
    let f = two_term_recursion(n.abs(), z_poly(&[]), z_poly(&[1]));
    if n < 0 {
        f.scale(&sign(n.abs() + 1))
    } else {
        f
    }
}

/// Lucas polynomial `L_n(z)`; `L_{-n} = (-1)^n L_n`.
pub fn lucas(n: i64) -> LaurentPoly {
    let l = two_term_recursion(n.abs(), z_poly(&[2]), z_poly(&[0, 1]));
    if n < 0 {
        l.scale(&sign(n.abs()))
    } else {
        l
    }
}

/// `p(x - x^-1)` for a polynomial `p` in one variable.
pub fn substitute_u(p: &LaurentPoly, var: &str) -> Result<LaurentPoly> {
    if p.nvars() != 1 {
        return Err(usage("substitute_u expects a univariate polynomial"));
    }
    p.compose(&[LaurentPoly::from_coeffs(var, -1, &[-1, 0, 1])])
}

/// `p(x - x^-1)` or `p(y - y^-1)` inside the `(x, y)` ring.
fn substitute_in_xy(p: &LaurentPoly, idx: usize) -> Result<LaurentPoly> {
    let mut lo = [0, 0];
    let mut hi = [0, 0];
    lo[idx] = -1;
    hi[idx] = 1;
    let image = &LaurentPoly::monomial(&XY, hi, 1) - &LaurentPoly::monomial(&XY, lo, 1);
    p.compose(&[image])
}

fn u_xy() -> LaurentPoly {
    LaurentPoly::parse(&XY, "x - x^-1").expect("static")
}

fn v_xy() -> LaurentPoly {
    LaurentPoly::parse(&XY, "y - y^-1").expect("static")
}

/// One step of the `a_n, b_n, c_n` recursion behind the generating function.
#[derive(Clone, Debug, PartialEq)]
pub struct RecursionState {
    pub n: usize,
    pub a: LaurentPoly,
    pub b: LaurentPoly,
    pub c: LaurentPoly,
}

/// `1 - z^2 + z^4 - ... + (-z^2)^(n-1)`.
pub fn b_closed_form(n: usize) -> LaurentPoly {
    let mut b = LaurentPoly::zero(&[Z]);
    for k in 0..n {
        b = &b + &LaurentPoly::monomial(&[Z], [2 * k as i64, 0], sign(k as i64));
    }
    b
}

/// States `n = 1..=r`.
///
/// `b_n` is driven by the recurrence `b_n = (1 - z^2) b_{n-1} + z^2 b_{n-2}`
/// and compared against the closed form at each step; the closed form is
/// the reference, so a mismatch is an internal error.
pub fn recursion_states(r: usize) -> Result<Vec<RecursionState>> {
    check_r(r)?;
    let z = z_var();
    let z2 = &z * &z;
    let one_minus_z2 = z_poly(&[1, 0, -1]);
    let mut b = vec![LaurentPoly::zero(&[Z]), z_poly(&[1])];
    let mut c = vec![LaurentPoly::zero(&[Z]), LaurentPoly::zero(&[Z])];
    let mut out = Vec::with_capacity(r);
    for n in 1..=r {
        if n >= 2 {
            let bn = &(&one_minus_z2 * &b[n - 1]) + &(&z2 * &b[n - 2]);
            let cn = if n == 2 {
                z.clone()
            } else {
                let two_b = b[n - 2].scale(&BigInt::from(2));
                &(&z * &(&b[n - 1] - &two_b)) - &(&z2 * &(&c[n - 1] - &c[n - 2]))
            };
            b.push(bn);
            c.push(cn);
        }
        if b[n] != b_closed_form(n) {
            return Err(internal(format!("b_{n} recurrence disagrees with closed form")));
        }
        out.push(RecursionState {
            n,
            a: &b[n] - &(&z * &c[n]),
            b: b[n].clone(),
            c: c[n].clone(),
        });
    }
    Ok(out)
}

/// Conway polynomial of `J_r`, by the recursion.
pub fn nabla_j(r: usize) -> Result<LaurentPoly> {
    Ok(recursion_states(r)?.pop().expect("r >= 1").a)
}

/// Factor `1 - (T^2 - T) z^2` whose product over the `r`-th roots of unity
/// is `∇_{J_r}`.
pub fn nabla_j_factor() -> AuxPoly {
    let z2 = z_poly(&[0, 0, 1]);
    AuxPoly::from_terms(&z2, [(0, z_poly(&[1])), (1, z2.clone()), (2, -&z2)])
}

/// Conway polynomial of `J_r` as an exact product over roots of unity.
pub fn nabla_j_oracle(r: usize) -> Result<LaurentPoly> {
    check_r(r)?;
    roots_of_unity_product(&nabla_j_factor(), r)
}

/// `∇_{M_r} = z ∇_{J_r} + (-1)^(r+1) z^(r+2) L_{r+1}`.
pub fn nabla_m(r: usize) -> Result<LaurentPoly> {
    let r_i = r as i64;
    let nj = nabla_j(r)?;
    let tail = lucas(r_i + 1).shift([r_i + 2, 0], &sign(r_i + 1));
    Ok(&(&z_var() * &nj) + &tail)
}

/// Two-variable potential of `M_r` in closed form.
pub fn omega_mr(r: usize) -> Result<LaurentPoly> {
    let r_i = r as i64;
    let nj = substitute_in_xy(&nabla_j(r)?, 0)?;
    let bracket = &LaurentPoly::monomial(&XY, [r_i, 1], sign(r_i + 1))
        + &LaurentPoly::monomial(&XY, [-r_i, -1], 1);
    let tail = &(&u_xy().pow(r as u32) * &v_xy()) * &bracket;
    Ok(&nj + &tail)
}

/// Factor `1 + (x eta^2 T - x^-1 eta^-2 T^-1) u - u^2` of the cover formula.
pub fn omega_cover_factor() -> AuxPoly {
    let u = LaurentPoly::parse(&XETA, "x - x^-1").expect("static");
    let one = u.one_like();
    let c0 = &one - &(&u * &u);
    let c1 = &LaurentPoly::monomial(&XETA, [1, 2], 1) * &u;
    let cm1 = &LaurentPoly::monomial(&XETA, [-1, -2], -1) * &u;
    AuxPoly::from_terms(&u, [(0, c0), (1, c1), (-1, cm1)])
}

/// Product over the roots of unity, in `x` and `eta = y^(1/r)`.
pub fn omega_mr_oracle_eta(r: usize) -> Result<LaurentPoly> {
    check_r(r)?;
    roots_of_unity_product(&omega_cover_factor(), r)
}

/// The oracle product after `eta^r -> y`. Exponents of `eta` that are not
/// multiples of `r` would mean the product is not a function of `y`.
pub fn omega_mr_oracle(r: usize) -> Result<LaurentPoly> {
    let p = omega_mr_oracle_eta(r)?;
    let r_i = r as i64;
    let mut out = LaurentPoly::zero(&XY);
    for (e, c) in p.terms() {
        if e[1] % r_i != 0 {
            return Err(internal(format!(
                "eta exponent {} is not a multiple of {r}",
                e[1]
            )));
        }
        out = &out + &LaurentPoly::monomial(&XY, [e[0], e[1] / r_i], c.clone());
    }
    Ok(out)
}

/// Both sides of
/// `x^r y + (-1)^(r+1) x^-r y^-1 = (y - y^-1) F_{r+1}(u) + (x^-1 y + x y^-1) F_r(u)`.
pub fn cover_identity(r: usize) -> Result<(LaurentPoly, LaurentPoly)> {
    check_r(r)?;
    let r_i = r as i64;
    let lhs = &LaurentPoly::monomial(&XY, [r_i, 1], 1)
        + &LaurentPoly::monomial(&XY, [-r_i, -1], sign(r_i + 1));
    let w = LaurentPoly::parse(&XY, "x^-1 y + x y^-1").expect("static");
    let rhs = &(&v_xy() * &substitute_in_xy(&fibonacci(r_i + 1), 0)?)
        + &(&w * &substitute_in_xy(&fibonacci(r_i), 0)?);
    Ok((lhs, rhs))
}

/// Coefficients of `x^0..=x^n` in
/// `x/(1 + z^2(x - x^2)) · (1/(1-x) + 1/(1 + z^2 x) - 1)`.
pub fn generating_function_coeffs(n: usize) -> Vec<LaurentPoly> {
    let z2 = z_poly(&[0, 0, 1]);
    let mut d = vec![z_poly(&[1])];
    for k in 1..n {
        let mut next = -(&z2 * &d[k - 1]);
        if k >= 2 {
            next = &next + &(&z2 * &d[k - 2]);
        }
        d.push(next);
    }
    let e: Vec<LaurentPoly> = (0..n)
        .map(|k| {
            if k == 0 {
                z_poly(&[1])
            } else {
                &z_poly(&[1]) + &(-&z2).pow(k as u32)
            }
        })
        .collect();
    let mut out = vec![LaurentPoly::zero(&[Z]); n + 1];
    for (m, slot) in out.iter_mut().enumerate().skip(1) {
        for i in 0..m {
            *slot = &*slot + &(&d[i] * &e[m - 1 - i]);
        }
    }
    out
}

/// A knot and its Conway polynomial.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KnotData {
    pub name: String,
    pub nabla: LaurentPoly,
}

impl KnotData {
    pub fn new(name: &str, nabla: LaurentPoly) -> Result<Self> {
        let k = KnotData {
            name: name.to_string(),
            nabla,
        };
        k.validate()?;
        Ok(k)
    }

    pub fn unknot() -> Self {
        KnotData {
            name: "unknot".into(),
            nabla: z_poly(&[1]),
        }
    }

    pub fn trefoil() -> Self {
        KnotData {
            name: "trefoil".into(),
            nabla: z_poly(&[1, 0, 1]),
        }
    }

    pub fn figure_eight() -> Self {
        KnotData {
            name: "figure-eight".into(),
            nabla: z_poly(&[1, 0, -1]),
        }
    }

    /// `∇(0) = 1`, only even powers of `z`, polynomial in `z`.
    pub fn validate(&self) -> Result<()> {
        if self.nabla.vars() != [Z] {
            return Err(usage("knot Conway polynomials are written in z"));
        }
        if !self.nabla.constant_term().is_one() {
            return Err(usage(format!("{}: ∇(0) must be 1", self.name)));
        }
        if self.nabla.terms().any(|(e, _)| e[0] < 0 || e[0] % 2 != 0) {
            return Err(usage(format!("{}: ∇ must be an even polynomial", self.name)));
        }
        Ok(())
    }
}

/// A two-component link: its potential in `(x, y)`, linking number and the
/// Conway polynomials of both components.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinkData {
    pub name: String,
    pub lk: i64,
    pub omega: LaurentPoly,
    pub knots: [LaurentPoly; 2],
}

/// `(x^n - x^-n)/(x - x^-1)` in the ring of `proto` on variable `idx`.
fn quantum_integer(n: i64, vars: &[&str], idx: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero(vars);
    let k = n.abs();
    for j in 0..k {
        let mut e = [0, 0];
        e[idx] = -(k - 1) + 2 * j;
        out = &out + &LaurentPoly::monomial(vars, e, 1);
    }
    if n < 0 {
        -out
    } else {
        out
    }
}

impl LinkData {
    pub fn new(name: &str, lk: i64, omega: LaurentPoly, knots: [LaurentPoly; 2]) -> Result<Self> {
        let l = LinkData {
            name: name.to_string(),
            lk,
            omega,
            knots,
        };
        l.validate()?;
        Ok(l)
    }

    pub fn hopf() -> Self {
        LinkData {
            name: "hopf".into(),
            lk: 1,
            omega: LaurentPoly::one(&XY),
            knots: [z_poly(&[1]), z_poly(&[1])],
        }
    }

    /// `M_r = (J_r, B)`; `M_1` is the fake Mazur link.
    pub fn mazur_cover(r: usize) -> Result<Self> {
        Ok(LinkData {
            name: format!("M_{r}"),
            lk: 1,
            omega: omega_mr(r)?,
            knots: [nabla_j(r)?, z_poly(&[1])],
        })
    }

    /// Exchange the two components: `Ω(x, y) -> Ω(y, x)`.
    pub fn swapped(&self) -> Self {
        LinkData {
            name: format!("swap({})", self.name),
            lk: self.lk,
            omega: self.omega.swap_vars(),
            knots: [self.knots[1].clone(), self.knots[0].clone()],
        }
    }

    /// Reverse the orientation of the first component.
    pub fn reversed(&self) -> Self {
        LinkData {
            name: format!("rev({})", self.name),
            lk: -self.lk,
            omega: orientation_reverse_omega(self),
            knots: self.knots.clone(),
        }
    }

    /// Checks `Ω(1,1) = lk`, `Ω(x^-1, y^-1) = Ω(x, y)`, the Torres conditions on
    /// both components, and the knot normalizations.
    pub fn validate(&self) -> Result<()> {
        if self.omega.vars() != XY {
            return Err(usage("two-component potentials are written in (x, y)"));
        }
        for (i, k) in self.knots.iter().enumerate() {
            KnotData::new(&format!("{} component {}", self.name, i + 1), k.clone())?;
        }
        let one = BigInt::one();
        let at_one = self.omega.eval(&[one.clone(), one.clone()])?;
        if at_one != BigInt::from(self.lk) {
            return Err(usage(format!(
                "{}: Ω(1,1) = {at_one} but lk = {}",
                self.name, self.lk
            )));
        }
        if self.omega.invert_all() != self.omega {
            return Err(usage(format!("{}: symmetry Ω(x^-1,y^-1) = Ω(x,y) fails", self.name)));
        }
        for idx in 0..2 {
            let restricted = self.omega.specialize(1 - idx, &one)?;
            let name = XY[idx];
            let q = quantum_integer(self.lk, &[name], 0);
            let expect = &q * &substitute_u(&self.knots[idx], name)?;
            if restricted != expect {
                return Err(usage(format!(
                    "{}: Torres condition on component {} fails",
                    self.name,
                    idx + 1
                )));
            }
        }
        Ok(())
    }
}

/// Potential of the splice of `L = (K1, K)` and `L2 = (Q, Q1)` along `K` and
/// `Q`: `Ω_L(x, y^ν) Ω_{L2}(x^μ, y)`.
pub fn splice_omega(l: &LinkData, l2: &LinkData, mu: i64, nu: i64) -> Result<LaurentPoly> {
    let x = LaurentPoly::var(&XY, 0);
    let y = LaurentPoly::var(&XY, 1);
    let first = l.omega.compose(&[x.clone(), LaurentPoly::monomial(&XY, [0, nu], 1)])?;
    let second = l2.omega.compose(&[LaurentPoly::monomial(&XY, [mu, 0], 1), y])?;
    Ok(&first * &second)
}

/// The splice as link data, with `μ = lk(L)`, `ν = lk(L2)`. The spliced
/// component `Q` of `L2` must be unknotted.
pub fn splice(l: &LinkData, l2: &LinkData) -> Result<LinkData> {
    if !l2.knots[0].is_one() {
        return Err(usage("the first component of the second link must be unknotted"));
    }
    let omega = splice_omega(l, l2, l.lk, l2.lk)?;
    LinkData::new(
        &format!("splice({}, {})", l.name, l2.name),
        l.lk * l2.lk,
        omega,
        [l.knots[0].clone(), &l.knots[1] * &l2.knots[1]],
    )
}

/// `Ω_L(x, y) ∇_Q(y - y^-1)`.
pub fn connected_sum_omega(l: &LinkData, q: &KnotData) -> Result<LaurentPoly> {
    Ok(&l.omega * &substitute_in_xy(&q.nabla, 1)?)
}

/// `n` parallel pushoffs of the second component, all colored `y`:
/// `(x^l - x^-l)^(n-1) Ω_L(x, y^n)`.
pub fn pushoff_omega(l: &LinkData, n: u32) -> Result<LaurentPoly> {
    if n == 0 {
        return Err(usage("at least one pushoff is required"));
    }
    let lk = l.lk;
    let pre = &LaurentPoly::monomial(&XY, [lk, 0], 1) - &LaurentPoly::monomial(&XY, [-lk, 0], 1);
    let body = l.omega.compose(&[
        LaurentPoly::var(&XY, 0),
        LaurentPoly::monomial(&XY, [0, n as i64], 1),
    ])?;
    Ok(&pre.pow(n - 1) * &body)
}

/// `-Ω_L(x^-1, y)`.
pub fn orientation_reverse_omega(l: &LinkData) -> LaurentPoly {
    -l.omega.invert_var(0)
}

/// Potential of `(K1, K, -K_+)` colored `(x, y, y)`:
/// `-(x^l - x^-l)^2 Ω_{K1}(x)` with `Ω_{K1}(x) = ∇_{K1}(u)/u`.
pub fn annulus_omega(l: &LinkData) -> Result<LaurentPoly> {
    let lk = l.lk;
    let diff = &LaurentPoly::monomial(&["x"], [lk, 0], 1) - &LaurentPoly::monomial(&["x"], [-lk, 0], 1);
    let q = quantum_integer(lk, &["x"], 0);
    Ok(-(&(&diff * &q) * &substitute_u(&l.knots[0], "x")?))
}

/// `F_n(v) L_{1-n}(v) / v` with a parity flag.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinkHomotopyDelta {
    pub n: i64,
    pub delta: LaurentPoly,
    /// Whether only even powers of `v` occur.
    pub even_in_v: bool,
}

pub fn link_homotopy_delta(n: i64) -> Result<LinkHomotopyDelta> {
    if n % 2 != 0 {
        return Err(usage("link_homotopy_delta needs an even n"));
    }
    let prod = (&fibonacci(n) * &lucas(1 - n)).rename(&["v"]);
    let v = LaurentPoly::var(&["v"], 0);
    let delta = prod
        .div_exact(&v)
        .filter(|q| q.valuation().is_none_or(|k| k >= 0))
        .ok_or_else(|| internal("F_n L_(1-n) is not divisible by v"))?;
    let even_in_v = delta.terms().all(|(e, _)| e[0] % 2 == 0);
    Ok(LinkHomotopyDelta {
        n,
        delta,
        even_in_v,
    })
}

/// `substitute_u(L_{2n}) = x^(2n) + x^(-2n)`.
pub fn lucas_even_identity(n: u32) -> Result<bool> {
    let lhs = substitute_u(&lucas(2 * n as i64), "x")?;
    let k = 2 * n as i64;
    let rhs = &LaurentPoly::monomial(&["x"], [k, 0], 1) + &LaurentPoly::monomial(&["x"], [-k, 0], 1);
    Ok(lhs == rhs)
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Compares `∏_{j<r} P(x, ζ_r^j)` with `(∏_{k<m} P(x, ζ_m^k))^(p^n)` modulo
/// `p`, for `r = p^n m`. The second variable of `P` plays the role of `T`.
pub fn congruence_check(p_poly: &LaurentPoly, r: u64, p: u64, n: u32, m: u64) -> Result<bool> {
    if !is_prime(p) || n == 0 || m == 0 || m.gcd(&p) != 1 {
        return Err(usage("need a prime p, n > 0 and m coprime to p"));
    }
    let pn = p
        .checked_pow(n)
        .filter(|pn| pn.checked_mul(m) == Some(r))
        .ok_or_else(|| usage(format!("{r} is not {p}^{n} * {m}")))?;
    let g = AuxPoly::from_bivariate(p_poly, 1)?;
    let lhs = roots_of_unity_product(&g, r as usize)?;
    let base = roots_of_unity_product(&g, m as usize)?;
    let rhs = base.pow(pn as u32);
    let diff = &lhs - &rhs;
    Ok(diff.reduce_mod(&BigInt::from(p)).is_zero())
}

/// `Ω_M` derived from the relations: one crossing change turns `M` into the
/// Hopf link `H`, leaving a three-component link `L` with
/// `Ω_L = -(y - y^-1) Ω_{H_2}` and `Ω_{H_2} + Ω_U = (xy + x^-1 y^-1) Ω_H`.
pub fn mazur_from_relations() -> LaurentPoly {
    let omega_h = LaurentPoly::one(&XY);
    let omega_unlink = LaurentPoly::zero(&XY);
    let wbar = LaurentPoly::parse(&XY, "x y + x^-1 y^-1").expect("static");
    let omega_h2 = &(&wbar * &omega_h) - &omega_unlink;
    let omega_l = -(&v_xy() * &omega_h2);
    &omega_h - &(&u_xy() * &omega_l)
}

/// Checks used by the family computations; returns the first failure.
pub fn family_facts(r: usize) -> Result<()> {
    let nj = nabla_j(r)?;
    let nm = nabla_m(r)?;
    let r_i = r as i64;
    if nj.degree() != Some(2 * r_i - 2) || !nj.constant_term().is_one() {
        return Err(internal(format!("∇_J_{r} has the wrong degree or constant term")));
    }
    if nm.degree() != Some(2 * r_i + 3) || nm == &z_var() * &nj {
        return Err(internal(format!("∇_M_{r} has the wrong shape")));
    }
    let om = omega_mr(r)?;
    let one = BigInt::one();
    if om.eval(&[one.clone(), one.clone()])? != one {
        return Err(internal(format!("Ω_M_{r}(1,1) != 1")));
    }
    if om.specialize(1, &one)? != substitute_u(&nj, "x")? {
        return Err(internal(format!("Ω_M_{r}(x,1) != ∇_J(x - x^-1)")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(s: &str) -> LaurentPoly {
        LaurentPoly::parse(&[Z], s).unwrap()
    }

    #[test]
    fn fibonacci_and_lucas_values() {
        assert!(fibonacci(0).is_zero());
        assert_eq!(fibonacci(1), z("1"));
        assert_eq!(lucas(0), z("2"));
        assert_eq!(lucas(1), z("z"));
        assert_eq!(fibonacci(4), z("z^3 + 2z"));
        assert_eq!(lucas(3), z("z^3 + 3z"));
        assert_eq!(fibonacci(-3), z("z^2 + 1"));
        assert_eq!(lucas(-1), z("-z"));
    }

    #[test]
    fn small_family_members() {
        assert_eq!(nabla_j(1).unwrap(), z("1"));
        assert_eq!(nabla_j(2).unwrap(), z("1 - 2z^2"));
        assert_eq!(nabla_j(3).unwrap(), z("1 + 3z^4"));
        assert_eq!(nabla_m(1).unwrap(), z("z + 2z^3 + z^5"));
        assert_eq!(nabla_m(2).unwrap(), z("z - 2z^3 - 3z^5 - z^7"));
        assert!(nabla_j(0).is_err());
    }

    #[test]
    fn recursion_initial_values() {
        let s = recursion_states(2).unwrap();
        assert_eq!(s[0].b, z("1"));
        assert!(s[0].c.is_zero());
        assert_eq!(s[1].b, z("1 - z^2"));
        assert_eq!(s[1].c, z("z"));
    }

    #[test]
    fn oracle_small() {
        assert_eq!(nabla_j_oracle(1).unwrap(), z("1"));
        assert_eq!(nabla_j_oracle(2).unwrap(), z("1 - 2z^2"));
        assert_eq!(nabla_j_oracle(3).unwrap(), z("1 + 3z^4"));
    }

    #[test]
    fn mazur_link_closed_form() {
        let expect = LaurentPoly::parse(&XY, "1").unwrap()
            + &(&(&LaurentPoly::parse(&XY, "x y + x^-1 y^-1").unwrap() * &u_xy()) * &v_xy());
        assert_eq!(omega_mr(1).unwrap(), expect);
        assert_eq!(mazur_from_relations(), expect);
        assert_eq!(omega_mr_oracle(1).unwrap(), expect);
    }

    #[test]
    fn splice_with_hopf_is_neutral() {
        let m = LinkData::mazur_cover(2).unwrap();
        assert_eq!(splice_omega(&LinkData::hopf(), &m, 1, 1).unwrap(), m.omega);
        assert_eq!(splice_omega(&m, &LinkData::hopf(), 1, 1).unwrap(), m.omega);
    }

    #[test]
    fn reversal() {
        let h = LinkData::hopf();
        assert_eq!(orientation_reverse_omega(&h), LaurentPoly::constant(&XY, -1));
        let m = LinkData::mazur_cover(1).unwrap();
        let rev = m.reversed();
        rev.validate().unwrap();
        assert_eq!(rev.reversed().omega, m.omega);
    }

    #[test]
    fn annulus_cases() {
        let h = LinkData::hopf();
        assert_eq!(annulus_omega(&h).unwrap(), LaurentPoly::parse(&["x"], "-x + x^-1").unwrap());
    }

    #[test]
    fn link_homotopy_pins() {
        let d0 = link_homotopy_delta(0).unwrap();
        assert!(d0.delta.is_zero() && d0.even_in_v);
        let d2 = link_homotopy_delta(2).unwrap();
        assert_eq!(d2.delta, LaurentPoly::parse(&["v"], "-v").unwrap());
        assert!(!d2.even_in_v);
        let dm2 = link_homotopy_delta(-2).unwrap();
        assert_eq!(dm2.delta, LaurentPoly::parse(&["v"], "-v^3 - 3v").unwrap());
        assert!(link_homotopy_delta(3).is_err());
    }

    #[test]
    fn congruences() {
        let p = LaurentPoly::parse(&["z", "T"], "1 - T^2 z^2 + T z^2").unwrap();
        assert!(congruence_check(&p, 2, 2, 1, 1).unwrap());
        assert!(congruence_check(&p, 4, 2, 2, 1).unwrap());
        assert!(congruence_check(&p, 6, 3, 1, 2).unwrap());
        assert!(congruence_check(&p, 6, 2, 2, 1).is_err());
        assert!(congruence_check(&p, 4, 4, 1, 1).is_err());
    }
}
