//! Finitely presented modules over Laurent rings, the module of the wild
//! Fox–Artin trefoil, and localization at `1 - t`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::linalg::rank;
use crate::poly::LaurentPoly;

const T: [&str; 1] = ["t"];
const ST: [&str; 2] = ["s", "t"];

fn t(s: &str) -> LaurentPoly {
    LaurentPoly::parse(&T, s).expect("static")
}

fn st(s: &str) -> LaurentPoly {
    LaurentPoly::parse(&ST, s).expect("static")
}

/// Which coefficient ring a presentation lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RingTag {
    /// `Z[t^±1]`
    #[serde(rename = "Z[t^]")]
    LaurentT,
    /// `Z[s^±1, t^±1]`
    #[serde(rename = "Z[s^,t^]")]
    LaurentST,
    /// `Z[t^±1][1/(1-t)]`
    #[serde(rename = "Z[t^,1/(1-t)]")]
    Localized,
}

impl RingTag {
    pub fn vars(self) -> &'static [&'static str] {
        match self {
            RingTag::LaurentT | RingTag::Localized => &T,
            RingTag::LaurentST => &ST,
        }
    }
}

/// Generators and a relation matrix (one row per relation, one column per
/// generator).
#[derive(Clone, Debug, PartialEq)]
pub struct ModulePresentation {
    pub ring: RingTag,
    pub gens: Vec<String>,
    pub rels: Vec<Vec<LaurentPoly>>,
}

impl ModulePresentation {
    pub fn new(ring: RingTag, gens: Vec<String>, rels: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        for (i, row) in rels.iter().enumerate() {
            if row.len() != gens.len() {
                return Err(usage(format!(
                    "relation {i} has {} entries for {} generators",
                    row.len(),
                    gens.len()
                )));
            }
            if row.iter().any(|p| p.vars() != ring.vars()) {
                return Err(usage(format!("relation {i} is not over {:?}", ring.vars())));
            }
        }
        Ok(ModulePresentation { ring, gens, rels })
    }

    /// `<a | Δ a>`.
    pub fn cyclic(delta: LaurentPoly) -> Result<Self> {
        Self::new(RingTag::LaurentT, vec!["a".into()], vec![vec![delta]])
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PresentationJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let vars = raw.ring.vars();
        let mut rels = Vec::new();
        for row in raw.rels {
            let mut out = Vec::new();
            for entry in row {
                out.push(entry.into_poly(vars)?);
            }
            rels.push(out);
        }
        Self::new(raw.ring, raw.gens, rels)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ring": self.ring,
            "gens": self.gens,
            "rels": self.rels.iter()
                .map(|row| row.iter().map(|p| p.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

#[derive(Deserialize)]
struct PresentationJson {
    ring: RingTag,
    gens: Vec<String>,
    rels: Vec<Vec<EntryJson>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum EntryJson {
    Text(String),
    Terms(Vec<TermJson>),
}

#[derive(Deserialize)]
struct TermJson {
    e: ExpJson,
    c: CoeffJson,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ExpJson {
    One(i64),
    Many(Vec<i64>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoeffJson {
    Int(i64),
    Text(String),
}

impl EntryJson {
    fn into_poly(self, vars: &[&str]) -> Result<LaurentPoly> {
        match self {
            EntryJson::Text(s) => LaurentPoly::parse(vars, &s),
            EntryJson::Terms(terms) => {
                let mut out = Vec::new();
                for term in terms {
                    let e = match term.e {
                        ExpJson::One(k) => vec![k],
                        ExpJson::Many(v) => v,
                    };
                    if e.len() != vars.len() {
                        return Err(Error::Parse(format!(
                            "exponent {e:?} does not match ring variables {vars:?}"
                        )));
                    }
                    let c = match term.c {
                        CoeffJson::Int(c) => BigInt::from(c),
                        CoeffJson::Text(s) => s
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))?,
                    };
                    out.push(([e[0], e.get(1).copied().unwrap_or(0)], c));
                }
                Ok(LaurentPoly::from_terms(vars, out))
            }
        }
    }
}

/// Torsion over `Q(t)`: the relation matrix has full column rank.
pub fn torsion_decide(pres: &ModulePresentation) -> Result<bool> {
    if pres.gens.is_empty() {
        return Ok(true);
    }
    if pres.rels.is_empty() {
        return Ok(false);
    }
    let proto = LaurentPoly::one(pres.ring.vars());
    Ok(rank(pres.rels.clone(), &proto)? == pres.gens.len())
}

/// For `<a | Δ a>` over `Z[t^±1]`: multiplication by `1 - t` is bijective iff
/// `Res(1 - t, Δ) = ±Δ(1) = ±1`.
pub fn one_minus_t_invertible(pres: &ModulePresentation) -> Result<bool> {
    if pres.ring != RingTag::LaurentT || pres.gens.len() != 1 || pres.rels.len() != 1 {
        return Err(usage("invertibility of 1 - t is decided for cyclic presentations only"));
    }
    let at_one = pres.rels[0][0].eval(&[BigInt::one()])?;
    Ok(at_one.abs().is_one())
}

/// `p / (1 - t)^k` in `Z[t^±1][1/(1-t)]`, with `p` not divisible by `1 - t`
/// unless `k = 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct LocalElem {
    num: LaurentPoly,
    k: u32,
}

fn one_minus_t() -> LaurentPoly {
    t("1 - t")
}

impl LocalElem {
    pub fn new(num: LaurentPoly, k: u32) -> Result<Self> {
        if num.vars() != T {
            return Err(usage("localized elements are written in t"));
        }
        let mut e = LocalElem { num, k };
        e.normalize();
        Ok(e)
    }

    pub fn from_poly(p: LaurentPoly) -> Result<Self> {
        Self::new(p, 0)
    }

    pub fn zero() -> Self {
        LocalElem {
            num: LaurentPoly::zero(&T),
            k: 0,
        }
    }

    pub fn one() -> Self {
        LocalElem {
            num: LaurentPoly::one(&T),
            k: 0,
        }
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.k = 0;
            return;
        }
        let d = one_minus_t();
        while self.k > 0 {
            match self.num.div_exact(&d) {
                Some(q) => {
                    self.num = q;
                    self.k -= 1;
                }
                None => break,
            }
        }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator_power(&self) -> u32 {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn lift(&self, k: u32) -> LaurentPoly {
        &self.num * &one_minus_t().pow(k - self.k)
    }

    pub fn add(&self, o: &Self) -> Self {
        let k = self.k.max(o.k);
        let mut e = LocalElem {
            num: &self.lift(k) + &o.lift(k),
            k,
        };
        e.normalize();
        e
    }

    pub fn neg(&self) -> Self {
        LocalElem {
            num: -&self.num,
            k: self.k,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut e = LocalElem {
            num: &self.num * &o.num,
            k: self.k + o.k,
        };
        e.normalize();
        e
    }

    /// Units are `±t^a (1 - t)^b`.
    pub fn is_unit(&self) -> bool {
        self.unit_parts().is_some()
    }

    /// `(±t^a, b)` with `num = ±t^a (1 - t)^b`.
    fn unit_parts(&self) -> Option<(LaurentPoly, u32)> {
        if self.num.is_zero() {
            return None;
        }
        let d = one_minus_t();
        let mut p = self.num.clone();
        let mut b = 0;
        while let Some(q) = p.div_exact(&d) {
            p = q;
            b += 1;
        }
        (p.len() == 1 && p.terms().next().expect("one term").1.abs().is_one()).then_some((p, b))
    }

    pub fn inverse(&self) -> Result<Self> {
        let (mono, b) = self
            .unit_parts()
            .ok_or_else(|| usage(format!("{self} is not a unit")))?;
        let inv_mono = mono.monomial_inverse().expect("monomial");
        Self::new(&inv_mono * &one_minus_t().pow(self.k), b)
    }
}

impl fmt::Display for LocalElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            0 => write!(f, "{}", self.num),
            1 => write!(f, "({}) / (1 - t)", self.num),
            k => write!(f, "({}) / (1 - t)^{k}", self.num),
        }
    }
}

impl fmt::Debug for LocalElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A vector in the free module on `x_0, x_1`.
pub type LocalVec = [LocalElem; 2];

/// The `s`-action on the basis `x_0, x_1`; column `j` is `s · x_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompanionAction {
    pub matrix: [[LocalElem; 2]; 2],
}

impl CompanionAction {
    pub fn apply(&self, v: &LocalVec) -> LocalVec {
        let m = &self.matrix;
        [
            m[0][0].mul(&v[0]).add(&m[0][1].mul(&v[1])),
            m[1][0].mul(&v[0]).add(&m[1][1].mul(&v[1])),
        ]
    }

    pub fn determinant(&self) -> LocalElem {
        let m = &self.matrix;
        m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0]))
    }

    pub fn compose(&self, o: &Self) -> Self {
        let (a, b) = (&self.matrix, &o.matrix);
        let e = |i: usize, j: usize| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]));
        CompanionAction {
            matrix: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]],
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        let d = self.determinant().inverse()?;
        let m = &self.matrix;
        Ok(CompanionAction {
            matrix: [
                [m[1][1].mul(&d), m[0][1].neg().mul(&d)],
                [m[1][0].neg().mul(&d), m[0][0].mul(&d)],
            ],
        })
    }

    pub fn is_identity(&self) -> bool {
        let m = &self.matrix;
        m[0][0] == LocalElem::one()
            && m[1][1] == LocalElem::one()
            && m[0][1].is_zero()
            && m[1][0].is_zero()
    }
}

/// `2t + 2t^-1 - 3`.
pub fn wild_constant() -> LaurentPoly {
    t("2t + 2t^-1 - 3")
}

/// From `(1 - t^-1) x_{i+1} + (1 - t) x_{i-1} + c x_i = 0`, solving for
/// `x_{i+1}` divides by `1 - t^-1 = -t^-1 (1 - t)`:
/// `x_{i+1} = t x_{i-1} + t c/(1 - t) x_i`.
pub fn wild_module_companion() -> CompanionAction {
    let l = |p: LaurentPoly, k| LocalElem::new(p, k).expect("t-polynomial");
    CompanionAction {
        matrix: [
            [LocalElem::zero(), l(t("t"), 0)],
            [LocalElem::one(), l(&t("t") * &wild_constant(), 1)],
        ],
    }
}

/// `s^k x_0` by rewriting with the relation one step at a time, in either
/// direction, without the companion matrix.
pub fn wild_orbit_by_rewriting(k: i64) -> Result<LocalVec> {
    let a = LocalElem::from_poly(t("1 - t^-1"))?;
    let b = LocalElem::from_poly(t("1 - t"))?;
    let c = LocalElem::from_poly(wild_constant())?;
    let e0 = [LocalElem::one(), LocalElem::zero()];
    let e1 = [LocalElem::zero(), LocalElem::one()];
    let comb = |p: &LocalElem, u: &LocalVec, q: &LocalElem, v: &LocalVec| -> LocalVec {
        [
            p.mul(&u[0]).add(&q.mul(&v[0])),
            p.mul(&u[1]).add(&q.mul(&v[1])),
        ]
    };
    if k >= 0 {
        // x_{i+1} = -a^-1 (b x_{i-1} + c x_i)
        let f = a.inverse()?.neg();
        let (mut prev, mut cur) = (e0, e1);
        if k == 0 {
            return Ok(prev);
        }
        for _ in 1..k {
            let next = comb(&f.mul(&b), &prev, &f.mul(&c), &cur);
            prev = cur;
            cur = next;
        }
        Ok(cur)
    } else {
        // x_{i-1} = -b^-1 (a x_{i+1} + c x_i)
        let f = b.inverse()?.neg();
        let (mut nxt, mut cur) = (e1, e0);
        for _ in 0..-k {
            let before = comb(&f.mul(&a), &nxt, &f.mul(&c), &cur);
            nxt = cur;
            cur = before;
        }
        Ok(cur)
    }
}

/// `p · x_0` in the free localized model is `(p, 0)`; nonzero for `p ≠ 0`.
pub fn annihilator_trivial_check(p: &LaurentPoly) -> Result<bool> {
    if p.is_zero() {
        return Err(usage("the annihilator check needs p ≠ 0"));
    }
    let pe = LocalElem::from_poly(p.clone())?;
    let image = [pe.mul(&LocalElem::one()), pe.mul(&LocalElem::zero())];
    Ok(!(image[0].is_zero() && image[1].is_zero()))
}

/// A linear form `c_α α + c_β β` over `Z[s^±1, t^±1]`.
pub type Form = [LaurentPoly; 2];

fn form(a: &str, b: &str) -> Form {
    [st(a), st(b)]
}

fn form_add(u: &Form, v: &Form) -> Form {
    [&u[0] + &v[0], &u[1] + &v[1]]
}

fn form_scale(c: &LaurentPoly, u: &Form) -> Form {
    [c * &u[0], c * &u[1]]
}

/// The four pushoff classes in terms of `α, β`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeifertData {
    pub a_plus: Form,
    pub a_minus: Form,
    pub b_plus: Form,
    pub b_minus: Form,
}

/// Raw pushoffs `a+ = α`, `a- = -γ`, `b+ = β + γ - s^-1 β`, `b- = β - δ`
/// with `γ = β - α`, `δ = (s - 1) β` substituted.
pub fn seifert_pushoffs() -> SeifertData {
    let gamma = form("-1", "1");
    let delta = form("0", "s - 1");
    let beta = form("0", "1");
    let minus = |u: &Form| form_scale(&st("-1"), u);
    SeifertData {
        a_plus: form("1", "0"),
        a_minus: minus(&gamma),
        b_plus: form_add(&form_add(&beta, &gamma), &form("0", "-s^-1")),
        b_minus: form_add(&beta, &minus(&delta)),
    }
}

/// Relations `a- - t a+` and `b- - t b+` as rows over `Z[s^±1, t^±1]`.
pub fn wild_presentation() -> ModulePresentation {
    let d = seifert_pushoffs();
    let tt = st("t");
    let rel = |minus: &Form, plus: &Form| -> Vec<LaurentPoly> {
        let r = form_add(minus, &form_scale(&-&tt, plus));
        r.to_vec()
    };
    ModulePresentation::new(
        RingTag::LaurentST,
        vec!["alpha".into(), "beta".into()],
        vec![rel(&d.a_minus, &d.a_plus), rel(&d.b_minus, &d.b_plus)],
    )
    .expect("well formed")
}

/// Outcome of the pushoff bookkeeping checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeifertCheck {
    pub eliminated_forms_match: bool,
    pub presentation_matches: bool,
}

pub fn seifert_cycle_relations_check() -> SeifertCheck {
    let d = seifert_pushoffs();
    let eliminated_forms_match = d.a_plus == form("1", "0")
        && d.a_minus == form("1", "-1")
        && d.b_plus == form("-1", "2 - s^-1")
        && d.b_minus == form("0", "2 - s");
    // (α - β) = t α  and  (2 - s) β = t (2 - s^-1) β - t α
    let expected = vec![
        vec![st("1 - t"), st("-1")],
        vec![st("t"), st("2 - s - 2t + t s^-1")],
    ];
    SeifertCheck {
        eliminated_forms_match,
        presentation_matches: wild_presentation().rels == expected,
    }
}

/// The single-relator presentation and how it was reached.
#[derive(Clone, Debug, PartialEq)]
pub struct WildReduction {
    pub steps: Vec<String>,
    /// `β = sub · α`.
    pub substitution: LaurentPoly,
    /// The relator on `α`.
    pub relator: LaurentPoly,
    /// `relator · e_α = c_1 R_1 + c_2 R_2` in the two-generator presentation.
    pub combination: [LaurentPoly; 2],
    pub presentation: ModulePresentation,
}

/// `(1 - t^-1) s + (1 - t) s^-1 + 2t + 2t^-1 - 3`.
pub fn displayed_relator() -> LaurentPoly {
    let a = &st("s") * &st("1 - t^-1");
    let b = &st("s^-1") * &st("1 - t");
    &(&a + &b) + &st("2t + 2t^-1 - 3")
}

pub fn presentation_reduce_wild() -> Result<WildReduction> {
    let pres = wild_presentation();
    let (r1, r2) = (&pres.rels[0], &pres.rels[1]);
    let mut steps = Vec::new();
    // R1 = a α + b β with b a unit: β = -a/b α
    let b_inv = r1[1]
        .monomial_inverse()
        .ok_or_else(|| usage("first relation cannot be solved for beta"))?;
    let substitution = -(&r1[0] * &b_inv);
    steps.push(format!("relation 1: beta = ({substitution}) alpha"));
    let substituted = &r2[0] + &(&r2[1] * &substitution);
    steps.push(format!("relation 2 with beta substituted: ({substituted}) alpha = 0"));
    let t_inv = st("t^-1");
    let relator = &substituted * &t_inv;
    steps.push(format!("divide by t: ({relator}) alpha = 0"));
    // the β-column cancels: c1 · R1_β + c2 · R2_β = 0
    let c1 = &(&r2[1] * &(-&b_inv)) * &t_inv;
    let c2 = t_inv.clone();
    steps.push(format!("combination: ({c1}) R1 + ({c2}) R2"));
    let presentation = ModulePresentation::new(
        RingTag::LaurentST,
        vec!["alpha".into()],
        vec![vec![relator.clone()]],
    )?;
    Ok(WildReduction {
        steps,
        substitution,
        relator,
        combination: [c1, c2],
        presentation,
    })
}
