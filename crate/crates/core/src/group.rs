//! Normal forms in the discrete Heisenberg group `H`, the semidirect product
//! `G = H ⋊_φ Z`, and the free product `Z/3 * Z/2` that the trefoil group
//! surjects onto.

use std::fmt;

use serde::Serialize;

use crate::error::{usage, Error, Result};

/// `x^l y^m [y,x]^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct HeisElement {
    pub l: i64,
    pub m: i64,
    pub n: i64,
}

impl HeisElement {
    pub const fn new(l: i64, m: i64, n: i64) -> Self {
        HeisElement { l, m, n }
    }

    pub const fn identity() -> Self {
        Self::new(0, 0, 0)
    }

    pub const fn x() -> Self {
        Self::new(1, 0, 0)
    }

    pub const fn y() -> Self {
        Self::new(0, 1, 0)
    }

    /// `[y, x]`, which is central.
    pub const fn commutator() -> Self {
        Self::new(0, 0, 1)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.l + o.l, self.m + o.m, self.n + o.n + self.m * o.l)
    }

    pub fn inv(&self) -> Self {
        Self::new(-self.l, -self.m, -self.n + self.l * self.m)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inv() } else { *self };
        (0..k.abs()).fold(Self::identity(), |acc, _| acc.mul(&base))
    }

    /// `φ(x) = y^-1`, `φ(y) = yx`.
    pub fn phi(&self) -> Self {
        let HeisElement { l, m, n } = *self;
        Self::new(m, m - l, n - l * m + m * (m + 1) / 2)
    }

    /// `φ^-1(x) = xy`, `φ^-1(y) = x^-1`.
    pub fn phi_inv(&self) -> Self {
        let HeisElement { l, m, n } = *self;
        Self::new(l - m, l, n + l * (l - 1) / 2 - l * m)
    }

    pub fn phi_pow(&self, k: i64) -> Self {
        let mut h = *self;
        for _ in 0..k.abs() {
            h = if k > 0 { h.phi() } else { h.phi_inv() };
        }
        h
    }
}

impl fmt::Display for HeisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{} y^{} [y,x]^{}", self.l, self.m, self.n)
    }
}

/// `t^k h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct GElement {
    pub k: i64,
    pub h: HeisElement,
}

impl GElement {
    pub const fn new(k: i64, h: HeisElement) -> Self {
        GElement { k, h }
    }

    pub const fn identity() -> Self {
        Self::new(0, HeisElement::identity())
    }

    pub const fn t() -> Self {
        Self::new(1, HeisElement::identity())
    }

    pub const fn heis(h: HeisElement) -> Self {
        Self::new(0, h)
    }

    /// `t^k h · t^l h' = t^(k+l) φ^l(h) h'`.
    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.k + o.k, self.h.phi_pow(o.k).mul(&o.h))
    }

    pub fn inv(&self) -> Self {
        // (t^k h)^-1 = h^-1 t^-k = t^-k φ^-k(h^-1)
        Self::new(-self.k, self.h.inv().phi_pow(-self.k))
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { *self };
        (0..e.abs()).fold(Self::identity(), |acc, _| acc.mul(&base))
    }

    /// `a^g = g^-1 a g`.
    pub fn conj(&self, g: &Self) -> Self {
        g.inv().mul(self).mul(g)
    }
}

impl fmt::Display for GElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^{} {}", self.k, self.h)
    }
}

/// Closed form of `t^g` for `g = t^k x^l y^m [y,x]^n`:
/// `t x^(l-m) y^l [y,x]^(l(l-m) + m(m-1)/2)`, independent of `k` and `n`.
pub fn t_conjugate_closed_form(g: &GElement) -> GElement {
    let (l, m) = (g.h.l, g.h.m);
    GElement::new(1, HeisElement::new(l - m, l, l * (l - m) + m * (m - 1) / 2))
}

/// Why `t` and `txy` are not conjugate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonConjugacyWitness {
    /// The equations `l - m = 1`, `l = 1`, `l(l-m) + m(m-1)/2 = 0`.
    pub equations: Vec<String>,
    /// `(l, m)` forced by the two linear equations.
    pub forced: (i64, i64),
    /// Value of the third left-hand side at the forced point (nonzero).
    pub residual: i64,
    pub search_bound: i64,
    /// Conjugators found in the box (empty).
    pub found: Vec<GElement>,
}

/// Every `g` with `|k|, |l|, |m|, |n| ≤ bound` and `k` in `ks` with `a^g = b`.
pub fn search_conjugators(
    a: &GElement,
    b: &GElement,
    bound: i64,
    ks: impl IntoIterator<Item = i64>,
) -> Vec<GElement> {
    let mut out = Vec::new();
    for k in ks {
        for l in -bound..=bound {
            for m in -bound..=bound {
                for n in -bound..=bound {
                    let g = GElement::new(k, HeisElement::new(l, m, n));
                    if a.conj(&g) == *b {
                        out.push(g);
                    }
                }
            }
        }
    }
    out
}

/// `txy` as an element of `G`.
pub fn txy() -> GElement {
    GElement::new(1, HeisElement::x().mul(&HeisElement::y()))
}

/// The two linear equations fix `(l, m) = (1, 0)`; the quadratic one then
/// reads `1 = 0`. The box search is done sequentially here.
pub fn conj_t_vs_txy(bound: i64) -> NonConjugacyWitness {
    let target = txy();
    // l - m = target.l and l = target.m
    let l = target.h.m;
    let m = l - target.h.l;
    let residual = l * (l - m) + m * (m - 1) / 2 - target.h.n;
    NonConjugacyWitness {
        equations: vec![
            "l - m = 1".into(),
            "l = 1".into(),
            "l(l - m) + m(m - 1)/2 = 0".into(),
        ],
        forced: (l, m),
        residual,
        search_bound: bound,
        found: search_conjugators(&GElement::t(), &target, bound, -bound..=bound),
    }
}

/// Abelianization data of `φ` on `H/H' = Z^2` (columns are images of `x`, `y`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianizationCheck {
    pub phi_bar: [[i64; 2]; 2],
    pub det_phi_bar: i64,
    pub det_phi_bar_minus_id: i64,
    pub order: u32,
}

fn mat_mul(a: &[[i64; 2]; 2], b: &[[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

pub fn abelianization_check() -> AbelianizationCheck {
    let ix = HeisElement::x().phi();
    let iy = HeisElement::y().phi();
    let phi_bar = [[ix.l, iy.l], [ix.m, iy.m]];
    let det = |a: &[[i64; 2]; 2]| a[0][0] * a[1][1] - a[0][1] * a[1][0];
    let minus = [
        [phi_bar[0][0] - 1, phi_bar[0][1]],
        [phi_bar[1][0], phi_bar[1][1] - 1],
    ];
    let id = [[1, 0], [0, 1]];
    let mut p = phi_bar;
    let mut order = 1;
    while p != id && order < 100 {
        p = mat_mul(&p, &phi_bar);
        order += 1;
    }
    AbelianizationCheck {
        phi_bar,
        det_phi_bar: det(&phi_bar),
        det_phi_bar_minus_id: det(&minus),
        order,
    }
}

/// A word in named generators with integer exponents, freely reduced.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Word {
    letters: Vec<(char, i64)>,
}

impl Word {
    pub fn letters(&self) -> &[(char, i64)] {
        &self.letters
    }

    pub fn push(&mut self, g: char, e: i64) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push((g, e));
    }

    pub fn mul(&self, o: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &o.letters {
            w.push(g, e);
        }
        w
    }

    pub fn inv(&self) -> Word {
        let mut w = Word::default();
        for &(g, e) in self.letters.iter().rev() {
            w.push(g, -e);
        }
        w
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inv() } else { self.clone() };
        (0..k.abs()).fold(Word::default(), |acc, _| acc.mul(&base))
    }

    /// Parse `x y^-1 (xy)^2 [x, y] t^3`. Generators are single letters from
    /// `x, y, p, q, r, t`.
    pub fn parse(text: &str) -> Result<Word> {
        let mut p = WordParser {
            s: text.as_bytes(),
            pos: 0,
        };
        let w = p.product()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("unexpected character"));
        }
        Ok(w)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, (g, e)) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

struct WordParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl WordParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at position {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && (self.s[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.s.get(self.pos).map(|&b| b as char)
    }

    fn product(&mut self) -> Result<Word> {
        let mut w = Word::default();
        while let Some(c) = self.peek() {
            if c == ')' || c == ']' || c == ',' {
                break;
            }
            let f = self.factor()?;
            w = w.mul(&f);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word> {
        let base = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.product()?;
                self.expect(')')?;
                w
            }
            Some('[') => {
                self.pos += 1;
                let a = self.product()?;
                self.expect(',')?;
                let b = self.product()?;
                self.expect(']')?;
                a.inv().mul(&b.inv()).mul(&a).mul(&b)
            }
            Some(c) if "xypqrt".contains(c) => {
                self.pos += 1;
                let mut w = Word::default();
                w.push(c, 1);
                w
            }
            Some('1') => {
                self.pos += 1;
                Word::default()
            }
            _ => return Err(self.err("expected a generator, '(' or '['")),
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.exponent()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64> {
        self.skip_ws();
        let braced = match self.s.get(self.pos) {
            Some(b'{') | Some(b'(') => {
                self.pos += 1;
                true
            }
            _ => false,
        };
        self.skip_ws();
        let start = self.pos;
        if matches!(self.s.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
        let e = text.parse().map_err(|_| self.err("bad exponent"))?;
        if braced {
            self.skip_ws();
            match self.s.get(self.pos) {
                Some(b'}') | Some(b')') => self.pos += 1,
                _ => return Err(self.err("unclosed exponent")),
            }
        }
        Ok(e)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }
}

/// Images of the Wirtinger generators of the trefoil in `G` when `p ↦ t`:
/// from `x = r^-1 p` and `y = p^-1 q` we get `q = t y` and `r = t x^-1`.
pub fn wirtinger_images() -> [GElement; 3] {
    let t = GElement::t();
    let x = GElement::heis(HeisElement::x());
    let y = GElement::heis(HeisElement::y());
    [t, t.mul(&y), t.mul(&x.inv())]
}

/// Evaluate a word in `G`; `p, q, r` go through the Wirtinger images.
pub fn eval_in_g(w: &Word) -> Result<GElement> {
    let [p, q, r] = wirtinger_images();
    let mut acc = GElement::identity();
    for &(g, e) in w.letters() {
        let base = match g {
            'x' => GElement::heis(HeisElement::x()),
            'y' => GElement::heis(HeisElement::y()),
            't' => GElement::t(),
            'p' => p,
            'q' => q,
            'r' => r,
            _ => return Err(usage(format!("generator {g} has no image in G"))),
        };
        acc = acc.mul(&base.pow(e));
    }
    Ok(acc)
}

/// The checks behind the wild-knot meridian example: the Wirtinger relations
/// hold in `G`, `p^p`-conjugation acts as `φ`, and the two meridian words
/// `p` and `p^2 r^-1` land on `t` and `txy`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeridianImages {
    pub relations_hold: bool,
    pub monodromy_matches: bool,
    pub first: GElement,
    pub second: GElement,
    pub second_equals_pxy: bool,
}

pub fn wild_meridian_images() -> Result<MeridianImages> {
    let ev = |s: &str| eval_in_g(&Word::parse(s)?);
    let relations_hold = ev("p q^-1")? == ev("r^-1 p")?
        && ev("q r^-1")? == ev("p^-1 q")?
        && ev("r p^-1")? == ev("q^-1 r")?
        && ev("r^-1 p")? == ev("x")?
        && ev("p^-1 q")? == ev("y")?;
    let p = ev("p")?;
    let monodromy_matches = ev("x")?.conj(&p) == ev("y^-1")? && ev("y")?.conj(&p) == ev("y x")?;
    let second = ev("p^2 r^-1")?;
    Ok(MeridianImages {
        relations_hold,
        monodromy_matches,
        first: p,
        second,
        second_equals_pxy: second == ev("p x y")?,
    })
}

/// Factor of a syllable in `Z/3 * Z/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Factor {
    /// `p`, order 3.
    A,
    /// `q`, order 2.
    B,
}

impl Factor {
    fn order(self) -> i64 {
        match self {
            Factor::A => 3,
            Factor::B => 2,
        }
    }
}

/// Reduced word in `Z/3 * Z/2`: alternating factors, exponents nonzero
/// modulo the factor order (stored in `1..order`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct FreeProductWord {
    syllables: Vec<(Factor, i64)>,
}

impl FreeProductWord {
    pub fn from_syllables(s: impl IntoIterator<Item = (Factor, i64)>) -> Self {
        let mut w = FreeProductWord::default();
        for (f, e) in s {
            w.push(f, e);
        }
        w
    }

    pub fn syllables(&self) -> &[(Factor, i64)] {
        &self.syllables
    }

    /// Number of syllables, the alternation count.
    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    fn push(&mut self, f: Factor, e: i64) {
        let e = e.rem_euclid(f.order());
        if e == 0 {
            return;
        }
        if let Some(last) = self.syllables.last_mut() {
            if last.0 == f {
                last.1 = (last.1 + e) % f.order();
                if last.1 == 0 {
                    self.syllables.pop();
                }
                return;
            }
        }
        self.syllables.push((f, e));
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut w = self.clone();
        for &(f, e) in &o.syllables {
            w.push(f, e);
        }
        w
    }

    pub fn inv(&self) -> Self {
        Self::from_syllables(self.syllables.iter().rev().map(|&(f, e)| (f, -e)))
    }

    /// Conjugate until the first and last syllables lie in different factors
    /// (or the word has at most one syllable).
    pub fn cyclic_reduce(&self) -> Self {
        let mut w = self.clone();
        while w.syllables.len() >= 2 {
            let (f0, _) = w.syllables[0];
            let (fl, el) = *w.syllables.last().expect("nonempty");
            if f0 != fl {
                break;
            }
            // conjugate by the last syllable: s_l · w · s_l^-1
            w.syllables.pop();
            let mut v = FreeProductWord::default();
            v.push(fl, el);
            w = v.mul(&w);
        }
        w
    }

    /// The word written with `p` and `q`.
    pub fn to_word(&self) -> Word {
        let mut w = Word::default();
        for &(f, e) in &self.syllables {
            w.push(if f == Factor::A { 'p' } else { 'q' }, e);
        }
        w
    }
}

impl fmt::Display for FreeProductWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_word())
    }
}

/// Image of a word in `p, q` under `Z * Z -> Z/3 * Z/2`.
pub fn freeprod_from_word(w: &Word) -> Result<FreeProductWord> {
    let mut out = FreeProductWord::default();
    for &(g, e) in w.letters() {
        match g {
            'p' => out.push(Factor::A, e),
            'q' => out.push(Factor::B, e),
            _ => return Err(usage(format!("generator {g} is not p or q"))),
        }
    }
    Ok(out)
}

/// Conjugacy in `Z/3 * Z/2`: cyclically reduced words of length ≥ 2 are
/// conjugate iff one is a cyclic rotation of the other; shorter words are
/// conjugate iff equal, the factors being abelian.
pub fn freeprod_conjugate_test(a: &FreeProductWord, b: &FreeProductWord) -> bool {
    let (a, b) = (a.cyclic_reduce(), b.cyclic_reduce());
    if a.len() != b.len() {
        return false;
    }
    if a.len() <= 1 {
        return a == b;
    }
    let n = a.len();
    (0..n).any(|s| (0..n).all(|i| a.syllables[(i + s) % n] == b.syllables[i]))
}

/// `x = p^-1 q`, `y = q^-1 p^2` for the trefoil `<x, y | xyx = yxy>` with
/// `p = xy`, `q = xyx`.
pub fn trefoil_word_translate(w: &Word) -> Result<FreeProductWord> {
    let x = FreeProductWord::from_syllables([(Factor::A, -1), (Factor::B, 1)]);
    let y = FreeProductWord::from_syllables([(Factor::B, -1), (Factor::A, 2)]);
    let mut out = FreeProductWord::default();
    for &(g, e) in w.letters() {
        let base = match g {
            'x' => &x,
            'y' => &y,
            _ => return Err(usage(format!("trefoil words use x and y, not {g}"))),
        };
        let piece = if e < 0 { base.inv() } else { base.clone() };
        for _ in 0..e.abs() {
            out = out.mul(&piece);
        }
    }
    Ok(out)
}
