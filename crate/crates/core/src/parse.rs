//! Tiny hand-written parser for Laurent polynomial expressions.
//!
//! Grammar: a signed sum of terms. A term is an optional decimal
//! coefficient followed by variable factors, optionally joined by `*`.
//! Exponents follow `^` and may be negative or wrapped in braces or
//! parentheses: `x^-2`, `x^{-2}`, `x^(-2)`.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::LaurentPoly;

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [&'a str],
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at position {}", self.pos))
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn exponent(&mut self) -> Result<i64> {
        let close = match self.peek() {
            Some('{') => Some('}'),
            Some('(') => Some(')'),
            _ => None,
        };
        if close.is_some() {
            self.pos += 1;
        }
        let mut sign = 1;
        match self.peek() {
            Some('-') => {
                sign = -1;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        let d = self.digits().ok_or_else(|| self.err("expected exponent"))?;
        let k: i64 = d.parse().map_err(|_| self.err("exponent out of range"))?;
        if let Some(c) = close {
            if self.peek() != Some(c) {
                return Err(self.err("unclosed exponent"));
            }
            self.pos += 1;
        }
        Ok(sign * k)
    }

    fn variable(&mut self) -> Option<usize> {
        self.skip_ws();
        let rest: String = self.chars[self.pos..].iter().collect();
        let mut best: Option<(usize, usize)> = None;
        for (i, v) in self.vars.iter().enumerate() {
            if rest.starts_with(v) && best.is_none_or(|(_, len)| v.len() > len) {
                best = Some((i, v.chars().count()));
            }
        }
        let (i, len) = best?;
        self.pos += len;
        Some(i)
    }

    fn term(&mut self) -> Result<([i64; 2], BigInt)> {
        let mut coeff = BigInt::one();
        let mut seen = false;
        if let Some(d) = self.digits() {
            coeff = d.parse().map_err(|_| self.err("bad integer"))?;
            seen = true;
        }
        let mut e = [0i64; 2];
        loop {
            if self.peek() == Some('*') {
                self.pos += 1;
                if let Some(d) = self.digits() {
                    let k: BigInt = d.parse().map_err(|_| self.err("bad integer"))?;
                    coeff *= k;
                    seen = true;
                    continue;
                }
            }
            match self.variable() {
                Some(i) => {
                    let k = if self.peek() == Some('^') {
                        self.pos += 1;
                        self.exponent()?
                    } else {
                        1
                    };
                    e[i] += k;
                    seen = true;
                }
                None => break,
            }
        }
        if !seen {
            return Err(self.err("expected a term"));
        }
        Ok((e, coeff))
    }
}

pub(crate) fn parse_laurent(vars: &[&str], text: &str) -> Result<LaurentPoly> {
    if !(1..=2).contains(&vars.len()) {
        return Err(Error::Usage("one or two variables expected".into()));
    }
    let mut cur = Cursor {
        chars: text.chars().collect(),
        pos: 0,
        vars,
    };
    let mut out = LaurentPoly::zero(vars);
    let mut first = true;
    loop {
        let sign = match cur.peek() {
            None if !first => break,
            None => return Err(cur.err("empty expression")),
            Some('+') => {
                cur.pos += 1;
                1
            }
            Some('-') => {
                cur.pos += 1;
                -1
            }
            Some(_) if first => 1,
            Some(c) => return Err(cur.err(&format!("unexpected {c:?}"))),
        };
        first = false;
        let (e, c) = cur.term()?;
        out.add_term(e, &(c * sign));
    }
    Ok(out)
}
