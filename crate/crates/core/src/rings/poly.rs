//! Integer-coefficient polynomials in `x` and `y`, as written in ring specs.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Sparse polynomial with integer coefficients, keyed by `(deg_x, deg_y)`.
///
/// Coefficients are reduced into a concrete ring only when the ring is built.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPoly {
    terms: BTreeMap<(u32, u32), i64>,
}

impl IntPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coeff: i64, dx: u32, dy: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(coeff, dx, dy);
        p
    }

    /// Build from coefficients of `1, x, x^2, ...`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(c, i as u32, 0);
        }
        p
    }

    fn add_term(&mut self, coeff: i64, dx: u32, dy: u32) {
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry((dx, dy)).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.remove(&(dx, dy));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), i64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn uses_y(&self) -> bool {
        self.terms.keys().any(|&(_, dy)| dy > 0)
    }

    pub fn uses_x(&self) -> bool {
        self.terms.keys().any(|&(dx, _)| dx > 0)
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(dx, _)| dx).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, dy)| dy).max()
    }

    /// Coefficients of `1, x, ..., x^deg` for a polynomial in `x` only.
    pub fn univariate_coeffs(&self) -> Vec<i64> {
        let deg = self.degree_x().unwrap_or(0) as usize;
        let mut out = vec![0; deg + 1];
        for (&(dx, _), &c) in &self.terms {
            out[dx as usize] += c;
        }
        out
    }

    /// Same polynomial with `x` renamed to `y`.
    pub fn swap_vars(&self) -> Self {
        let mut p = Self::zero();
        for (&(dx, dy), &c) in &self.terms {
            p.add_term(c, dy, dx);
        }
        p
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, dx: u32, dy: u32) -> fmt::Result {
    let mut first = true;
    for (name, e) in [("x", dx), ("y", dy)] {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            f.write_str(name)?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest total degree first, then by x degree
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by(|a, b| {
            let (da, db) = (a.0 .0 + a.0 .1, b.0 .0 + b.0 .1);
            db.cmp(&da).then(b.0 .0.cmp(&a.0 .0))
        });
        for (i, (&(dx, dy), &c)) in keys.into_iter().enumerate() {
            let constant = dx == 0 && dy == 0;
            let mag = c.unsigned_abs();
            if c < 0 {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            if constant {
                write!(f, "{mag}")?;
            } else {
                if mag != 1 {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, dx, dy)?;
            }
        }
        Ok(())
    }
}

/// Parse a polynomial over the variables `x` and (if `allow_y`) `y`.
///
/// `offset` is the position of `text` inside the enclosing spec, used for
/// error positions.
pub fn parse_poly(text: &str, offset: usize, allow_y: bool) -> Result<IntPoly> {
    let mut parser = PolyParser {
        src: text.as_bytes(),
        pos: 0,
        offset,
        allow_y,
    };
    let poly = parser.poly()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.err("unexpected character in polynomial"));
    }
    Ok(poly)
}

struct PolyParser<'a> {
    src: &'a [u8],
    pos: usize,
    offset: usize,
    allow_y: bool,
}

impl PolyParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::syntax(self.offset + self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn poly(&mut self) -> Result<IntPoly> {
        let mut out = IntPoly::zero();
        let mut sign = 1i64;
        match self.peek() {
            Some(b'-') => {
                sign = -1;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            None => return Err(self.err("empty polynomial")),
            _ => {}
        }
        loop {
            let (c, dx, dy) = self.term()?;
            let c = c
                .checked_mul(sign)
                .ok_or_else(|| self.err("coefficient overflow"))?;
            out.add_term(c, dx, dy);
            match self.peek() {
                Some(b'+') => {
                    sign = 1;
                    self.pos += 1;
                }
                Some(b'-') => {
                    sign = -1;
                    self.pos += 1;
                }
                _ => return Ok(out),
            }
        }
    }

    fn term(&mut self) -> Result<(i64, u32, u32)> {
        let mut coeff = 1i64;
        let (mut dx, mut dy) = (0u32, 0u32);
        let mut factors = 0;
        loop {
            match self.peek() {
                Some(b'0'..=b'9') => {
                    let v = self.integer()?;
                    coeff = coeff
                        .checked_mul(v)
                        .ok_or_else(|| self.err("coefficient overflow"))?;
                }
                Some(ch @ (b'x' | b'y')) => {
                    if ch == b'y' && !self.allow_y {
                        return Err(self.err("variable y is only allowed in Bivar relations"));
                    }
                    self.pos += 1;
                    let mut e = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        if !matches!(self.peek(), Some(b'0'..=b'9')) {
                            return Err(self.err("expected exponent after '^'"));
                        }
                        e = u32::try_from(self.integer()?)
                            .map_err(|_| self.err("exponent too large"))?;
                    }
                    if ch == b'x' {
                        dx += e;
                    } else {
                        dy += e;
                    }
                }
                _ if factors == 0 => return Err(self.err("expected a term")),
                _ => return Err(self.err("expected a factor after '*'")),
            }
            factors += 1;
            match self.peek() {
                Some(b'*') => self.pos += 1,
                Some(b'0'..=b'9' | b'x' | b'y') => {}
                _ => return Ok((coeff, dx, dy)),
            }
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::syntax(self.offset + start, "integer literal out of range"))
    }
}
