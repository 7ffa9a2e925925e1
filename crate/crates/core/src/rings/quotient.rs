//! Quotients `B[x]/I` and `B[x,y]/I` of a finite base ring `B`.
//!
//! The ideal must contain, for each variable, a polynomial in that variable
//! alone whose leading coefficient is a unit. Those reducers give the finite
//! module `V = B[x,y]/(f(x), g(y))` with monomial basis `x^i y^j`; any further
//! relations generate a submodule `S` of `V`, and the ring is `V/S`. Elements
//! are numbered by the smallest vector of their coset.

use std::collections::HashSet;

use super::{Elem, IntPoly, Ring};
use crate::error::{Error, Result};

/// Largest intermediate module `V` we are willing to enumerate.
const MODULE_LIMIT: u128 = 1 << 22;

#[derive(Debug, Clone)]
struct Cosets {
    coset_of: Vec<u32>,
    reps: Vec<u32>,
}

#[derive(Debug, Clone)]
pub(crate) struct Quotient {
    base: Ring,
    bivariate: bool,
    dx: usize,
    dy: usize,
    reducer_x: Vec<Elem>,
    reducer_y: Vec<Elem>,
    cosets: Option<Cosets>,
    size: usize,
}

/// Relation with coefficients reduced into the base ring.
type BaseTerms = Vec<((usize, usize), Elem)>;

fn find_reducer(base: &Ring, rels: &[BaseTerms], in_y: bool) -> Option<(usize, Vec<Elem>)> {
    let mut best: Option<(usize, usize)> = None;
    for (idx, rel) in rels.iter().enumerate() {
        let pure = rel
            .iter()
            .all(|&((dx, dy), _)| if in_y { dx == 0 } else { dy == 0 });
        if !pure || rel.is_empty() {
            continue;
        }
        let deg_of = |&((dx, dy), _): &((usize, usize), Elem)| if in_y { dy } else { dx };
        let deg = rel.iter().map(deg_of).max().unwrap_or(0);
        let lead = rel.iter().find(|t| deg_of(t) == deg).map(|t| t.1);
        if deg == 0 || !lead.is_some_and(|l| base.is_unit(l)) {
            continue;
        }
        if best.is_none_or(|(_, d)| deg < d) {
            best = Some((idx, deg));
        }
    }
    let (idx, deg) = best?;
    let rel = &rels[idx];
    let pick = |&((dx, dy), _): &((usize, usize), Elem)| if in_y { dy } else { dx };
    let lead_inv = base.inverse(rel.iter().find(|t| pick(t) == deg)?.1)?;
    let mut coeffs = vec![base.zero(); deg + 1];
    for t in rel {
        coeffs[pick(t)] = base.mul(t.1, lead_inv);
    }
    Some((idx, coeffs))
}

impl Quotient {
    pub(crate) fn build(
        base: Ring,
        relations: &[IntPoly],
        bivariate: bool,
        cap: usize,
    ) -> Result<Quotient> {
        let rels: Vec<BaseTerms> = relations
            .iter()
            .map(|p| {
                p.terms()
                    .map(|((dx, dy), c)| ((dx as usize, dy as usize), base.from_int(c)))
                    .filter(|&(_, c)| c != base.zero())
                    .collect()
            })
            .collect();

        let (ix, reducer_x) = find_reducer(&base, &rels, false).ok_or_else(|| {
            Error::Quotient(
                "need a relation in x alone with unit leading coefficient; the quotient would not be finite"
                    .into(),
            )
        })?;
        let (iy, reducer_y) = if bivariate {
            let (iy, r) = find_reducer(&base, &rels, true).ok_or_else(|| {
                Error::Quotient(
                    "need a relation in y alone with unit leading coefficient; the quotient would not be finite"
                        .into(),
                )
            })?;
            (Some(iy), r)
        } else {
            (None, vec![base.one(), base.zero()])
        };

        let dx = reducer_x.len() - 1;
        let dy = if bivariate { reducer_y.len() - 1 } else { 1 };
        let module_size = (base.size() as u128)
            .checked_pow((dx * dy) as u32)
            .unwrap_or(u128::MAX);
        if module_size > MODULE_LIMIT {
            return Err(Error::SizeCap {
                size: module_size,
                cap: cap.min(MODULE_LIMIT as usize),
            });
        }

        let mut q = Quotient {
            base,
            bivariate,
            dx,
            dy,
            reducer_x,
            reducer_y,
            cosets: None,
            size: module_size as usize,
        };

        let extra: Vec<Vec<Elem>> = rels
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != ix && Some(i) != iy)
            .map(|(_, rel)| q.reduce_terms(rel))
            .filter(|g| g.iter().any(|&c| c != q.base.zero()))
            .collect();

        if !extra.is_empty() {
            q.quotient_by(&extra)?;
        }
        if q.size > cap {
            return Err(Error::SizeCap {
                size: q.size as u128,
                cap,
            });
        }
        if q.size < 2 {
            return Err(Error::Quotient(
                "the relations generate the unit ideal".into(),
            ));
        }
        Ok(q)
    }

    fn quotient_by(&mut self, extra: &[Vec<Elem>]) -> Result<()> {
        let zero = self.base.zero();
        let mut gens = HashSet::new();
        for g in extra {
            for j in 0..self.dy {
                for i in 0..self.dx {
                    let shifted = self.shift(g, i, j);
                    for a in self.base.elements().filter(|&a| a != zero) {
                        let scaled: Vec<Elem> =
                            shifted.iter().map(|&c| self.base.mul(a, c)).collect();
                        let v = self.encode(&scaled);
                        if v != 0 {
                            gens.insert(v);
                        }
                    }
                }
            }
        }
        let gens: Vec<u32> = {
            let mut g: Vec<u32> = gens.into_iter().collect();
            g.sort_unstable();
            g
        };

        let module_size = self.size;
        let mut member = vec![false; module_size];
        member[0] = true;
        let mut sub = vec![0u32];
        let mut i = 0;
        while i < sub.len() {
            let s = sub[i];
            for &g in &gens {
                let t = self.vadd(s, g);
                if !member[t as usize] {
                    member[t as usize] = true;
                    sub.push(t);
                }
            }
            i += 1;
        }

        if sub.len() == 1 {
            return Ok(());
        }
        let mut coset_of = vec![u32::MAX; module_size];
        let mut reps = Vec::with_capacity(module_size / sub.len());
        for v in 0..module_size as u32 {
            if coset_of[v as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(v);
            for &s in &sub {
                coset_of[self.vadd(v, s) as usize] = id;
            }
        }
        self.size = reps.len();
        self.cosets = Some(Cosets { coset_of, reps });
        Ok(())
    }

    pub(crate) fn size(&self) -> usize {
        self.size
    }

    pub(crate) fn zero(&self) -> Elem {
        Elem(0)
    }

    pub(crate) fn one(&self) -> Elem {
        self.integer(1)
    }

    fn dim(&self) -> usize {
        self.dx * self.dy
    }

    fn decode(&self, mut v: u32) -> Vec<Elem> {
        let b = self.base.size() as u32;
        (0..self.dim())
            .map(|_| {
                let c = v % b;
                v /= b;
                Elem(c)
            })
            .collect()
    }

    fn encode(&self, coeffs: &[Elem]) -> u32 {
        let b = self.base.size() as u32;
        coeffs.iter().rev().fold(0u32, |acc, c| acc * b + c.0)
    }

    fn vadd(&self, u: u32, v: u32) -> u32 {
        let (a, b) = (self.decode(u), self.decode(v));
        let sum: Vec<Elem> = a
            .into_iter()
            .zip(b)
            .map(|(x, y)| self.base.add(x, y))
            .collect();
        self.encode(&sum)
    }

    fn to_elem(&self, v: u32) -> Elem {
        match &self.cosets {
            Some(c) => Elem(c.coset_of[v as usize]),
            None => Elem(v),
        }
    }

    fn rep(&self, e: Elem) -> u32 {
        match &self.cosets {
            Some(c) => c.reps[e.index()],
            None => e.0,
        }
    }

    /// Reduce a dense `ex × ey` coefficient grid (index `j*ex + i` for
    /// `x^i y^j`) to the basis grid `dx × dy`.
    fn reduce(&self, mut c: Vec<Elem>, ex: usize, ey: usize) -> Vec<Elem> {
        let base = &self.base;
        let zero = base.zero();
        let (dx, dy) = (self.dx, self.dy);
        for j in 0..ey {
            for i in (dx..ex).rev() {
                let t = c[j * ex + i];
                if t == zero {
                    continue;
                }
                c[j * ex + i] = zero;
                for s in 0..dx {
                    let idx = j * ex + i - dx + s;
                    c[idx] = base.sub(c[idx], base.mul(t, self.reducer_x[s]));
                }
            }
        }
        let mut d = vec![zero; dx * ey];
        for j in 0..ey {
            for i in 0..dx.min(ex) {
                d[j * dx + i] = c[j * ex + i];
            }
        }
        if self.bivariate {
            for i in 0..dx {
                for j in (dy..ey).rev() {
                    let t = d[j * dx + i];
                    if t == zero {
                        continue;
                    }
                    d[j * dx + i] = zero;
                    for s in 0..dy {
                        let idx = (j - dy + s) * dx + i;
                        d[idx] = base.sub(d[idx], base.mul(t, self.reducer_y[s]));
                    }
                }
            }
        }
        let mut out = vec![zero; dx * dy];
        for j in 0..dy.min(ey) {
            for i in 0..dx {
                out[j * dx + i] = d[j * dx + i];
            }
        }
        out
    }

    fn reduce_terms(&self, terms: &BaseTerms) -> Vec<Elem> {
        let ex = terms
            .iter()
            .map(|t| t.0 .0 + 1)
            .max()
            .unwrap_or(1)
            .max(self.dx);
        let ey = terms
            .iter()
            .map(|t| t.0 .1 + 1)
            .max()
            .unwrap_or(1)
            .max(self.dy);
        let mut grid = vec![self.base.zero(); ex * ey];
        for &((i, j), c) in terms {
            grid[j * ex + i] = self.base.add(grid[j * ex + i], c);
        }
        self.reduce(grid, ex, ey)
    }

    /// `x^i y^j · g` reduced.
    fn shift(&self, g: &[Elem], i: usize, j: usize) -> Vec<Elem> {
        let (ex, ey) = (self.dx + i, self.dy + j);
        let mut grid = vec![self.base.zero(); ex * ey];
        for gj in 0..self.dy {
            for gi in 0..self.dx {
                grid[(gj + j) * ex + gi + i] = g[gj * self.dx + gi];
            }
        }
        self.reduce(grid, ex, ey)
    }

    pub(crate) fn add(&self, a: Elem, b: Elem) -> Elem {
        self.to_elem(self.vadd(self.rep(a), self.rep(b)))
    }

    pub(crate) fn neg(&self, a: Elem) -> Elem {
        let c: Vec<Elem> = self
            .decode(self.rep(a))
            .into_iter()
            .map(|x| self.base.neg(x))
            .collect();
        self.to_elem(self.encode(&c))
    }

    pub(crate) fn mul(&self, a: Elem, b: Elem) -> Elem {
        let (ca, cb) = (self.decode(self.rep(a)), self.decode(self.rep(b)));
        let (dx, dy) = (self.dx, self.dy);
        let (ex, ey) = (2 * dx - 1, 2 * dy - 1);
        let base = &self.base;
        let zero = base.zero();
        let mut grid = vec![zero; ex * ey];
        for j1 in 0..dy {
            for i1 in 0..dx {
                let x = ca[j1 * dx + i1];
                if x == zero {
                    continue;
                }
                for j2 in 0..dy {
                    for i2 in 0..dx {
                        let y = cb[j2 * dx + i2];
                        if y == zero {
                            continue;
                        }
                        let idx = (j1 + j2) * ex + i1 + i2;
                        grid[idx] = base.add(grid[idx], base.mul(x, y));
                    }
                }
            }
        }
        let reduced = self.reduce(grid, ex, ey);
        self.to_elem(self.encode(&reduced))
    }

    fn lift(&self, c: Elem) -> Elem {
        let mut coeffs = vec![self.base.zero(); self.dim()];
        coeffs[0] = c;
        self.to_elem(self.encode(&coeffs))
    }

    pub(crate) fn integer(&self, v: i64) -> Elem {
        self.lift(self.base.from_int(v))
    }

    fn variable(&self, in_y: bool) -> Elem {
        let (ex, ey) = if in_y {
            (self.dx, self.dy.max(2))
        } else {
            (self.dx.max(2), self.dy)
        };
        let mut grid = vec![self.base.zero(); ex * ey];
        grid[if in_y { ex } else { 1 }] = self.base.one();
        self.to_elem(self.encode(&self.reduce(grid, ex, ey)))
    }

    pub(crate) fn display(&self, a: Elem) -> String {
        let c = self.decode(self.rep(a));
        let base = &self.base;
        let mut keys: Vec<(usize, usize)> = (0..self.dy)
            .flat_map(|j| (0..self.dx).map(move |i| (i, j)))
            .collect();
        keys.sort_by(|a, b| (b.0 + b.1).cmp(&(a.0 + a.1)).then(b.0.cmp(&a.0)));
        let mut parts = Vec::new();
        for (i, j) in keys {
            let coeff = c[j * self.dx + i];
            if coeff == base.zero() {
                continue;
            }
            let mut coeff_text = base.display(coeff);
            if !base.integer_literals() {
                coeff_text = format!("[{coeff_text}]");
            }
            let mono = monomial(i, j);
            parts.push(if mono.is_empty() {
                coeff_text
            } else if coeff == base.one() {
                mono
            } else {
                format!("{coeff_text}*{mono}")
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }

    pub(crate) fn parse(&self, text: &str) -> std::result::Result<Elem, String> {
        LiteralParser {
            q: self,
            src: text.as_bytes(),
            text,
            pos: 0,
        }
        .sum()
    }

    fn pow(&self, a: Elem, e: u32) -> Elem {
        (0..e).fold(self.one(), |acc, _| self.mul(acc, a))
    }
}

fn monomial(i: usize, j: usize) -> String {
    let mut out = String::new();
    for (name, e) in [("x", i), ("y", j)] {
        if e == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('*');
        }
        out.push_str(name);
        if e > 1 {
            out.push_str(&format!("^{e}"));
        }
    }
    out
}

struct LiteralParser<'a> {
    q: &'a Quotient,
    src: &'a [u8],
    text: &'a str,
    pos: usize,
}

impl LiteralParser<'_> {
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> std::result::Result<Elem, String> {
        let q = self.q;
        let mut acc = q.zero();
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if negate {
                q.add(acc, q.neg(t))
            } else {
                q.add(acc, t)
            };
            match self.peek() {
                Some(b'+') => {
                    negate = false;
                    self.pos += 1;
                }
                Some(b'-') => {
                    negate = true;
                    self.pos += 1;
                }
                None => return Ok(acc),
                Some(_) => return Err(format!("unexpected character at offset {}", self.pos)),
            }
        }
    }

    fn term(&mut self) -> std::result::Result<Elem, String> {
        let q = self.q;
        let mut acc = q.one();
        let mut factors = 0;
        loop {
            let f = match self.peek() {
                Some(b'0'..=b'9') => {
                    let start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    let v: i64 = self.text[start..self.pos]
                        .parse()
                        .map_err(|_| "integer out of range".to_string())?;
                    q.integer(v)
                }
                Some(b'[') => {
                    let start = self.pos + 1;
                    let mut depth = 0;
                    let mut end = None;
                    for (k, &b) in self.src[self.pos..].iter().enumerate() {
                        match b {
                            b'[' => depth += 1,
                            b']' => {
                                depth -= 1;
                                if depth == 0 {
                                    end = Some(self.pos + k);
                                    break;
                                }
                            }
                            _ => {}
                        }
                    }
                    let end = end.ok_or("unbalanced '['")?;
                    self.pos = end + 1;
                    let c = q
                        .base
                        .parse_element(&self.text[start..end])
                        .map_err(|e| e.to_string())?;
                    q.lift(c)
                }
                Some(ch @ (b'x' | b'y')) => {
                    if ch == b'y' && !q.bivariate {
                        return Err("y is not a variable of this ring".into());
                    }
                    self.pos += 1;
                    let mut e = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.peek();
                        let start = self.pos;
                        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                            self.pos += 1;
                        }
                        e = self.text[start..self.pos]
                            .parse()
                            .map_err(|_| "expected exponent".to_string())?;
                    }
                    q.pow(q.variable(ch == b'y'), e)
                }
                _ if factors == 0 => return Err("expected a term".into()),
                _ => return Err("expected a factor after '*'".into()),
            };
            acc = q.mul(acc, f);
            factors += 1;
            match self.peek() {
                Some(b'*') => self.pos += 1,
                Some(b'0'..=b'9' | b'x' | b'y' | b'[') => {}
                _ => return Ok(acc),
            }
        }
    }
}
