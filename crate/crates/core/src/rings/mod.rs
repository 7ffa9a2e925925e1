//! Small finite commutative unitary rings.
//!
//! A [`Ring`] is materialised from a [`RingSpec`]: every element gets a dense
//! index `0..size`, arithmetic is served from precomputed tables for rings of
//! at most [`TABLE_LIMIT`] elements and computed on the fly above that. The
//! unit group, inverses and locality data are computed once at build time.

mod axioms;
mod gf;
mod literal;
mod poly;
mod quotient;
mod spec;
mod table;

use std::fmt;

use crate::error::{Error, Result};

pub use axioms::check_axioms;
pub use gf::{factorize, is_irreducible, is_prime, prime_power};
pub use poly::{parse_poly, IntPoly};
pub use spec::{parse_spec, RingSpec};
pub use table::TableFile;

pub(crate) use literal::split_top_level;

use quotient::Quotient;

/// Rings up to this size get flat add/mul/neg tables.
pub const TABLE_LIMIT: usize = 256;

/// Default cap on the number of elements of a built ring.
pub const DEFAULT_SIZE_CAP: usize = 4096;

/// Rings up to this size are axiom-checked exhaustively.
pub const EXHAUSTIVE_AXIOM_LIMIT: usize = 64;

/// An element of a [`Ring`], as its dense index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(pub u32);

impl Elem {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub size_cap: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            size_cap: DEFAULT_SIZE_CAP,
        }
    }
}

/// The cardinalities the counting formulas consume.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RingParams {
    pub size: usize,
    pub units: usize,
    pub is_local: bool,
    /// Residue field size, present only for local rings.
    pub residue_size: Option<usize>,
}

#[derive(Debug, Clone)]
struct Tables {
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
}

#[derive(Debug, Clone)]
struct Product {
    factors: Vec<Ring>,
    strides: Vec<usize>,
}

impl Product {
    fn split(&self, e: Elem) -> Vec<Elem> {
        let mut rest = e.index();
        self.strides
            .iter()
            .map(|&s| {
                let c = rest / s;
                rest %= s;
                Elem(c as u32)
            })
            .collect()
    }

    fn join(&self, parts: impl IntoIterator<Item = Elem>) -> Elem {
        let idx: usize = parts
            .into_iter()
            .zip(&self.strides)
            .map(|(p, &s)| p.index() * s)
            .sum();
        Elem(idx as u32)
    }

    fn zip_with(&self, a: Elem, b: Elem, op: impl Fn(&Ring, Elem, Elem) -> Elem) -> Elem {
        let (xa, xb) = (self.split(a), self.split(b));
        self.join(
            self.factors
                .iter()
                .zip(xa.into_iter().zip(xb))
                .map(|(r, (x, y))| op(r, x, y)),
        )
    }
}

#[derive(Debug, Clone)]
enum Arith {
    Modular(u32),
    Quotient(Box<Quotient>),
    Product(Product),
    /// Arithmetic lives entirely in `Ring::tables`.
    Table,
}

/// A materialised finite commutative unitary ring.
///
/// Immutable once built, so it can be shared freely across threads.
#[derive(Debug, Clone)]
pub struct Ring {
    spec: RingSpec,
    size: usize,
    zero: Elem,
    one: Elem,
    arith: Arith,
    tables: Option<Tables>,
    inverse: Vec<Option<Elem>>,
    unit_count: usize,
    is_local: bool,
    residue_size: Option<usize>,
}

/// Build a ring with the default size cap.
pub fn build_ring(spec: &RingSpec) -> Result<Ring> {
    build_ring_with(spec, &BuildOptions::default())
}

/// Parse a ring-spec string and build it with the default size cap.
pub fn ring_from_str(text: &str) -> Result<Ring> {
    build_ring(&parse_spec(text)?)
}

pub fn build_ring_with(spec: &RingSpec, opts: &BuildOptions) -> Result<Ring> {
    let cap = opts.size_cap;
    let check = |size: u128| {
        if size > cap as u128 {
            Err(Error::SizeCap { size, cap })
        } else {
            Ok(())
        }
    };
    match spec {
        RingSpec::Zmod(n) => {
            check(*n as u128)?;
            Ok(Ring::assemble(
                spec.clone(),
                *n as usize,
                Arith::Modular(*n as u32),
                Elem(0),
                Elem(1),
                None,
            ))
        }
        RingSpec::Gf { p, k, modulus } => {
            check((*p as u128).pow(*k))?;
            if *k == 1 {
                return Ok(Ring::assemble(
                    spec.clone(),
                    *p as usize,
                    Arith::Modular(*p as u32),
                    Elem(0),
                    Elem(1),
                    None,
                ));
            }
            let base = build_ring_with(&RingSpec::Zmod(*p), opts)?;
            let modulus = match modulus {
                Some(m) => m.clone(),
                None => {
                    let c = gf::default_modulus(*p, *k);
                    IntPoly::from_coeffs(&c.iter().map(|&v| v as i64).collect::<Vec<_>>())
                }
            };
            Ring::from_quotient(spec.clone(), base, &[modulus], false, cap)
        }
        RingSpec::PolyQuot { base, relations } => {
            let base = build_ring_with(base, opts)?;
            Ring::from_quotient(spec.clone(), base, relations, false, cap)
        }
        RingSpec::Bivar { base, relations } => {
            let base = build_ring_with(base, opts)?;
            Ring::from_quotient(spec.clone(), base, relations, true, cap)
        }
        RingSpec::Product(specs) => {
            let factors = specs
                .iter()
                .map(|s| build_ring_with(s, opts))
                .collect::<Result<Vec<_>>>()?;
            let size = factors
                .iter()
                .try_fold(1u128, |acc, r| acc.checked_mul(r.size as u128))
                .unwrap_or(u128::MAX);
            check(size)?;
            let mut strides = vec![1usize; factors.len()];
            for i in (0..factors.len() - 1).rev() {
                strides[i] = strides[i + 1] * factors[i + 1].size;
            }
            let product = Product { factors, strides };
            let zero = product.join(product.factors.iter().map(|r| r.zero));
            let one = product.join(product.factors.iter().map(|r| r.one));
            Ok(Ring::assemble(
                spec.clone(),
                size as usize,
                Arith::Product(product),
                zero,
                one,
                None,
            ))
        }
        RingSpec::Table(path) => {
            let file = TableFile::load(path)?;
            let ring = file.into_ring(spec.clone(), cap)?;
            check_axioms(&ring, EXHAUSTIVE_AXIOM_LIMIT, 200_000, 0x5eed)
                .map_err(Error::InvalidTable)?;
            Ok(ring)
        }
    }
}

impl Ring {
    fn from_quotient(
        spec: RingSpec,
        base: Ring,
        relations: &[IntPoly],
        bivariate: bool,
        cap: usize,
    ) -> Result<Ring> {
        let q = Quotient::build(base, relations, bivariate, cap)?;
        let (size, zero, one) = (q.size(), q.zero(), q.one());
        Ok(Ring::assemble(
            spec,
            size,
            Arith::Quotient(Box::new(q)),
            zero,
            one,
            None,
        ))
    }

    /// Fill in tables, inverses and locality data around an arithmetic
    /// backend. `tables` is supplied only by table-backed rings.
    fn assemble(
        spec: RingSpec,
        size: usize,
        arith: Arith,
        zero: Elem,
        one: Elem,
        tables: Option<(Vec<Elem>, Vec<Elem>)>,
    ) -> Ring {
        let mut ring = Ring {
            spec,
            size,
            zero,
            one,
            arith,
            tables: None,
            inverse: Vec::new(),
            unit_count: 0,
            is_local: false,
            residue_size: None,
        };
        ring.tables = match tables {
            Some((add, mul)) => {
                let neg = (0..size)
                    .map(|a| {
                        (0..size)
                            .map(|b| Elem(b as u32))
                            .find(|&b| add[a * size + b.index()] == zero)
                            .unwrap_or(zero)
                    })
                    .collect();
                Some(Tables { add, mul, neg })
            }
            None if size <= TABLE_LIMIT => {
                let mut add = Vec::with_capacity(size * size);
                let mut mul = Vec::with_capacity(size * size);
                for a in ring.elements() {
                    for b in ring.elements() {
                        add.push(ring.add(a, b));
                        mul.push(ring.mul(a, b));
                    }
                }
                let neg = ring.elements().map(|a| ring.neg(a)).collect();
                Some(Tables { add, mul, neg })
            }
            None => None,
        };
        ring.inverse = ring.compute_inverses();
        ring.unit_count = ring.inverse.iter().filter(|i| i.is_some()).count();
        let one = ring.one;
        ring.is_local = ring
            .elements()
            .all(|a| ring.is_unit(a) || ring.is_unit(ring.sub(one, a)));
        if ring.is_local {
            let nonunits = size - ring.unit_count;
            debug_assert_eq!(size % nonunits, 0);
            ring.residue_size = Some(size / nonunits);
        }
        ring
    }

    fn compute_inverses(&self) -> Vec<Option<Elem>> {
        match &self.arith {
            Arith::Modular(n) => {
                use num_integer::Integer;
                let n = *n as i64;
                (0..n)
                    .map(|a| {
                        let g = a.extended_gcd(&n);
                        (g.gcd == 1).then(|| Elem(g.x.rem_euclid(n) as u32))
                    })
                    .collect()
            }
            Arith::Product(p) => self
                .elements()
                .map(|e| {
                    let parts = p.split(e);
                    let inv: Option<Vec<Elem>> = p
                        .factors
                        .iter()
                        .zip(parts)
                        .map(|(r, x)| r.inverse(x))
                        .collect();
                    inv.map(|v| p.join(v))
                })
                .collect(),
            _ => {
                let mut inv = vec![None; self.size];
                for a in self.elements() {
                    if inv[a.index()].is_some() {
                        continue;
                    }
                    if let Some(b) = self.elements().find(|&b| self.mul(a, b) == self.one) {
                        inv[a.index()] = Some(b);
                        inv[b.index()] = Some(a);
                    }
                }
                inv
            }
        }
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.size as u32).map(Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if let Some(t) = &self.tables {
            return t.add[a.index() * self.size + b.index()];
        }
        match &self.arith {
            Arith::Modular(n) => Elem(((a.0 as u64 + b.0 as u64) % *n as u64) as u32),
            Arith::Quotient(q) => q.add(a, b),
            Arith::Product(p) => p.zip_with(a, b, Ring::add),
            Arith::Table => unreachable!("table rings always carry tables"),
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if let Some(t) = &self.tables {
            return t.mul[a.index() * self.size + b.index()];
        }
        match &self.arith {
            Arith::Modular(n) => Elem(((a.0 as u64 * b.0 as u64) % *n as u64) as u32),
            Arith::Quotient(q) => q.mul(a, b),
            Arith::Product(p) => p.zip_with(a, b, Ring::mul),
            Arith::Table => unreachable!("table rings always carry tables"),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if let Some(t) = &self.tables {
            return t.neg[a.index()];
        }
        match &self.arith {
            Arith::Modular(n) => Elem((*n - a.0) % *n),
            Arith::Quotient(q) => q.neg(a),
            Arith::Product(p) => p.join(p.factors.iter().zip(p.split(a)).map(|(r, x)| r.neg(x))),
            Arith::Table => unreachable!("table rings always carry tables"),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let (mut acc, mut base) = (self.one, a);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The image of the integer `v` under `ℤ → A`, i.e. `v·1_A`.
    pub fn from_int(&self, v: i64) -> Elem {
        match &self.arith {
            Arith::Modular(n) => Elem(v.rem_euclid(*n as i64) as u32),
            Arith::Quotient(q) => q.integer(v),
            Arith::Product(p) => p.join(p.factors.iter().map(|r| r.from_int(v))),
            Arith::Table => {
                // double-and-add on 1_A
                let mut acc = self.zero;
                let mut base = self.one;
                let mut m = v.unsigned_abs();
                while m > 0 {
                    if m & 1 == 1 {
                        acc = self.add(acc, base);
                    }
                    base = self.add(base, base);
                    m >>= 1;
                }
                if v < 0 {
                    self.neg(acc)
                } else {
                    acc
                }
            }
        }
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.inverse[a.index()].is_some()
    }

    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        self.inverse[a.index()]
    }

    pub fn units(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }

    pub fn nonunits(&self) -> Vec<Elem> {
        self.elements().filter(|&a| !self.is_unit(a)).collect()
    }

    pub fn unit_count(&self) -> usize {
        self.unit_count
    }

    pub fn is_local(&self) -> bool {
        self.is_local
    }

    /// `|A| / |A - U(A)|` for local rings.
    pub fn residue_size(&self) -> Option<usize> {
        self.residue_size
    }

    pub fn params(&self) -> RingParams {
        RingParams {
            size: self.size,
            units: self.unit_count,
            is_local: self.is_local,
            residue_size: self.residue_size,
        }
    }

    /// Canonical literal for an element; parses back to the same element.
    pub fn display(&self, a: Elem) -> String {
        match &self.arith {
            Arith::Modular(_) => a.0.to_string(),
            Arith::Quotient(q) => q.display(a),
            Arith::Product(p) => {
                let parts: Vec<String> = p
                    .factors
                    .iter()
                    .zip(p.split(a))
                    .map(|(r, x)| r.display(x))
                    .collect();
                format!("({})", parts.join(","))
            }
            Arith::Table => format!("#{}", a.0),
        }
    }

    /// Parse an element literal: an integer (embedded as `v·1_A`) or the
    /// ring's own literal form (polynomial, tuple, `#index`).
    pub fn parse_element(&self, text: &str) -> Result<Elem> {
        let t = text.trim();
        if let Some(v) = literal::parse_signed_int(t) {
            return Ok(self.from_int(v));
        }
        let fail = |reason: &str| Error::Element {
            literal: text.to_string(),
            reason: reason.to_string(),
        };
        match &self.arith {
            Arith::Modular(_) => Err(fail("expected an integer")),
            Arith::Quotient(q) => q.parse(t).map_err(|r| fail(&r)),
            Arith::Product(p) => {
                let inner = t
                    .strip_prefix('(')
                    .and_then(|s| s.strip_suffix(')'))
                    .ok_or_else(|| fail("expected a tuple (a,b,...)"))?;
                let parts = literal::split_top_level(inner, ',');
                if parts.len() != p.factors.len() {
                    return Err(fail("tuple length does not match the number of factors"));
                }
                let elems = p
                    .factors
                    .iter()
                    .zip(parts)
                    .map(|(r, s)| r.parse_element(s))
                    .collect::<Result<Vec<_>>>()?;
                Ok(p.join(elems))
            }
            Arith::Table => t
                .strip_prefix('#')
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&i| i < self.size)
                .map(|i| Elem(i as u32))
                .ok_or_else(|| fail("expected #<index> within the ring")),
        }
    }

    /// Whether element literals of this ring are bare integers.
    pub(crate) fn integer_literals(&self) -> bool {
        matches!(self.arith, Arith::Modular(_))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec)
    }
}
