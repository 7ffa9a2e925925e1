//! Closed forms for root and quiddity counts over finite local rings.
//!
//! Every function works over unbounded integers, checks its validity domain
//! up front and refuses inexact divisions.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rings::{factorize, is_prime, prime_power, Ring, RingParams};

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn pow(base: u64, e: u64) -> BigInt {
    let e = u32::try_from(e).expect("exponent fits in u32");
    big(base).pow(e)
}

fn exact_div(num: &BigInt, den: &BigInt, context: &str) -> Result<BigInt> {
    if den.is_zero() {
        return Err(Error::InexactDivision(format!(
            "{context}: division by zero"
        )));
    }
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::InexactDivision(format!("{context}: {num} / {den}")));
    }
    Ok(q)
}

fn domain(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Domain(msg()))
    }
}

/// Split a prime power `q = p^k`, rejecting anything else.
fn split_prime_power(q: u64) -> Result<(u64, u32)> {
    prime_power(q).ok_or_else(|| Error::Domain(format!("q = {q} is not a prime power")))
}

/// Target sign `ε` of a diagonal matrix `diag(ε, ε)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "1",
            Sign::Minus => "-1",
        })
    }
}

/// Cardinalities of a finite local ring together with the integers
/// `ω = |A| + N`, `η = |A|`, `τ = -N` where `N = |A - U(A)|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalParams {
    pub size: u64,
    pub units: u64,
    pub nonunits: u64,
    pub q: u64,
}

impl LocalParams {
    pub fn from_ring(r: &Ring) -> Result<LocalParams> {
        LocalParams::from_params(&r.params()).ok_or_else(|| Error::NotLocal(r.spec().to_string()))
    }

    pub fn from_params(p: &RingParams) -> Option<LocalParams> {
        let q = p.residue_size? as u64;
        Some(LocalParams {
            size: p.size as u64,
            units: p.units as u64,
            nonunits: (p.size - p.units) as u64,
            q,
        })
    }

    pub fn omega(&self) -> BigInt {
        big(self.size + self.nonunits)
    }

    pub fn eta(&self) -> BigInt {
        big(self.size)
    }

    pub fn tau(&self) -> BigInt {
        -big(self.nonunits)
    }

    /// `ω² = |U|² + 4·N·|A|`, plus the root relations `η + τ = |U|`,
    /// `η·τ = -N·|A|`.
    pub fn identities_hold(&self) -> bool {
        let (u, n, a) = (big(self.units), big(self.nonunits), big(self.size));
        let w = self.omega();
        &w * &w == &u * &u + BigInt::from(4) * &n * &a
            && self.eta() + self.tau() == u
            && self.eta() * self.tau() == -(n * a)
            && BigInt::from(2) * self.eta() == big(self.units) + &w
            && BigInt::from(2) * self.tau() == big(self.units) - w
    }
}

/// `Σ_{u ∈ U(A)} w_n^u` for a local ring, `n ≥ 3`.
pub fn sum_w_closed_form(p: &LocalParams, n: u32) -> Result<BigInt> {
    domain(n >= 3, || format!("sum of w_n needs n >= 3, got n = {n}"))?;
    let (u, nn, a) = (big(p.units), big(p.nonunits), big(p.size));
    let (w, eta, tau) = (p.omega(), p.eta(), p.tau());
    let e = n - 3;
    let (ep, tp) = (eta.pow(e), tau.pow(e));
    let num = &u * &w * (&tp + &ep) + (BigInt::from(2) * nn * &a + &u * &u) * (ep - tp);
    exact_div(&num, &(BigInt::from(2) * w), "sum of w_n")
}

/// `w_n^u` for odd `n`, where every unit gives the same count.
pub fn w_odd_closed_form(p: &LocalParams, n: u32) -> Result<BigInt> {
    domain(n % 2 == 1, || {
        format!("the unit-independent w_n needs odd n, got n = {n}")
    })?;
    exact_div(&sum_w_closed_form(p, n)?, &big(p.units), "w_n for odd n")
}

/// `r_n = (|A|^n - Σ_u w_{n+2}^u) / N`.
pub fn roots_from_sum_w(p: &LocalParams, n: u32, sum_w_next2: &BigInt) -> Result<BigInt> {
    domain(n >= 1, || "r_n needs n >= 1".into())?;
    let num = pow(p.size, n as u64) - sum_w_next2;
    exact_div(&num, &big(p.nonunits), "r_n from the sum of w_{n+2}")
}

/// `r_n = (|A|^n - |U|·w_{n+2}^1) / N` for odd `n`.
pub fn roots_from_w_one(p: &LocalParams, n: u32, w_one_next2: &BigInt) -> Result<BigInt> {
    domain(n % 2 == 1, || {
        format!("r_n from w_{{n+2}}^1 alone needs odd n, got n = {n}")
    })?;
    let num = pow(p.size, n as u64) - big(p.units) * w_one_next2;
    exact_div(&num, &big(p.nonunits), "r_n from w_{n+2}^1")
}

/// Ring families with a closed form for `r_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// The field with `q` elements.
    Field { q: u64 },
    /// `ℤ/p^mℤ`.
    IntegersModPrimePower { p: u64, m: u32 },
    /// `F_q[X]/⟨X^m⟩`.
    TruncatedPoly { q: u64, m: u32 },
}

/// `r_n` for the ring families above; `(q^n + (-1)^{n+1}) / (q + 1)` scaled
/// by `q^{(m-1)(n-1)}`.
pub fn roots_closed_form(family: Family, n: u32) -> Result<BigInt> {
    domain(n >= 1, || "r_n needs n >= 1".into())?;
    let (q, m) = match family {
        Family::Field { q } => {
            split_prime_power(q)?;
            (q, 1)
        }
        Family::IntegersModPrimePower { p, m } => {
            domain(is_prime(p), || format!("p = {p} is not prime"))?;
            (p, m)
        }
        Family::TruncatedPoly { q, m } => {
            split_prime_power(q)?;
            (q, m)
        }
    };
    domain(m >= 1, || "m must be at least 1".into())?;
    let sign = if n % 2 == 1 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let base = exact_div(&(pow(q, n as u64) + sign), &big(q + 1), "r_n over a field")?;
    Ok(pow(q, (m as u64 - 1) * (n as u64 - 1)) * base)
}

/// Closed forms for `w_n^{±1}` over specific rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PriorSource {
    /// `w_n^{-1}(F_q)`, any characteristic, `n ≥ 2`.
    FieldMinusOne { q: u64 },
    /// `w_n^{1}(F_q)`, odd characteristic, `n ≥ 2`.
    FieldPlusOne { q: u64 },
    /// `w_n^{±1}(ℤ/2^m)` for odd `n = 2k + 1`, `k ≥ 2`, `m ≥ 1`.
    TwoPowerOdd { m: u32 },
    /// `w_n^{±1}(ℤ/4)` for even `n ≥ 4`.
    Z4Even,
    /// `w_n^{±1}` over `F_q[X]/⟨X^m⟩` or `ℤ/p^m` (residue field size `q`)
    /// for odd `n ≥ 3`.
    TruncatedOdd { q: u64, m: u32 },
}

/// Field counts: `(q^{n-1}-1)/(q²-1)` for odd `n`, and for `n = 2m`
/// `(q^m-1)(q^{m-1}-1)/(q²-1)` plus `q^{m-1}` when `extra` is set.
fn field_w(q: u64, n: u32, extra: impl Fn(u32) -> bool) -> Result<BigInt> {
    let den = big(q * q - 1);
    if n % 2 == 1 {
        return exact_div(&(pow(q, n as u64 - 1) - 1), &den, "w_n over a field, odd n");
    }
    let m = n / 2;
    let core = exact_div(
        &((pow(q, m as u64) - 1) * (pow(q, m as u64 - 1) - 1)),
        &den,
        "w_n over a field, even n",
    )?;
    Ok(if extra(m) {
        core + pow(q, m as u64 - 1)
    } else {
        core
    })
}

/// `w_n^ε` from one of the per-ring closed forms.
pub fn prior_w(source: PriorSource, n: u32, eps: Sign) -> Result<BigInt> {
    match source {
        PriorSource::FieldMinusOne { q } => {
            let (p, _) = split_prime_power(q)?;
            domain(eps == Sign::Minus || p == 2, || {
                "the field formula for target -1 needs ε = -1 (or characteristic 2)".into()
            })?;
            domain(n >= 2, || format!("needs n >= 2, got n = {n}"))?;
            field_w(q, n, |m| p == 2 || m % 2 == 1)
        }
        PriorSource::FieldPlusOne { q } => {
            let (p, _) = split_prime_power(q)?;
            domain(p > 2, || {
                "the field formula for target 1 needs odd characteristic".into()
            })?;
            domain(eps == Sign::Plus, || {
                "the field formula for target 1 needs ε = 1".into()
            })?;
            domain(n >= 2, || format!("needs n >= 2, got n = {n}"))?;
            field_w(q, n, |m| m % 2 == 0)
        }
        PriorSource::TwoPowerOdd { m } => {
            domain(m >= 1, || "needs m >= 1".into())?;
            domain(n % 2 == 1 && n >= 5, || {
                format!("needs odd n >= 5, got n = {n}")
            })?;
            let k = (n as u64 - 1) / 2;
            let scale = pow(2, 2 * (m as u64 - 1) * (k - 1));
            Ok(scale * exact_div(&(pow(4, k) - 1), &big(3), "w_n over Z/2^m")?)
        }
        PriorSource::Z4Even => {
            domain(n.is_multiple_of(2) && n >= 4, || {
                format!("needs even n >= 4, got n = {n}")
            })?;
            let half_even = (n / 2).is_multiple_of(2);
            let n = n as u64;
            let plus = pow(4, n - 2) + pow(2, n - 1);
            let minus = pow(4, n - 2) - pow(2, n - 2);
            let num = match (eps, half_even) {
                (Sign::Plus, true) | (Sign::Minus, false) => plus,
                (Sign::Minus, true) | (Sign::Plus, false) => minus,
            };
            exact_div(&num, &big(3), "w_n over Z/4")
        }
        PriorSource::TruncatedOdd { q, m } => {
            split_prime_power(q)?;
            domain(m >= 1, || "needs m >= 1".into())?;
            domain(n % 2 == 1 && n >= 3, || {
                format!("needs odd n >= 3, got n = {n}")
            })?;
            let (k, m) = (n as u64 - 2, m as u64);
            let num = pow(q, k * m + 1) - pow(q, k * (m - 1));
            let den = pow(q, m - 1) * big(q * q - 1);
            exact_div(&num, &den, "w_n over a truncated ring")
        }
    }
}

/// `w_{n+2}^ε(ℤ/p^m)` for even `n = 2l ≥ 4`; `p` odd with `m ≥ 2`, or
/// `p = 2` with `m ≥ 3`.
pub fn w_prime_power_even(p: u64, m: u32, n: u32, eps: Sign) -> Result<BigInt> {
    domain(is_prime(p), || format!("p = {p} is not prime"))?;
    domain(n.is_multiple_of(2) && n >= 4, || {
        format!("needs even n >= 4, got n = {n}")
    })?;
    let (m, n64) = (m as u64, n as u64);
    let l = n64 / 2;
    let l_even = l % 2 == 0;
    // geometric sum 1 + p^{e} + ... + p^{e(m'-1)} with e = n - 1 - l
    let geometric = |base_m: u64| {
        exact_div(
            &(pow(p, base_m * (n64 - 1 - l)) - 1),
            &(pow(p, n64 - 1 - l) - 1),
            "geometric sum",
        )
    };
    if p == 2 {
        domain(m >= 3, || format!("p = 2 needs m >= 3, got m = {m}"))?;
        let scale = pow(2, (m - 2) * (n64 - 1));
        let c = &scale * exact_div(&(pow(4, n64) - pow(2, n64)), &big(3), "w over Z/2^m")?;
        let d = scale * exact_div(&(pow(4, n64) + pow(2, n64 + 1)), &big(3), "w over Z/2^m")?
            + geometric(m - 2)? * pow(2, m * l - 1);
        return Ok(match (eps, l_even) {
            (Sign::Plus, true) | (Sign::Minus, false) => c,
            _ => d,
        });
    }
    domain(m >= 2, || format!("odd p needs m >= 2, got m = {m}"))?;
    let scale = pow(p, (m - 1) * (n64 - 1));
    let core = exact_div(
        &((pow(p, l + 1) - 1) * (pow(p, l) - 1)),
        &big(p * p - 1),
        "w over Z/p^m",
    )?;
    let a = &scale * &core;
    let b = scale * (core + pow(p, l)) + geometric(m - 1)? * pow(p, m * l - 1) * big(p - 1);
    Ok(match (eps, l_even) {
        (Sign::Plus, true) | (Sign::Minus, false) => a,
        _ => b,
    })
}

/// Small counts over `ℤ/p^m`, `m ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum W4Case {
    /// `w_4^{-1}` for odd `p`: `p^{m-1}(p-1)`.
    MinusOneOddPrime,
    /// `w_4^{1}`: `p^{m-1}(p(m+1) - m)`.
    PlusOne,
    /// `w_4^{-1}` for `p = 2`, `m ≥ 3`: `2^m`.
    MinusOneTwo,
    /// `Σ_{j=0}^{p-1} |R_2^{-1-jp^{m-1}}|`: `p^m(m(p-1) + 1)`.
    RootSum,
}

pub fn w4_prime_power(p: u64, m: u32, case: W4Case) -> Result<BigInt> {
    domain(is_prime(p), || format!("p = {p} is not prime"))?;
    domain(m >= 2, || format!("needs m >= 2, got m = {m}"))?;
    let m64 = m as u64;
    Ok(match case {
        W4Case::MinusOneOddPrime => {
            domain(p > 2, || "this case needs odd p".into())?;
            pow(p, m64 - 1) * big(p - 1)
        }
        W4Case::PlusOne => pow(p, m64 - 1) * big(p * (m64 + 1) - m64),
        W4Case::MinusOneTwo => {
            domain(p == 2 && m >= 3, || {
                "this case needs p = 2 and m >= 3".into()
            })?;
            pow(2, m64)
        }
        W4Case::RootSum => pow(p, m64) * big(m64 * (p - 1) + 1),
    })
}

/// Lift `w_n^ε` from the residue field: `w_n^ε(A/𝔪) · N^{n-3}`.
///
/// Requires `n ≥ 3` and either odd `n`, or even `n` with `(-1)^{n/2} ≠ ε`
/// and odd residue characteristic.
pub fn residue_reduction(
    p: &LocalParams,
    residue_count: &BigInt,
    n: u32,
    eps: Sign,
) -> Result<BigInt> {
    domain(n >= 3, || format!("needs n >= 3, got n = {n}"))?;
    if n.is_multiple_of(2) {
        let parity = if (n / 2).is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        };
        domain(parity != eps, || {
            format!("even n = {n} needs (-1)^(n/2) != ε, but both are {eps}")
        })?;
        domain(p.q % 2 == 1, || {
            "even n needs odd residue characteristic".into()
        })?;
    }
    Ok(residue_count * pow(p.nonunits, n as u64 - 3))
}

/// `r_n(ℤ/N)` as the product of prime-power factors.
pub fn crt_roots(modulus: u64, n: u32) -> Result<BigInt> {
    domain(modulus >= 2, || "N must be at least 2".into())?;
    factorize(modulus)
        .into_iter()
        .try_fold(BigInt::one(), |acc, (p, m)| {
            Ok(acc * roots_closed_form(Family::IntegersModPrimePower { p, m }, n)?)
        })
}

/// `|R_{2m}^u(F_q)|` for a unit `u ∉ {1, -1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericUnitRoots {
    pub value: BigInt,
    /// No such unit exists (`q ≤ 3`), so the value counts nothing.
    pub vacuous: bool,
}

pub fn field_roots_generic_unit(q: u64, m: u32) -> Result<GenericUnitRoots> {
    split_prime_power(q)?;
    domain(m >= 2, || format!("needs m >= 2, got m = {m}"))?;
    let m = m as u64;
    let value = exact_div(
        &((pow(q, m + 1) - 1) * (pow(q, m) - 1)),
        &big(q * q - 1),
        "roots at a generic unit",
    )?;
    Ok(GenericUnitRoots {
        value,
        vacuous: q <= 3,
    })
}

/// What a count measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Roots,
    Quiddity,
    SumW,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Roots => "roots",
            Kind::Quiddity => "quiddity",
            Kind::SumW => "sum-w",
        })
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kind> {
        match s {
            "roots" => Ok(Kind::Roots),
            "quiddity" => Ok(Kind::Quiddity),
            "sum-w" | "sum_w" => Ok(Kind::SumW),
            other => Err(Error::Invalid(format!("unknown count kind {other:?}"))),
        }
    }
}

/// One computed count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub ring: String,
    pub n: u32,
    pub kind: Kind,
    pub target: String,
    pub method: String,
    #[serde(with = "decimal")]
    pub value: BigUint,
}

/// Counts serialize as decimal strings.
pub(crate) mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

/// Convert a closed-form value to a count, rejecting negatives.
pub fn to_count(v: BigInt) -> Result<BigUint> {
    if v.is_negative() {
        return Err(Error::Domain(format!(
            "closed form produced a negative count {v}"
        )));
    }
    Ok(v.magnitude().clone())
}
