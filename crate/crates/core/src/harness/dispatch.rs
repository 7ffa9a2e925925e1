//! Choosing a closed form for a `(ring, kind, n, target)` cell.

use num_bigint::{BigInt, BigUint};

use crate::error::Result;
use crate::formulas::{
    crt_roots, prior_w, residue_reduction, roots_closed_form, roots_from_sum_w, sum_w_closed_form,
    to_count, w4_prime_power, w_odd_closed_form, w_prime_power_even, Family, Kind, LocalParams,
    PriorSource, Sign, W4Case,
};
use crate::rings::{prime_power, Elem, IntPoly, Ring, RingSpec};

/// Ring families recognised from the ring spec and the computed parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Field {
        p: u64,
        q: u64,
    },
    /// `ℤ/p^m` with `m ≥ 2`.
    ZmodPrimePower {
        p: u64,
        m: u32,
    },
    /// `F_q[X]/⟨X^m⟩`, `m ≥ 2`.
    TruncatedPoly {
        q: u64,
        m: u32,
    },
    /// `ℤ/N` with `N` not a prime power.
    ZmodComposite {
        n: u64,
    },
    OtherLocal,
    OtherNonLocal,
}

pub fn shape_of(r: &Ring) -> Shape {
    let params = r.params();
    if params.is_local && params.size - params.units == 1 {
        let q = params.size as u64;
        let (p, _) = prime_power(q).expect("finite fields have prime power order");
        return Shape::Field { p, q };
    }
    match r.spec() {
        RingSpec::Zmod(n) => match prime_power(*n) {
            Some((p, m)) => Shape::ZmodPrimePower { p, m },
            None => Shape::ZmodComposite { n: *n },
        },
        RingSpec::PolyQuot { base, relations } if params.is_local => {
            let base_field = match base.as_ref() {
                RingSpec::Gf { p, k, .. } => Some(p.pow(*k)),
                RingSpec::Zmod(p) if crate::rings::is_prime(*p) => Some(*p),
                _ => None,
            };
            match (base_field, relations.as_slice()) {
                (Some(q), [rel]) => match monomial_power(rel) {
                    Some(m) if m >= 2 => Shape::TruncatedPoly { q, m },
                    _ => Shape::OtherLocal,
                },
                _ => Shape::OtherLocal,
            }
        }
        _ if params.is_local => Shape::OtherLocal,
        _ => Shape::OtherNonLocal,
    }
}

fn monomial_power(p: &IntPoly) -> Option<u32> {
    let terms: Vec<_> = p.terms().collect();
    match terms.as_slice() {
        [((m, 0), 1)] => Some(*m),
        _ => None,
    }
}

fn sign_of(r: &Ring, u: Elem) -> Option<Sign> {
    if u == r.one() {
        Some(Sign::Plus)
    } else if u == r.neg(r.one()) {
        Some(Sign::Minus)
    } else {
        None
    }
}

fn field_prior(p: u64, q: u64, eps: Sign) -> PriorSource {
    if p == 2 || eps == Sign::Minus {
        PriorSource::FieldMinusOne { q }
    } else {
        PriorSource::FieldPlusOne { q }
    }
}

/// The closed-form value of a cell, or `None` when no formula covers it.
pub fn formula_value(r: &Ring, kind: Kind, n: u32, target: Elem) -> Option<Result<BigUint>> {
    let value = match kind {
        Kind::Roots => roots_formula(r, n, target),
        Kind::Quiddity => quiddity_formula(r, n, target),
        Kind::SumW => {
            let params = LocalParams::from_ring(r).ok()?;
            (n >= 3).then(|| sum_w_closed_form(&params, n))
        }
    }?;
    Some(value.and_then(to_count))
}

fn roots_formula(r: &Ring, n: u32, target: Elem) -> Option<Result<BigInt>> {
    if n == 0 {
        return None;
    }
    let shape = shape_of(r);
    if let Shape::ZmodComposite { n: modulus } = shape {
        return (target == r.zero()).then(|| crt_roots(modulus, n));
    }
    let params = LocalParams::from_ring(r).ok()?;
    if r.is_unit(target) {
        // odd n: every unit target has the count of w_{n+2}^1
        return (n % 2 == 1).then(|| w_odd_closed_form(&params, n + 2));
    }
    let family = match shape {
        Shape::Field { q, .. } => Some(Family::Field { q }),
        Shape::ZmodPrimePower { p, m } => Some(Family::IntegersModPrimePower { p, m }),
        Shape::TruncatedPoly { q, m } => Some(Family::TruncatedPoly { q, m }),
        _ => None,
    };
    Some(match family {
        Some(f) => roots_closed_form(f, n),
        None => sum_w_closed_form(&params, n + 2).and_then(|s| roots_from_sum_w(&params, n, &s)),
    })
}

fn quiddity_formula(r: &Ring, n: u32, u: Elem) -> Option<Result<BigInt>> {
    let params = LocalParams::from_ring(r).ok()?;
    if !r.is_unit(u) || n < 2 {
        return None;
    }
    if n % 2 == 1 {
        return (n >= 3).then(|| w_odd_closed_form(&params, n));
    }
    let eps = sign_of(r, u)?;
    match shape_of(r) {
        Shape::Field { p, q } => Some(prior_w(field_prior(p, q, eps), n, eps)),
        Shape::ZmodPrimePower { p: 2, m: 2 } if n >= 4 => {
            Some(prior_w(PriorSource::Z4Even, n, eps))
        }
        Shape::ZmodPrimePower { p, m } if n == 4 && (p > 2 || m >= 3) => {
            let case = match (eps, p) {
                (Sign::Plus, _) => W4Case::PlusOne,
                (Sign::Minus, 2) => W4Case::MinusOneTwo,
                (Sign::Minus, _) => W4Case::MinusOneOddPrime,
            };
            Some(w4_prime_power(p, m, case))
        }
        Shape::ZmodPrimePower { p, m } if n >= 6 && (p > 2 || m >= 3) => {
            Some(w_prime_power_even(p, m, n - 2, eps))
        }
        _ => residue_formula(&params, n, eps),
    }
}

/// Lift a residue-field count when the parity condition allows it.
fn residue_formula(params: &LocalParams, n: u32, eps: Sign) -> Option<Result<BigInt>> {
    let parity = if (n / 2).is_multiple_of(2) {
        Sign::Plus
    } else {
        Sign::Minus
    };
    if n < 4 || parity == eps || params.q.is_multiple_of(2) {
        return None;
    }
    let (p, _) = prime_power(params.q)?;
    let residue = match prior_w(field_prior(p, params.q, eps), n, eps) {
        Ok(v) => v,
        Err(e) => return Some(Err(e)),
    };
    Some(residue_reduction(params, &residue, n, eps))
}
