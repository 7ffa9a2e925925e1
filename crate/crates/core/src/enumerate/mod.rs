//! Exact counts of continuant roots `R_n^a` and matrix fibres `Ω_n^B`.
//!
//! Two independent methods: exhaustive enumeration of `A^n`, and a
//! transfer-matrix DP that propagates counts over `SL₂(A)`.

mod brute;
mod dp;
mod sl2;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::continuant::Mat2;
use crate::error::{Error, Result};
use crate::rings::{Elem, Ring};

pub use brute::{check_budget, count_continuant_roots, count_tuples};
pub use dp::{Count, CountVec, DpCounter};
pub use sl2::Sl2Table;

/// Default leaf budget for exhaustive enumeration.
pub const DEFAULT_BRUTE_BUDGET: u128 = 100_000_000;

/// Default largest ring whose SL₂ is scanned.
pub const DEFAULT_SL2_RING_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    /// Maximum number of tuples visited by brute force.
    pub brute_leaves: u128,
    /// Maximum `|A|` for the SL₂ scan.
    pub sl2_ring_size: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            brute_leaves: DEFAULT_BRUTE_BUDGET,
            sl2_ring_size: DEFAULT_SL2_RING_LIMIT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Brute,
    Dp,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Brute => "brute",
            Method::Dp => "dp",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        match s {
            "brute" => Ok(Method::Brute),
            "dp" => Ok(Method::Dp),
            other => Err(Error::Invalid(format!("unknown counting method {other:?}"))),
        }
    }
}

/// The DP vector for `n`: entry `i` is `|Ω_n^B|` for `B = table.matrix(i)`.
pub fn count_matrix_targets_dp(
    r: &Ring,
    n: usize,
    budgets: &Budgets,
) -> Result<(Sl2Table, CountVec<BigUint>)> {
    let mut counter = DpCounter::<BigUint>::new(r, budgets.sl2_ring_size)?;
    let v = counter.vector(n)?.clone();
    Ok((counter.table().clone(), v))
}

/// `|Ω_n^B|` for an arbitrary matrix `B`.
pub fn count_omega(
    r: &Ring,
    n: usize,
    b: &Mat2,
    method: Method,
    budgets: &Budgets,
) -> Result<BigUint> {
    match method {
        Method::Brute => Ok(count_tuples(r, n, budgets.brute_leaves, |m| m == b)?.into()),
        Method::Dp => DpCounter::<BigUint>::new(r, budgets.sl2_ring_size)?.omega(n, b),
    }
}

/// `|R_n^a|`.
pub fn count_roots(
    r: &Ring,
    n: usize,
    a: Elem,
    method: Method,
    budgets: &Budgets,
) -> Result<BigUint> {
    match method {
        Method::Brute => Ok(count_continuant_roots(r, n, a, budgets.brute_leaves)?.into()),
        Method::Dp => DpCounter::<BigUint>::new(r, budgets.sl2_ring_size)?.roots(n, a),
    }
}

/// `w_n^u`, the number of tuples with `M_n = diag(u, u⁻¹)`.
pub fn count_quiddity(
    r: &Ring,
    n: usize,
    u: Elem,
    method: Method,
    budgets: &Budgets,
) -> Result<BigUint> {
    let inv = r.inverse(u).ok_or_else(|| Error::NotUnit(r.display(u)))?;
    count_omega(r, n, &Mat2::diag(r, u, inv), method, budgets)
}

/// `Σ_{u ∈ U(A)} w_n^u`.
pub fn sum_w_over_units(r: &Ring, n: usize, method: Method, budgets: &Budgets) -> Result<BigUint> {
    match method {
        Method::Brute => {
            let count = count_tuples(r, n, budgets.brute_leaves, |m| {
                m.a12 == r.zero() && m.a21 == r.zero() && r.is_unit(m.a11)
            })?;
            Ok(count.into())
        }
        Method::Dp => DpCounter::<BigUint>::new(r, budgets.sl2_ring_size)?.sum_w(n),
    }
}
