use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use super::dispatch::formula_value;
use crate::continuant::Mat2;
use crate::enumerate::{
    check_budget, count_continuant_roots, count_tuples, Budgets, Count, DpCounter,
};
use crate::error::{Error, Result};
use crate::formulas::Kind;
use crate::rings::{Elem, Ring};

/// How a single value was (or is to be) obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellMethod {
    Formula,
    Dp,
    Brute,
}

impl CellMethod {
    pub const ALL: [CellMethod; 3] = [CellMethod::Formula, CellMethod::Dp, CellMethod::Brute];
}

impl fmt::Display for CellMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CellMethod::Formula => "formula",
            CellMethod::Dp => "dp",
            CellMethod::Brute => "brute",
        })
    }
}

impl FromStr for CellMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<CellMethod> {
        match s {
            "formula" => Ok(CellMethod::Formula),
            "dp" => Ok(CellMethod::Dp),
            "brute" => Ok(CellMethod::Brute),
            other => Err(Error::Invalid(format!("unknown method {other:?}"))),
        }
    }
}

/// Counting front end for one ring. DP vectors are built lazily and reused
/// across cells; fixed-width counts are used whenever `|A|^n` fits in 128
/// bits.
pub struct RingEngine {
    ring: Ring,
    budgets: Budgets,
    wide: Option<DpCounter<u128>>,
    big: Option<DpCounter<BigUint>>,
}

impl RingEngine {
    pub fn new(ring: Ring, budgets: Budgets) -> RingEngine {
        RingEngine {
            ring,
            budgets,
            wide: None,
            big: None,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Whether `method` can run on this cell within budget.
    pub fn applicable(&self, method: CellMethod, kind: Kind, n: u32, target: Elem) -> bool {
        match method {
            CellMethod::Formula => formula_value(&self.ring, kind, n, target).is_some(),
            CellMethod::Dp => self.ring.size() <= self.budgets.sl2_ring_size,
            CellMethod::Brute => {
                (n >= 1 || kind == Kind::Roots)
                    && check_budget(&self.ring, n as usize, self.budgets.brute_leaves).is_ok()
            }
        }
    }

    /// The cheapest applicable method: formula, then DP, then brute force.
    pub fn auto(&mut self, kind: Kind, n: u32, target: Elem) -> Result<(CellMethod, BigUint)> {
        let method = CellMethod::ALL
            .into_iter()
            .find(|&m| self.applicable(m, kind, n, target))
            .ok_or_else(|| {
                Error::Budget(format!(
                    "no method fits the budgets for {kind} n={n} over {}",
                    self.ring.spec()
                ))
            })?;
        Ok((method, self.compute(method, kind, n, target)?))
    }

    pub fn compute(
        &mut self,
        method: CellMethod,
        kind: Kind,
        n: u32,
        target: Elem,
    ) -> Result<BigUint> {
        if kind == Kind::Quiddity && !self.ring.is_unit(target) {
            return Err(Error::NotUnit(self.ring.display(target)));
        }
        match method {
            CellMethod::Formula => {
                formula_value(&self.ring, kind, n, target).unwrap_or_else(|| {
                    Err(Error::Domain(format!(
                        "no closed form covers {kind} n={n} over {}",
                        self.ring.spec()
                    )))
                })
            }
            CellMethod::Dp => self.dp(kind, n as usize, target),
            CellMethod::Brute => self.brute(kind, n as usize, target),
        }
    }

    fn dp(&mut self, kind: Kind, n: usize, target: Elem) -> Result<BigUint> {
        let bound = BigUint::from(self.ring.size()).pow(n as u32);
        if <u128 as Count>::holds(&bound) {
            if self.wide.is_none() {
                self.wide = Some(DpCounter::new(&self.ring, self.budgets.sl2_ring_size)?);
            }
            let c = self.wide.as_mut().expect("just built");
            return Ok(BigUint::from(dp_value(c, kind, n, target)?));
        }
        if self.big.is_none() {
            self.big = Some(DpCounter::new(&self.ring, self.budgets.sl2_ring_size)?);
        }
        dp_value(self.big.as_mut().expect("just built"), kind, n, target)
    }

    fn brute(&self, kind: Kind, n: usize, target: Elem) -> Result<BigUint> {
        let r = &self.ring;
        let budget = self.budgets.brute_leaves;
        let count = match kind {
            Kind::Roots => count_continuant_roots(r, n, target, budget)?,
            Kind::Quiddity => {
                let inv = r
                    .inverse(target)
                    .ok_or_else(|| Error::NotUnit(r.display(target)))?;
                let b = Mat2::diag(r, target, inv);
                count_tuples(r, n, budget, |m| *m == b)?
            }
            Kind::SumW => count_tuples(r, n, budget, |m| {
                m.a12 == r.zero() && m.a21 == r.zero() && r.is_unit(m.a11)
            })?,
        };
        Ok(count.into())
    }
}

fn dp_value<C: Count>(c: &mut DpCounter<C>, kind: Kind, n: usize, target: Elem) -> Result<C> {
    match kind {
        Kind::Roots => c.roots(n, target),
        Kind::Quiddity => c.quiddity(n, target),
        Kind::SumW => c.sum_w(n),
    }
}
