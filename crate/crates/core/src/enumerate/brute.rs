//! Exhaustive enumeration of `A^n`, depth first.
//!
//! `M_n` is assembled from two continuant recurrences run side by side, one
//! over `(a_1, ...)` and one over `(a_2, ...)`, so this path shares no code
//! with the matrix-product DP.

use rayon::prelude::*;

use crate::continuant::Mat2;
use crate::error::{Error, Result};
use crate::rings::{Elem, Ring};

/// Consecutive continuants `(K_{k-1}, K_k)`.
#[derive(Clone, Copy)]
struct Pair {
    prev: Elem,
    cur: Elem,
}

impl Pair {
    fn push(self, r: &Ring, a: Elem) -> Pair {
        Pair {
            prev: self.cur,
            cur: r.sub(r.mul(a, self.cur), self.prev),
        }
    }
}

/// Number of leaves `|A|^n`, or an error when it exceeds `budget`.
pub fn check_budget(r: &Ring, n: usize, budget: u128) -> Result<u128> {
    match (r.size() as u128).checked_pow(n as u32) {
        Some(leaves) if leaves <= budget => Ok(leaves),
        _ => Err(Error::Budget(format!(
            "brute force over {}^{n} tuples exceeds the budget of {budget}",
            r.size()
        ))),
    }
}

/// Count the tuples in `A^n` (n ≥ 1) whose `M_n` satisfies `accept`.
pub fn count_tuples<F>(r: &Ring, n: usize, budget: u128, accept: F) -> Result<u64>
where
    F: Fn(&Mat2) -> bool + Sync,
{
    if n == 0 {
        return Err(Error::Invalid("M_n needs n >= 1".into()));
    }
    check_budget(r, n, budget)?;
    let firsts: Vec<Elem> = r.elements().collect();
    let total = firsts
        .par_iter()
        .map(|&a1| {
            let full = Pair {
                prev: r.one(),
                cur: a1,
            };
            let tail = Pair {
                prev: r.zero(),
                cur: r.one(),
            };
            descend(r, n - 1, full, tail, &accept)
        })
        .sum();
    Ok(total)
}

fn descend<F>(r: &Ring, left: usize, full: Pair, tail: Pair, accept: &F) -> u64
where
    F: Fn(&Mat2) -> bool,
{
    if left == 0 {
        let m = Mat2::new(full.cur, r.neg(tail.cur), full.prev, r.neg(tail.prev));
        return accept(&m) as u64;
    }
    r.elements()
        .map(|a| descend(r, left - 1, full.push(r, a), tail.push(r, a), accept))
        .sum()
}

/// Count the tuples in `A^n` with `K_n = target`, tracking only one
/// continuant pair.
pub fn count_continuant_roots(r: &Ring, n: usize, target: Elem, budget: u128) -> Result<u64> {
    check_budget(r, n, budget)?;
    let start = Pair {
        prev: r.zero(),
        cur: r.one(),
    };
    if n == 0 {
        return Ok((start.cur == target) as u64);
    }
    let firsts: Vec<Elem> = r.elements().collect();
    Ok(firsts
        .par_iter()
        .map(|&a1| roots_below(r, n - 1, start.push(r, a1), target))
        .sum())
}

fn roots_below(r: &Ring, left: usize, k: Pair, target: Elem) -> u64 {
    if left == 0 {
        return (k.cur == target) as u64;
    }
    r.elements()
        .map(|a| roots_below(r, left - 1, k.push(r, a), target))
        .sum()
}
