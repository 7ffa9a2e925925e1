//! Named property checks run against one ring.

use std::fmt;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dispatch::formula_value;
use crate::continuant::{continuant_of, contract_five, contract_four, m_matrix_of, Mat2, Tuple};
use crate::enumerate::{check_budget, count_continuant_roots, count_tuples, Budgets, DpCounter};
use crate::error::Result;
use crate::formulas::{roots_from_sum_w, roots_from_w_one, sum_w_closed_form, Kind, LocalParams};
use crate::rings::{Elem, Ring};

/// Cap on exhaustively visited tuples for the structural checks.
const STRUCTURAL_LIMIT: u128 = 2_000_000;

/// Random samples drawn when a structural check is too large to exhaust.
const SAMPLES: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass(String),
    Fail(String),
    Skip(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub verdict: Verdict,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        matches!(self.verdict, Verdict::Pass(_))
    }

    pub fn failed(&self) -> bool {
        matches!(self.verdict, Verdict::Fail(_))
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Verdict::Pass(d) => write!(f, "PASS {}: {d}", self.name),
            Verdict::Fail(d) => write!(f, "FAIL {}: {d}", self.name),
            Verdict::Skip(d) => write!(f, "SKIP {}: {d}", self.name),
        }
    }
}

fn result(name: &'static str, outcome: Result<std::result::Result<String, String>>) -> CheckResult {
    let verdict = match outcome {
        Ok(Ok(detail)) => Verdict::Pass(detail),
        Ok(Err(counterexample)) => Verdict::Fail(counterexample),
        Err(e) => Verdict::Skip(e.to_string()),
    };
    CheckResult { name, verdict }
}

fn skip(name: &'static str, reason: &str) -> CheckResult {
    CheckResult {
        name,
        verdict: Verdict::Skip(reason.to_string()),
    }
}

/// Visit every tuple of length `n`, or a seeded sample when there are more
/// than `limit` of them. Stops at the first `Err`.
fn for_tuples(
    r: &Ring,
    n: usize,
    limit: u128,
    seed: u64,
    mut visit: impl FnMut(&[Elem]) -> std::result::Result<(), String>,
) -> std::result::Result<usize, String> {
    let size = r.size() as u128;
    let total = size.checked_pow(n as u32).unwrap_or(u128::MAX);
    let mut t = vec![Elem(0); n];
    if total <= limit {
        for idx in 0..total {
            let mut v = idx;
            for slot in t.iter_mut() {
                *slot = Elem((v % size) as u32);
                v /= size;
            }
            visit(&t)?;
        }
        return Ok(total as usize);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLES {
        for slot in t.iter_mut() {
            *slot = Elem(rng.gen_range(0..r.size() as u32));
        }
        visit(&t)?;
    }
    Ok(SAMPLES)
}

fn show(r: &Ring, t: &[Elem]) -> String {
    let parts: Vec<String> = t.iter().map(|&e| r.display(e)).collect();
    format!("({})", parts.join(","))
}

/// All checks, in a fixed order.
pub fn run_all(r: &Ring, max_n: u32, budgets: &Budgets) -> Vec<CheckResult> {
    let mut dp = DpCounter::<BigUint>::new(r, budgets.sl2_ring_size);
    let mut out = vec![
        entry_identity(r, max_n),
        determinant_one(r, max_n),
        reversal_symmetry(r, max_n),
        contraction_one(r),
        contraction_zero(r),
        contraction_four(r),
        contraction_five(r),
        alternate_scaling(r, max_n, budgets),
        params_identities(r),
    ];
    match dp.as_mut() {
        Ok(dp) => out.extend([
            brute_vs_dp(r, dp, max_n, budgets),
            conservation(dp, max_n),
            nonunit_targets_equal(r, dp, max_n),
            unit_roots_via_shifted_matrix(r, dp, max_n),
            odd_unit_roots_via_identity(r, dp, max_n),
            roots_nonempty(r, dp, max_n),
            partition(r, max_n, budgets),
            sum_w_closed_form_vs_dp(r, dp, max_n),
            roots_from_w_vs_dp(r, dp, max_n),
            formulas_vs_dp(r, dp, max_n),
        ]),
        Err(e) => {
            let reason = e.to_string();
            for name in [
                "brute-vs-dp",
                "dp-conservation",
                "nonunit-targets-equal",
                "unit-roots-shifted-matrix",
                "odd-unit-roots-identity",
                "roots-nonempty",
            ] {
                out.push(skip(name, &reason));
            }
            out.push(partition(r, max_n, budgets));
            for name in ["sum-w-closed-form", "roots-from-w", "formulas-vs-dp"] {
                out.push(skip(name, &reason));
            }
        }
    }
    out
}

pub fn entry_identity(r: &Ring, max_n: u32) -> CheckResult {
    let outcome = (|| {
        let mut seen = 0;
        for n in 1..=max_n as usize {
            seen += for_tuples(r, n, STRUCTURAL_LIMIT, n as u64, |t| {
                let tuple = Tuple::new(r, t.to_vec()).expect("indices come from the ring");
                if crate::continuant::check_entry_identity(&tuple) {
                    Ok(())
                } else {
                    Err(format!(
                        "entries of M_n{} are not the continuants",
                        show(r, t)
                    ))
                }
            })?;
        }
        Ok(format!("{seen} tuples"))
    })();
    result("entry-identity", Ok(outcome))
}

pub fn determinant_one(r: &Ring, max_n: u32) -> CheckResult {
    let outcome = (|| {
        let mut seen = 0;
        for n in 1..=max_n as usize {
            seen += for_tuples(r, n, STRUCTURAL_LIMIT, 100 + n as u64, |t| {
                let m = m_matrix_of(r, t).expect("nonempty");
                if m.det(r) == r.one() {
                    Ok(())
                } else {
                    Err(format!("det M_n{} != 1", show(r, t)))
                }
            })?;
        }
        Ok(format!("{seen} tuples"))
    })();
    result("det-one", Ok(outcome))
}

pub fn reversal_symmetry(r: &Ring, max_n: u32) -> CheckResult {
    let outcome = (|| {
        let mut seen = 0;
        for n in 0..=max_n as usize {
            seen += for_tuples(r, n, STRUCTURAL_LIMIT, 200 + n as u64, |t| {
                let rev: Vec<Elem> = t.iter().rev().copied().collect();
                if continuant_of(r, t) == continuant_of(r, &rev) {
                    Ok(())
                } else {
                    Err(format!("K_n{} != K_n of the reversed tuple", show(r, t)))
                }
            })?;
        }
        Ok(format!("{seen} tuples"))
    })();
    result("reversal-symmetry", Ok(outcome))
}

fn m(r: &Ring, t: &[Elem]) -> Mat2 {
    m_matrix_of(r, t).expect("nonempty")
}

pub fn contraction_one(r: &Ring) -> CheckResult {
    let one = r.one();
    let outcome = for_tuples(r, 2, STRUCTURAL_LIMIT, 300, |t| {
        let (a, b) = (t[0], t[1]);
        if m(r, &[a, one, b]) == m(r, &[r.sub(a, one), r.sub(b, one)]) {
            Ok(())
        } else {
            Err(format!(
                "M_3(a,1,b) != M_2(a-1,b-1) at (a,b)={}",
                show(r, t)
            ))
        }
    })
    .map(|k| format!("{k} pairs"));
    result("contract-unit-one", Ok(outcome))
}

pub fn contraction_zero(r: &Ring) -> CheckResult {
    let outcome = for_tuples(r, 2, STRUCTURAL_LIMIT, 301, |t| {
        let (a, b) = (t[0], t[1]);
        if m(r, &[a, r.zero(), b]) == m(r, &[r.add(a, b)]).neg(r) {
            Ok(())
        } else {
            Err(format!("M_3(a,0,b) != -M_1(a+b) at (a,b)={}", show(r, t)))
        }
    })
    .map(|k| format!("{k} pairs"));
    result("contract-zero", Ok(outcome))
}

pub fn contraction_four(r: &Ring) -> CheckResult {
    let mut applied = 0usize;
    let outcome = for_tuples(r, 4, STRUCTURAL_LIMIT, 302, |t| {
        let Some(c) = contract_four(r, t[0], t[1], t[2], t[3]) else {
            return Ok(());
        };
        applied += 1;
        if m(r, t) == m(r, &c) {
            Ok(())
        } else {
            Err(format!("M_4{} != M_3{}", show(r, t), show(r, &c)))
        }
    })
    .map(|k| format!("{applied} of {k} tuples in domain"));
    result("contract-four", Ok(outcome))
}

pub fn contraction_five(r: &Ring) -> CheckResult {
    let mut applied = 0usize;
    let outcome = for_tuples(r, 5, STRUCTURAL_LIMIT, 303, |t| {
        let Some(c) = contract_five(r, t[0], t[1], t[2], t[3], t[4]) else {
            return Ok(());
        };
        applied += 1;
        if m(r, t) == m(r, &c) {
            Ok(())
        } else {
            Err(format!("M_5{} != M_3{}", show(r, t), show(r, &c)))
        }
    })
    .map(|k| format!("{applied} of {k} tuples in domain"));
    result("contract-five", Ok(outcome))
}

/// Scaling `(λa_1, λ⁻¹a_2, ...)` keeps `diag(u, u⁻¹)` for even `n` and
/// turns it into `diag(λu, λ⁻¹u⁻¹)` for odd `n`.
pub fn alternate_scaling(r: &Ring, max_n: u32, budgets: &Budgets) -> CheckResult {
    let units = r.units();
    let outcome = (|| {
        let mut hits = 0usize;
        let mut largest = 0;
        for n in 1..=max_n as usize {
            if check_budget(r, n, budgets.brute_leaves.min(STRUCTURAL_LIMIT)).is_err() {
                break;
            }
            largest = n;
            for_tuples(r, n, STRUCTURAL_LIMIT, 400, |t| {
                let mt = m(r, t);
                if mt.a12 != r.zero() || mt.a21 != r.zero() || !r.is_unit(mt.a11) {
                    return Ok(());
                }
                hits += 1;
                let tuple = Tuple::new(r, t.to_vec()).expect("indices come from the ring");
                for &lambda in &units {
                    let scaled = tuple.alternate_scale(lambda).expect("unit");
                    let got = m(r, scaled.entries());
                    let want = if n % 2 == 0 {
                        mt
                    } else {
                        let inv = r.inverse(lambda).expect("unit");
                        Mat2::diag(r, r.mul(lambda, mt.a11), r.mul(inv, mt.a22))
                    };
                    if got != want {
                        return Err(format!(
                            "scaling {} by {} gives {}",
                            show(r, t),
                            r.display(lambda),
                            got.display(r)
                        ));
                    }
                }
                Ok(())
            })?;
        }
        if largest == 0 {
            return Ok("no n within budget".into());
        }
        Ok(format!("{hits} diagonal solutions, n <= {largest}"))
    })();
    result("alternate-scaling", Ok(outcome))
}

pub fn params_identities(r: &Ring) -> CheckResult {
    match LocalParams::from_ring(r) {
        Ok(p) if p.identities_hold() => CheckResult {
            name: "local-params",
            verdict: Verdict::Pass(format!(
                "omega={} eta={} tau={}",
                p.omega(),
                p.eta(),
                p.tau()
            )),
        },
        Ok(p) => CheckResult {
            name: "local-params",
            verdict: Verdict::Fail(format!("{p:?}")),
        },
        Err(_) => skip("local-params", "ring is not local"),
    }
}

fn brute_vs_dp(
    r: &Ring,
    dp: &mut DpCounter<BigUint>,
    max_n: u32,
    budgets: &Budgets,
) -> CheckResult {
    let outcome = (|| {
        let mut cells = 0;
        for n in 1..=max_n as usize {
            if check_budget(r, n, budgets.brute_leaves).is_err() {
                break;
            }
            let roots = dp.roots_by_target(n)?;
            for a in r.elements() {
                let b = BigUint::from(count_continuant_roots(r, n, a, budgets.brute_leaves)?);
                if b != roots[a.index()] {
                    return Ok(Err(format!(
                        "roots n={n} target {}: brute {b}, dp {}",
                        r.display(a),
                        roots[a.index()]
                    )));
                }
                cells += 1;
            }
            for u in r.units() {
                let inv = r.inverse(u).expect("unit");
                let target = Mat2::diag(r, u, inv);
                let b = BigUint::from(count_tuples(r, n, budgets.brute_leaves, |m| *m == target)?);
                let d = dp.quiddity(n, u)?;
                if b != d {
                    return Ok(Err(format!(
                        "quiddity n={n} target {}: brute {b}, dp {d}",
                        r.display(u)
                    )));
                }
                cells += 1;
            }
        }
        if cells == 0 {
            return Err(crate::error::Error::Budget(
                "no n within the brute budget".into(),
            ));
        }
        Ok(Ok(format!("{cells} cells agree")))
    })();
    result("brute-vs-dp", outcome)
}

fn conservation(dp: &mut DpCounter<BigUint>, max_n: u32) -> CheckResult {
    let size = BigUint::from(dp.ring().size());
    let outcome = (|| {
        for n in 0..=max_n as usize {
            let total = dp.vector(n)?.total();
            if total != size.pow(n as u32) {
                return Ok(Err(format!("n={n}: total {total}")));
            }
        }
        Ok(Ok(format!("n = 0..={max_n}")))
    })();
    result("dp-conservation", outcome)
}

fn nonunit_targets_equal(r: &Ring, dp: &mut DpCounter<BigUint>, max_n: u32) -> CheckResult {
    if !r.is_local() {
        return skip("nonunit-targets-equal", "ring is not local");
    }
    let nonunits = r.nonunits();
    let outcome = (|| {
        for n in 2..=max_n as usize {
            let roots = dp.roots_by_target(n)?;
            let first = &roots[nonunits[0].index()];
            if let Some(a) = nonunits.iter().find(|a| &roots[a.index()] != first) {
                return Ok(Err(format!(
                    "n={n}: |R^{}| = {} but |R^0| = {first}",
                    r.display(*a),
                    roots[a.index()]
                )));
            }
        }
        Ok(Ok(format!("{} nonunits, n = 2..={max_n}", nonunits.len())))
    })();
    result("nonunit-targets-equal", outcome)
}

fn unit_roots_via_shifted_matrix(r: &Ring, dp: &mut DpCounter<BigUint>, max_n: u32) -> CheckResult {
    let outcome = (|| {
        for n in 1..=max_n as usize {
            let roots = dp.roots_by_target(n)?;
            for u in r.units() {
                let inv = r.inverse(u).expect("unit");
                let target = Mat2::diag(r, r.neg(inv), r.neg(u));
                let w = dp.omega(n + 2, &target)?;
                if w != roots[u.index()] {
                    return Ok(Err(format!(
                        "n={n} u={}: |R_n^u| = {}, |Omega_(n+2)^(-B^-1)| = {w}",
                        r.display(u),
                        roots[u.index()]
                    )));
                }
            }
        }
        Ok(Ok(format!("n = 1..={max_n}")))
    })();
    result("unit-roots-shifted-matrix", outcome)
}

fn odd_unit_roots_via_identity(r: &Ring, dp: &mut DpCounter<BigUint>, max_n: u32) -> CheckResult {
    let outcome = (|| {
        let id = Mat2::identity(r);
        for n in (1..=max_n as usize).step_by(2) {
            let roots = dp.roots_by_target(n)?;
            let w = dp.omega(n + 2, &id)?;
            if let Some(u) = r.units().into_iter().find(|u| roots[u.index()] != w) {
                return Ok(Err(format!(
                    "n={n} u={}: {} vs {w}",
                    r.display(u),
                    roots[u.index()]
                )));
            }
        }
        Ok(Ok(format!("odd n <= {max_n}")))
    })();
    result("odd-unit-roots-identity", outcome)
}

fn roots_nonempty(r: &Ring, dp: &mut DpCounter<BigUint>, max_n: u32) -> CheckResult {
    let outcome = (|| {
        for n in 1..=max_n as usize {
            let roots = dp.roots_by_target(n)?;
            if let Some(a) = r.elements().find(|a| roots[a.index()] == BigUint::ZERO) {
                return Ok(Err(format!("n={n}: no root for target {}", r.display(a))));
            }
        }
        Ok(Ok(format!("n = 1..={max_n}")))
    })();
    result("roots-nonempty", outcome)
}

fn partition(r: &Ring, max_n: u32, budgets: &Budgets) -> CheckResult {
    let outcome = (|| {
        let mut largest = 0;
        for n in 1..=max_n as usize {
            if check_budget(r, n, budgets.brute_leaves / r.size() as u128).is_err() {
                break;
            }
            let mut total = 0u128;
            for a in r.elements() {
                total += count_continuant_roots(r, n, a, budgets.brute_leaves)? as u128;
            }
            let want = (r.size() as u128).pow(n as u32);
            if total != want {
                return Ok(Err(format!("n={n}: targets sum to {total}, not {want}")));
            }
            largest = n;
        }
        if largest == 0 {
            return Err(crate::error::Error::Budget(
                "no n within the brute budget".into(),
            ));
        }
        Ok(Ok(format!("brute force, n <= {largest}")))
    })();
    result("roots-partition", outcome)
}

fn sum_w_closed_form_vs_dp(r: &Ring, dp: &mut DpCounter<BigUint>, max_n: u32) -> CheckResult {
    let Ok(params) = LocalParams::from_ring(r) else {
        return skip("sum-w-closed-form", "ring is not local");
    };
    let outcome = (|| {
        for n in 3..=max_n {
            let f = crate::formulas::to_count(sum_w_closed_form(&params, n)?)?;
            let d = dp.sum_w(n as usize)?;
            if f != d {
                return Ok(Err(format!("n={n}: closed form {f}, dp {d}")));
            }
        }
        Ok(Ok(format!("n = 3..={max_n}")))
    })();
    result("sum-w-closed-form", outcome)
}

fn roots_from_w_vs_dp(r: &Ring, dp: &mut DpCounter<BigUint>, max_n: u32) -> CheckResult {
    let Ok(params) = LocalParams::from_ring(r) else {
        return skip("roots-from-w", "ring is not local");
    };
    let outcome = (|| {
        for n in 1..=max_n {
            let sum = dp.sum_w(n as usize + 2)?;
            let want = dp.roots(n as usize, r.zero())?;
            let got = crate::formulas::to_count(roots_from_sum_w(&params, n, &sum.into())?)?;
            if got != want {
                return Ok(Err(format!("n={n}: from the w-sum {got}, dp {want}")));
            }
            if n % 2 == 1 {
                let w1 = dp.quiddity(n as usize + 2, r.one())?;
                let got = crate::formulas::to_count(roots_from_w_one(&params, n, &w1.into())?)?;
                if got != want {
                    return Ok(Err(format!("n={n}: from w^1 {got}, dp {want}")));
                }
            }
        }
        Ok(Ok(format!("n = 1..={max_n}")))
    })();
    result("roots-from-w", outcome)
}

fn formulas_vs_dp(r: &Ring, dp: &mut DpCounter<BigUint>, max_n: u32) -> CheckResult {
    let outcome = (|| {
        let mut compared = 0;
        for n in 1..=max_n {
            let targets: Vec<(Kind, Elem)> = r
                .elements()
                .map(|a| (Kind::Roots, a))
                .chain(r.units().into_iter().map(|u| (Kind::Quiddity, u)))
                .chain([(Kind::SumW, r.one())])
                .collect();
            for (kind, t) in targets {
                let Some(f) = formula_value(r, kind, n, t) else {
                    continue;
                };
                let f = f?;
                let d = match kind {
                    Kind::Roots => dp.roots(n as usize, t)?,
                    Kind::Quiddity => dp.quiddity(n as usize, t)?,
                    Kind::SumW => dp.sum_w(n as usize)?,
                };
                if f != d {
                    return Ok(Err(format!(
                        "{kind} n={n} target {}: formula {f}, dp {d}",
                        r.display(t)
                    )));
                }
                compared += 1;
            }
        }
        Ok(Ok(format!("{compared} cells")))
    })();
    result("formulas-vs-dp", outcome)
}
