//! Acceptance gate: one line per criterion, non-zero exit if any fails.

use std::collections::HashMap;
use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use quiddity::enumerate::{count_continuant_roots, count_tuples, DpCounter};
use quiddity::formulas::{
    crt_roots, field_roots_generic_unit, prior_w, residue_reduction, roots_closed_form,
    roots_from_sum_w, roots_from_w_one, sum_w_closed_form, w4_prime_power, w_prime_power_even,
    Family, LocalParams, PriorSource, Sign, W4Case,
};
use quiddity::harness::{checks, table_rows, CellMethod, MethodChoice, RunConfig, Status};
use quiddity::{ring_from_str, Elem, Mat2, Ring};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// Local rings of at most 27 elements used for the closed-form checks.
const LOCAL_FLEET: &[&str] = &[
    "GF:2^1",
    "GF:3^1",
    "GF:2^2",
    "Zmod:4",
    "PolyQuot:Zmod:2/x^2",
    "GF:5^1",
    "GF:7^1",
    "GF:2^3",
    "Zmod:8",
    "PolyQuot:Zmod:4/x^2,2*x",
    "PolyQuot:Zmod:2/x^3",
    "GF:3^2",
    "Zmod:9",
    "PolyQuot:Zmod:3/x^2",
    "GF:11^1",
    "GF:13^1",
    "GF:2^4",
    "Zmod:16",
    "PolyQuot:GF:2^2/x^2",
    "PolyQuot:Zmod:2/x^4",
    "Bivar:Zmod:2/x^2,y^2",
    "PolyQuot:Zmod:4/x^2+x+1",
    "GF:17^1",
    "GF:5^2",
    "Zmod:25",
    "GF:3^3",
    "Zmod:27",
    "PolyQuot:Zmod:3/x^3",
];

fn ring(spec: &str) -> Ring {
    ring_from_str(spec).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

fn dp(r: &Ring) -> DpCounter<u128> {
    DpCounter::new(r, 64).expect("fleet rings fit the SL2 budget")
}

fn big(v: u128) -> BigInt {
    BigInt::from(v)
}

/// Naive oracle: `M_n` by explicit 2×2 products, tallied over all of `A^n`.
fn naive_histogram(r: &Ring, n: usize) -> HashMap<[Elem; 4], u64> {
    let size = r.size() as u64;
    let (zero, one) = (r.zero(), r.one());
    let minus_one = r.sub(zero, one);
    let mut hist = HashMap::new();
    for idx in 0..size.pow(n as u32) {
        let mut v = idx;
        let mut m = [one, zero, zero, one];
        for _ in 0..n {
            let a = Elem((v % size) as u32);
            v /= size;
            // [[a, -1], [1, 0]] · m
            let e = [a, minus_one, one, zero];
            m = [
                r.add(r.mul(e[0], m[0]), r.mul(e[1], m[2])),
                r.add(r.mul(e[0], m[1]), r.mul(e[1], m[3])),
                r.add(r.mul(e[2], m[0]), r.mul(e[3], m[2])),
                r.add(r.mul(e[2], m[1]), r.mul(e[3], m[3])),
            ];
        }
        *hist.entry(m).or_insert(0) += 1;
    }
    hist
}

fn golden(names: &[&str], must_have: &[(&str, u32, u64)]) -> Outcome {
    let config = RunConfig {
        method: MethodChoice::Only(CellMethod::Dp),
        ..RunConfig::default()
    };
    let mut cells = 0;
    let mut seen = Vec::new();
    for name in names {
        let rows = table_rows(name, &config).map_err(|e| e.to_string())?;
        for row in &rows {
            if row.status != Status::Pass {
                return Err(format!(
                    "{name}: {} n={} got {:?}, expected {}",
                    row.ring, row.n, row.value, row.expected
                ));
            }
            seen.push((row.ring.clone(), row.n, row.value.clone()));
        }
        cells += rows.len();
    }
    for (spec, n, value) in must_have {
        if !seen.contains(&(spec.to_string(), *n, value.to_string())) {
            return Err(format!("{spec} n={n} = {value} not reproduced"));
        }
    }
    Ok(format!("{cells} cells exact via DP"))
}

fn criterion_1() -> Outcome {
    golden(
        &["roots-a", "roots-b", "roots-exotic"],
        &[("GF:2^4", 8, 252_645_135), ("GF:11^1", 8, 17_863_240)],
    )
}

fn criterion_2() -> Outcome {
    golden(
        &["w-plus", "w-minus"],
        &[("Zmod:27", 8, 17_078_283), ("Zmod:16", 8, 1_376_256)],
    )
}

fn criterion_3() -> Outcome {
    let fleet = [
        "GF:2^1",
        "GF:3^1",
        "GF:2^2",
        "Zmod:4",
        "Zmod:6",
        "Zmod:8",
        "Zmod:9",
        "PolyQuot:Zmod:2/x^2",
    ];
    let budget = u128::MAX;
    let mut cells = 0usize;
    for spec in fleet {
        let r = ring(spec);
        let mut counter = dp(&r);
        let max_n = if r.size() <= 4 { 6 } else { 5 };
        for n in 1..=max_n {
            let hist = naive_histogram(&r, n);
            let vector = counter.vector(n).map_err(|e| e.to_string())?.clone();
            // every matrix target, naive vs DP
            for (i, m) in counter.table().matrices().iter().enumerate() {
                let naive = *hist.get(&[m.a11, m.a12, m.a21, m.a22]).unwrap_or(&0) as u128;
                if naive != *vector.get(i) {
                    return Err(format!(
                        "{spec} n={n} B={}: naive {naive}, dp {}",
                        m.display(&r),
                        vector.get(i)
                    ));
                }
            }
            let roots = counter.roots_by_target(n).map_err(|e| e.to_string())?;
            for a in r.elements() {
                let b =
                    count_continuant_roots(&r, n, a, budget).map_err(|e| e.to_string())? as u128;
                if b != roots[a.index()] {
                    return Err(format!(
                        "{spec} n={n} roots at {}: brute {b}, dp {}",
                        r.display(a),
                        roots[a.index()]
                    ));
                }
                cells += 1;
            }
            for u in r.units() {
                let target = Mat2::diag(&r, u, r.inverse(u).expect("unit"));
                let b = count_tuples(&r, n, budget, |m| *m == target).map_err(|e| e.to_string())?
                    as u128;
                let d = counter.quiddity(n, u).map_err(|e| e.to_string())?;
                if b != d {
                    return Err(format!(
                        "{spec} n={n} w at {}: brute {b}, dp {d}",
                        r.display(u)
                    ));
                }
                cells += 1;
            }
        }
    }
    Ok(format!(
        "{cells} target cells, brute = DP = naive oracle on every SL2 entry"
    ))
}

struct Tally {
    per_formula: Vec<(&'static str, usize)>,
}

impl Tally {
    fn hit(&mut self, name: &'static str) {
        match self.per_formula.iter_mut().find(|(n, _)| *n == name) {
            Some((_, c)) => *c += 1,
            None => self.per_formula.push((name, 1)),
        }
    }
}

fn check_eq(what: String, formula: quiddity::Result<BigInt>, oracle: u128) -> Result<(), String> {
    let f = formula.map_err(|e| format!("{what}: {e}"))?;
    if f != big(oracle) {
        return Err(format!("{what}: formula {f}, dp {oracle}"));
    }
    Ok(())
}

fn family_of(spec: &str, r: &Ring) -> Option<Family> {
    let q = r.residue_size()? as u64;
    if r.size() - r.unit_count() == 1 {
        return Some(Family::Field { q });
    }
    if let Some(n) = spec.strip_prefix("Zmod:") {
        let n: u64 = n.parse().ok()?;
        let m = (1..).find(|&m| q.pow(m) == n)?;
        return Some(Family::IntegersModPrimePower { p: q, m });
    }
    let rest = spec.strip_prefix("PolyQuot:")?;
    let (base, rel) = rest.rsplit_once('/')?;
    let m: u32 = rel.strip_prefix("x^")?.parse().ok()?;
    let base_field = base.starts_with("GF:") || matches!(base, "Zmod:2" | "Zmod:3" | "Zmod:5");
    base_field.then_some(Family::TruncatedPoly { q, m })
}

fn criterion_4() -> Outcome {
    let mut tally = Tally {
        per_formula: Vec::new(),
    };
    for spec in LOCAL_FLEET {
        let r = ring(spec);
        let params = LocalParams::from_ring(&r).map_err(|e| e.to_string())?;
        let mut c = dp(&r);
        let e = |x: quiddity::Error| x.to_string();
        let q = params.q;
        let p = quiddity::rings::prime_power(q).expect("residue field").0;
        let minus_one = r.neg(r.one());

        for n in 3..=7u32 {
            check_eq(
                format!("{spec} sum w n={n}"),
                sum_w_closed_form(&params, n),
                c.sum_w(n as usize).map_err(e)?,
            )?;
            tally.hit("sum_w_closed_form");
        }
        for n in 1..=5u32 {
            let want = c.roots(n as usize, r.zero()).map_err(e)?;
            let sum = sum_w_closed_form(&params, n + 2).map_err(e)?;
            check_eq(
                format!("{spec} r_{n} via w-sum"),
                roots_from_sum_w(&params, n, &sum),
                want,
            )?;
            tally.hit("roots_from_sum_w");
            if n % 2 == 1 {
                let w1 = big(c.quiddity(n as usize + 2, r.one()).map_err(e)?);
                check_eq(
                    format!("{spec} r_{n} via w^1"),
                    roots_from_w_one(&params, n, &w1),
                    want,
                )?;
                tally.hit("roots_from_w_one");
            }
        }
        if let Some(family) = family_of(spec, &r) {
            for n in 1..=7u32 {
                let want = c.roots(n as usize, r.zero()).map_err(e)?;
                check_eq(
                    format!("{spec} r_{n} closed form"),
                    roots_closed_form(family, n),
                    want,
                )?;
                tally.hit("roots_closed_form");
            }
        }
        let is_field = r.size() - r.unit_count() == 1;
        if is_field {
            for n in 2..=7u32 {
                let want = c.quiddity(n as usize, minus_one).map_err(e)?;
                check_eq(
                    format!("{spec} w_{n}^-1"),
                    prior_w(PriorSource::FieldMinusOne { q }, n, Sign::Minus),
                    want,
                )?;
                tally.hit("prior_w field -1");
                if p > 2 {
                    let want = c.quiddity(n as usize, r.one()).map_err(e)?;
                    check_eq(
                        format!("{spec} w_{n}^1"),
                        prior_w(PriorSource::FieldPlusOne { q }, n, Sign::Plus),
                        want,
                    )?;
                    tally.hit("prior_w field +1");
                }
            }
            for m in 2..=3u32 {
                let g = field_roots_generic_unit(q, m).map_err(e)?;
                for u in r
                    .units()
                    .into_iter()
                    .filter(|&u| u != r.one() && u != minus_one)
                {
                    check_eq(
                        format!("{spec} R_{}^u", 2 * m),
                        Ok(g.value.clone()),
                        c.roots(2 * m as usize, u).map_err(e)?,
                    )?;
                    tally.hit("field_roots_generic_unit");
                }
            }
        }
        if let Some(Family::IntegersModPrimePower { p, m })
        | Some(Family::TruncatedPoly { q: p, m }) = family_of(spec, &r).filter(|_| !is_field)
        {
            for n in [3u32, 5, 7] {
                for (u, eps) in [(r.one(), Sign::Plus), (minus_one, Sign::Minus)] {
                    let want = c.quiddity(n as usize, u).map_err(e)?;
                    check_eq(
                        format!("{spec} w_{n} truncated"),
                        prior_w(PriorSource::TruncatedOdd { q: p, m }, n, eps),
                        want,
                    )?;
                    tally.hit("prior_w truncated odd");
                }
            }
        }
        if let Some(Family::IntegersModPrimePower { p, m }) = family_of(spec, &r) {
            if p == 2 {
                for n in [5u32, 7] {
                    for (u, eps) in [(r.one(), Sign::Plus), (minus_one, Sign::Minus)] {
                        let want = c.quiddity(n as usize, u).map_err(e)?;
                        check_eq(
                            format!("{spec} w_{n} two-power"),
                            prior_w(PriorSource::TwoPowerOdd { m }, n, eps),
                            want,
                        )?;
                        tally.hit("prior_w two-power odd");
                    }
                }
            }
            if p == 2 && m == 2 {
                for n in [4u32, 6] {
                    for (u, eps) in [(r.one(), Sign::Plus), (minus_one, Sign::Minus)] {
                        let want = c.quiddity(n as usize, u).map_err(e)?;
                        check_eq(
                            format!("{spec} w_{n} Z/4"),
                            prior_w(PriorSource::Z4Even, n, eps),
                            want,
                        )?;
                        tally.hit("prior_w Z/4 even");
                    }
                }
            }
            if m >= 2 && (p > 2 || m >= 3) {
                for (u, eps) in [(r.one(), Sign::Plus), (minus_one, Sign::Minus)] {
                    let want = c.quiddity(6, u).map_err(e)?;
                    check_eq(
                        format!("{spec} w_6^{eps}"),
                        w_prime_power_even(p, m, 4, eps),
                        want,
                    )?;
                    tally.hit("w_prime_power_even");
                }
            }
            if m >= 2 {
                let w4_plus = c.quiddity(4, r.one()).map_err(e)?;
                check_eq(
                    format!("{spec} w_4^1"),
                    w4_prime_power(p, m, W4Case::PlusOne),
                    w4_plus,
                )?;
                tally.hit("w4_prime_power");
                let w4_minus = c.quiddity(4, minus_one).map_err(e)?;
                if p > 2 {
                    check_eq(
                        format!("{spec} w_4^-1"),
                        w4_prime_power(p, m, W4Case::MinusOneOddPrime),
                        w4_minus,
                    )?;
                    tally.hit("w4_prime_power");
                } else if m >= 3 {
                    check_eq(
                        format!("{spec} w_4^-1"),
                        w4_prime_power(p, m, W4Case::MinusOneTwo),
                        w4_minus,
                    )?;
                    tally.hit("w4_prime_power");
                }
                let roots2 = c.roots_by_target(2).map_err(e)?;
                let step = r.from_int(p.pow(m - 1) as i64);
                let sum: u128 = (0..p as i64)
                    .map(|j| {
                        let t = r.sub(minus_one, r.mul(r.from_int(j), step));
                        roots2[t.index()]
                    })
                    .sum();
                check_eq(
                    format!("{spec} R_2 sum"),
                    w4_prime_power(p, m, W4Case::RootSum),
                    sum,
                )?;
                tally.hit("w4_prime_power");
            }
        }
        // lifting from the residue field, counts on both sides from DP
        let residue = ring(&format!(
            "GF:{}^{}",
            p,
            quiddity::rings::prime_power(q).unwrap().1
        ));
        let mut rc = dp(&residue);
        let residue_minus_one = residue.neg(residue.one());
        for n in 3..=7u32 {
            for (u, ru, eps) in [
                (r.one(), residue.one(), Sign::Plus),
                (minus_one, residue_minus_one, Sign::Minus),
            ] {
                let base = big(rc.quiddity(n as usize, ru).map_err(e)?);
                let lifted = residue_reduction(&params, &base, n, eps);
                if lifted.is_err() {
                    continue;
                }
                check_eq(
                    format!("{spec} w_{n}^{eps} lifted"),
                    lifted,
                    c.quiddity(n as usize, u).map_err(e)?,
                )?;
                tally.hit("residue_reduction");
            }
        }
    }
    let summary: Vec<String> = tally
        .per_formula
        .iter()
        .map(|(n, c)| format!("{n}={c}"))
        .collect();
    Ok(summary.join(" "))
}

fn criterion_5() -> Outcome {
    let mut cells = 0;
    for modulus in [6u64, 10, 12] {
        let r = ring(&format!("Zmod:{modulus}"));
        let mut c = dp(&r);
        for n in 1..=5u32 {
            let want = c.roots(n as usize, r.zero()).map_err(|e| e.to_string())?;
            check_eq(format!("Z/{modulus} r_{n}"), crt_roots(modulus, n), want)?;
            cells += 1;
        }
    }
    Ok(format!("{cells} cells"))
}

fn criterion_6() -> Outcome {
    let budgets = quiddity::Budgets::default();
    let fleet = [
        "GF:2^1",
        "GF:3^1",
        "GF:2^2",
        "Zmod:4",
        "GF:5^1",
        "Zmod:6",
        "Zmod:8",
        "PolyQuot:Zmod:2/x^2",
        "GF:3^2",
        "Zmod:9",
        "Zmod:10",
        "Zmod:12",
        "Bivar:Zmod:2/x^2,y^2",
        "PolyQuot:Zmod:4/x^2,2*x",
        "Zmod:16",
    ];
    let mut passed = 0;
    for spec in fleet {
        let r = ring(spec);
        let max_n = if r.size() <= 9 { 6 } else { 5 };
        for c in checks::run_all(&r, max_n, &budgets) {
            if c.failed() {
                return Err(format!("{spec}: {c}"));
            }
            if c.passed() {
                passed += 1;
            }
        }
    }
    Ok(format!(
        "{passed} property checks over {} rings",
        fleet.len()
    ))
}

fn criterion_7() -> Outcome {
    for spec in LOCAL_FLEET {
        let r = ring(spec);
        // unit count by direct search, independent of the ring's own bookkeeping
        let units = r
            .elements()
            .filter(|&a| r.elements().any(|b| r.mul(a, b) == r.one()))
            .count() as u64;
        let size = r.size() as u64;
        let nonunits = size - units;
        let params = LocalParams::from_ring(&r).map_err(|e| e.to_string())?;
        let omega = params.omega();
        let rhs = BigInt::from(units * units + 4 * nonunits * size);
        if &omega * &omega != rhs || params.units != units {
            return Err(format!("{spec}: omega = {omega}, |U|^2 + 4N|A| = {rhs}"));
        }
    }
    Ok(format!("{} local rings", LOCAL_FLEET.len()))
}

fn criterion_8() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_quiddity");
    let run = || {
        Command::new(bin)
            .args(["table", "--name", "roots-a", "--format", "csv"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    if !a.status.success() || !b.status.success() {
        return Err(format!(
            "exit codes {:?} and {:?}",
            a.status.code(),
            b.status.code()
        ));
    }
    if a.stdout != b.stdout || a.stdout.is_empty() {
        return Err("outputs differ".into());
    }
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("golden root tables via DP", criterion_1),
        ("golden w tables via DP", criterion_2),
        ("brute force equals DP", criterion_3),
        ("closed forms equal DP", criterion_4),
        ("CRT product equals DP", criterion_5),
        ("structural property suites", criterion_6),
        ("omega squared identity", criterion_7),
        ("table output is deterministic", criterion_8),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL {name} ({why}; {secs:.1}s)", i + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
