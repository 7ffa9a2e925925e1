//! Command implementations behind the CLI: ring reports, single counts,
//! golden-table reproduction and per-ring cross-checks.

mod cache;
pub mod checks;
pub mod dispatch;
mod engine;
mod golden;
mod output;

use std::path::PathBuf;

use rayon::prelude::*;

use crate::enumerate::Budgets;
use crate::error::{Error, Result};
use crate::formulas::{Kind, LocalParams};
use crate::rings::{build_ring_with, parse_spec, BuildOptions, Ring, DEFAULT_SIZE_CAP};

pub use cache::Cache;
pub use engine::{CellMethod, RingEngine};
pub use golden::{golden_table, GoldenCell, GoldenTable, TABLE_NAMES};
pub use output::{render, Format, Row, Status};

/// Which methods a command runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MethodChoice {
    /// First applicable of formula, DP, brute force.
    #[default]
    Auto,
    Only(CellMethod),
    /// Every applicable method, checked for agreement.
    All,
}

impl std::str::FromStr for MethodChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<MethodChoice> {
        match s {
            "auto" => Ok(MethodChoice::Auto),
            "all" => Ok(MethodChoice::All),
            other => other.parse().map(MethodChoice::Only),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub method: MethodChoice,
    pub budgets: Budgets,
    pub size_cap: usize,
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
    pub format: Format,
    pub cache: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            method: MethodChoice::Auto,
            budgets: Budgets::default(),
            size_cap: DEFAULT_SIZE_CAP,
            workers: None,
            format: Format::Csv,
            cache: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.budgets.brute_leaves == 0 || self.budgets.sl2_ring_size == 0 || self.size_cap == 0 {
            return Err(Error::Invalid("budgets must be positive".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::Invalid("--workers must be positive".into()));
        }
        Ok(())
    }

    fn build(&self, spec: &str) -> Result<Ring> {
        build_ring_with(
            &parse_spec(spec)?,
            &BuildOptions {
                size_cap: self.size_cap,
            },
        )
    }

    fn open_cache(&self) -> Result<Cache> {
        match &self.cache {
            Some(path) => Cache::open(path),
            None => Ok(Cache::in_memory()),
        }
    }

    /// Run `f` on a pool of the configured size.
    fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        match self.workers {
            None => Ok(f()),
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map(|pool| pool.install(f))
                .map_err(|e| Error::Invalid(e.to_string())),
        }
    }
}

/// Text produced by a command plus whether everything checked out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub all_pass: bool,
}

/// `ring info`: sizes, locality and a few non-units.
pub fn cmd_ring_info(spec: &str, config: &RunConfig) -> Result<String> {
    config.validate()?;
    let r = config.build(spec)?;
    let p = r.params();
    let mut out = String::new();
    out.push_str(&format!("ring: {}\n", r.spec()));
    out.push_str(&format!("size: {}\n", p.size));
    out.push_str(&format!("units: {}\n", p.units));
    out.push_str(&format!("nonunits: {}\n", p.size - p.units));
    out.push_str(&format!("local: {}\n", p.is_local));
    match p.residue_size {
        Some(q) => out.push_str(&format!("residue_size: {q}\n")),
        None => out.push_str("residue_size: -\n"),
    }
    if let Ok(lp) = LocalParams::from_ring(&r) {
        out.push_str(&format!(
            "omega: {}\neta: {}\ntau: {}\n",
            lp.omega(),
            lp.eta(),
            lp.tau()
        ));
    }
    let sample: Vec<String> = r
        .nonunits()
        .into_iter()
        .take(8)
        .map(|a| r.display(a))
        .collect();
    out.push_str(&format!("sample_nonunits: {}\n", sample.join(" ")));
    Ok(out)
}

fn default_target(kind: Kind) -> &'static str {
    match kind {
        Kind::Roots => "0",
        Kind::Quiddity => "1",
        Kind::SumW => "",
    }
}

/// `count`: one value, or one row per applicable method with `--method all`.
pub fn cmd_count(
    kind: Kind,
    spec: &str,
    n: u32,
    target: Option<&str>,
    config: &RunConfig,
) -> Result<Outcome> {
    config.validate()?;
    let r = config.build(spec)?;
    let literal = match (kind, target) {
        (Kind::SumW, Some(_)) => {
            return Err(Error::Invalid(
                "sum-w sums over all units and takes no target".into(),
            ))
        }
        (_, Some(t)) => t.to_string(),
        (_, None) => default_target(kind).to_string(),
    };
    let elem = if kind == Kind::SumW {
        r.one()
    } else {
        r.parse_element(&literal)?
    };
    if kind == Kind::Quiddity && !r.is_unit(elem) {
        return Err(Error::NotUnit(literal));
    }
    let ring_name = r.spec().to_string();
    let cache = config.open_cache()?;
    let mut engine = RingEngine::new(r, config.budgets);
    let row = |method: CellMethod, value: String, expected: String, status: Status| Row {
        ring: ring_name.clone(),
        n,
        kind: kind.to_string(),
        target: literal.clone(),
        method: method.to_string(),
        value,
        expected,
        status,
    };

    let rows = config.install(|| -> Result<Vec<Row>> {
        match config.method {
            MethodChoice::Auto => {
                let (method, value) = match cache.get(&ring_name, n, kind, &literal) {
                    Some((m, v)) => (m.parse()?, v),
                    None => engine.auto(kind, n, elem)?,
                };
                cache.put(&ring_name, n, kind, &literal, &method.to_string(), &value);
                Ok(vec![row(
                    method,
                    value.to_string(),
                    String::new(),
                    Status::Ok,
                )])
            }
            MethodChoice::Only(method) => {
                let value = engine.compute(method, kind, n, elem)?;
                cache.put(&ring_name, n, kind, &literal, &method.to_string(), &value);
                Ok(vec![row(
                    method,
                    value.to_string(),
                    String::new(),
                    Status::Ok,
                )])
            }
            MethodChoice::All => {
                let mut values = Vec::new();
                for method in CellMethod::ALL {
                    if engine.applicable(method, kind, n, elem) {
                        values.push((method, engine.compute(method, kind, n, elem)?));
                    }
                }
                let Some((_, reference)) = values.first().cloned() else {
                    return Err(Error::Budget("no method fits the budgets".into()));
                };
                Ok(values
                    .into_iter()
                    .map(|(m, v)| {
                        let status = if v == reference {
                            Status::Pass
                        } else {
                            Status::Mismatch
                        };
                        row(m, v.to_string(), reference.to_string(), status)
                    })
                    .collect())
            }
        }
    })??;
    cache.save()?;
    let all_pass = !rows.iter().any(Row::is_failure);
    Ok(Outcome {
        output: render(&rows, config.format)?,
        all_pass,
    })
}

/// Recompute every cell of a golden table and compare.
pub fn table_rows(name: &str, config: &RunConfig) -> Result<Vec<Row>> {
    config.validate()?;
    let table = golden_table(name)?;
    let cache = config.open_cache()?;
    let groups: Vec<(&String, Vec<&GoldenCell>)> = table
        .rings
        .iter()
        .map(|ring| {
            (
                ring,
                table.cells.iter().filter(|c| &c.ring == ring).collect(),
            )
        })
        .collect();

    let computed: Vec<Vec<Row>> = config.install(|| {
        groups
            .par_iter()
            .map(|(ring, cells)| table_group(ring, cells, config, &cache))
            .collect()
    })?;
    cache.save()?;
    Ok(computed.into_iter().flatten().collect())
}

fn table_group(spec: &str, cells: &[&GoldenCell], config: &RunConfig, cache: &Cache) -> Vec<Row> {
    let mut engine = config
        .build(spec)
        .map(|r| RingEngine::new(r, config.budgets));
    cells
        .iter()
        .map(|cell| {
            let mut row = Row {
                ring: cell.ring.clone(),
                n: cell.n,
                kind: cell.kind.to_string(),
                target: cell.target.clone(),
                method: String::new(),
                value: String::new(),
                expected: cell.expected.to_string(),
                status: Status::Error,
            };
            let result = match engine.as_mut() {
                Ok(e) => table_cell(e, cell, config, cache),
                Err(err) => Err(Error::Invalid(err.to_string())),
            };
            if let Ok((method, value)) = result {
                row.status = if value == cell.expected {
                    Status::Pass
                } else {
                    Status::Mismatch
                };
                row.method = method;
                row.value = value.to_string();
            }
            row
        })
        .collect()
}

fn table_cell(
    engine: &mut RingEngine,
    cell: &GoldenCell,
    config: &RunConfig,
    cache: &Cache,
) -> Result<(String, num_bigint::BigUint)> {
    let target = engine.ring().parse_element(&cell.target)?;
    let (method, value) = match config.method {
        MethodChoice::Auto => match cache.get(&cell.ring, cell.n, cell.kind, &cell.target) {
            Some((m, v)) => (m.parse()?, v),
            None => engine.auto(cell.kind, cell.n, target)?,
        },
        MethodChoice::Only(m) => match cache.get(&cell.ring, cell.n, cell.kind, &cell.target) {
            Some((cm, v)) if cm == m.to_string() => (m, v),
            _ => (m, engine.compute(m, cell.kind, cell.n, target)?),
        },
        MethodChoice::All => {
            let mut agreed: Option<(CellMethod, num_bigint::BigUint)> = None;
            let mut used = Vec::new();
            for m in CellMethod::ALL {
                if !engine.applicable(m, cell.kind, cell.n, target) {
                    continue;
                }
                let v = engine.compute(m, cell.kind, cell.n, target)?;
                used.push(m.to_string());
                match &agreed {
                    Some((_, a)) if *a != v => {
                        return Err(Error::Invalid(format!("methods disagree: {a} vs {v}")))
                    }
                    Some(_) => {}
                    None => agreed = Some((m, v)),
                }
            }
            let (_, v) = agreed.ok_or_else(|| Error::Budget("no method fits".into()))?;
            return Ok((used.join("+"), v));
        }
    };
    cache.put(
        &cell.ring,
        cell.n,
        cell.kind,
        &cell.target,
        &method.to_string(),
        &value,
    );
    Ok((method.to_string(), value))
}

/// `table`: rendered rows plus overall pass/fail.
pub fn cmd_table(name: &str, config: &RunConfig) -> Result<Outcome> {
    let rows = table_rows(name, config)?;
    Ok(Outcome {
        all_pass: !rows.iter().any(Row::is_failure),
        output: render(&rows, config.format)?,
    })
}

/// `crosscheck`: every named property on one ring.
pub fn cmd_crosscheck(spec: &str, max_n: u32, config: &RunConfig) -> Result<Outcome> {
    config.validate()?;
    let r = config.build(spec)?;
    let results = config.install(|| checks::run_all(&r, max_n, &config.budgets))?;
    let mut output = format!("ring: {}\n", r.spec());
    for c in &results {
        output.push_str(&c.to_string());
        output.push('\n');
    }
    Ok(Outcome {
        all_pass: !results.iter().any(checks::CheckResult::failed),
        output,
    })
}
