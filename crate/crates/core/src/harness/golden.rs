use num_bigint::BigUint;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::formulas::Kind;

/// Names accepted by [`golden_table`], in display order.
pub const TABLE_NAMES: [&str; 5] = ["roots-a", "roots-b", "roots-exotic", "w-plus", "w-minus"];

const SOURCES: [(&str, &str); 5] = [
    ("roots-a", include_str!("../../data/golden/roots-a.json")),
    ("roots-b", include_str!("../../data/golden/roots-b.json")),
    (
        "roots-exotic",
        include_str!("../../data/golden/roots-exotic.json"),
    ),
    ("w-plus", include_str!("../../data/golden/w-plus.json")),
    ("w-minus", include_str!("../../data/golden/w-minus.json")),
];

#[derive(Debug, Deserialize)]
struct RawRow {
    n: u32,
    values: Vec<u64>,
}

#[derive(Debug, Deserialize)]
struct RawTable {
    name: String,
    description: String,
    kind: Kind,
    target: String,
    rings: Vec<String>,
    rows: Vec<RawRow>,
}

/// One expected count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenCell {
    pub ring: String,
    pub n: u32,
    pub kind: Kind,
    pub target: String,
    pub expected: BigUint,
}

/// A published table of counts, flattened to cells.
#[derive(Debug, Clone)]
pub struct GoldenTable {
    pub name: String,
    pub description: String,
    /// Ring specs in column order.
    pub rings: Vec<String>,
    /// Cells ordered by ring (column) then `n`.
    pub cells: Vec<GoldenCell>,
}

pub fn golden_table(name: &str) -> Result<GoldenTable> {
    let (_, text) = SOURCES.iter().find(|(n, _)| *n == name).ok_or_else(|| {
        Error::Invalid(format!(
            "unknown table {name:?}; expected one of {}",
            TABLE_NAMES.join(", ")
        ))
    })?;
    let raw: RawTable = serde_json::from_str(text)?;
    let mut cells = Vec::new();
    for (col, ring) in raw.rings.iter().enumerate() {
        for row in &raw.rows {
            let expected = *row.values.get(col).ok_or_else(|| {
                Error::Invalid(format!("table {} row n={} is short", raw.name, row.n))
            })?;
            cells.push(GoldenCell {
                ring: ring.clone(),
                n: row.n,
                kind: raw.kind,
                target: raw.target.clone(),
                expected: expected.into(),
            });
        }
    }
    Ok(GoldenTable {
        name: raw.name,
        description: raw.description,
        rings: raw.rings,
        cells,
    })
}
