//! Rings given by explicit addition and multiplication tables.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Arith, Elem, Ring, RingSpec};
use crate::error::{Error, Result};

/// On-disk form of a table ring: elements are `0..size`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    pub size: usize,
    pub zero: usize,
    pub one: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

impl TableFile {
    pub fn load(path: &Path) -> Result<TableFile> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Tabulate an already built ring.
    pub fn from_ring(ring: &Ring) -> TableFile {
        let grid = |op: fn(&Ring, Elem, Elem) -> Elem| {
            ring.elements()
                .map(|a| ring.elements().map(|b| op(ring, a, b).index()).collect())
                .collect()
        };
        TableFile {
            size: ring.size(),
            zero: ring.zero().index(),
            one: ring.one().index(),
            add: grid(Ring::add),
            mul: grid(Ring::mul),
        }
    }

    /// Check shapes and ranges, then build the ring. Axioms are checked
    /// separately.
    pub fn into_ring(self, spec: RingSpec, cap: usize) -> Result<Ring> {
        let n = self.size;
        if n < 2 {
            return Err(Error::InvalidTable(
                "a ring table needs at least two elements".into(),
            ));
        }
        if n > cap {
            return Err(Error::SizeCap {
                size: n as u128,
                cap,
            });
        }
        if self.zero >= n || self.one >= n {
            return Err(Error::InvalidTable("zero or one is out of range".into()));
        }
        let flatten = |name: &str, rows: Vec<Vec<usize>>| -> Result<Vec<Elem>> {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::InvalidTable(format!("{name} table must be {n}x{n}")));
            }
            rows.into_iter()
                .flatten()
                .map(|v| {
                    if v < n {
                        Ok(Elem(v as u32))
                    } else {
                        Err(Error::InvalidTable(format!(
                            "{name} table entry {v} is out of range"
                        )))
                    }
                })
                .collect()
        };
        let add = flatten("add", self.add)?;
        let mul = flatten("mul", self.mul)?;
        let (zero, one) = (Elem(self.zero as u32), Elem(self.one as u32));
        Ok(Ring::assemble(
            spec,
            n,
            Arith::Table,
            zero,
            one,
            Some((add, mul)),
        ))
    }
}
