use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulas::Kind;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Entry {
    method: String,
    #[serde(with = "crate::formulas::decimal")]
    value: BigUint,
}

/// On-disk result cache keyed by `(canonical spec, n, kind, target)`.
#[derive(Debug, Default)]
pub struct Cache {
    path: Option<PathBuf>,
    entries: Mutex<BTreeMap<String, Entry>>,
}

fn key(ring: &str, n: u32, kind: Kind, target: &str) -> String {
    format!("{ring}|{n}|{kind}|{target}")
}

impl Cache {
    /// A cache that is never persisted.
    pub fn in_memory() -> Cache {
        Cache::default()
    }

    /// Load `path` if it exists; writes go back to the same file.
    pub fn open(path: &Path) -> Result<Cache> {
        let entries = match std::fs::read_to_string(path) {
            Ok(text) if !text.trim().is_empty() => serde_json::from_str(&text)?,
            Ok(_) => BTreeMap::new(),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => BTreeMap::new(),
            Err(source) => {
                return Err(Error::Io {
                    path: path.to_path_buf(),
                    source,
                })
            }
        };
        Ok(Cache {
            path: Some(path.to_path_buf()),
            entries: Mutex::new(entries),
        })
    }

    /// The cached `(method, value)`, if any.
    pub fn get(&self, ring: &str, n: u32, kind: Kind, target: &str) -> Option<(String, BigUint)> {
        let entries = self.entries.lock().expect("cache lock");
        entries
            .get(&key(ring, n, kind, target))
            .map(|e| (e.method.clone(), e.value.clone()))
    }

    pub fn put(&self, ring: &str, n: u32, kind: Kind, target: &str, method: &str, value: &BigUint) {
        let mut entries = self.entries.lock().expect("cache lock");
        entries.insert(
            key(ring, n, kind, target),
            Entry {
                method: method.to_string(),
                value: value.clone(),
            },
        );
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Write the cache back to its file, if it has one.
    pub fn save(&self) -> Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        let entries = self.entries.lock().expect("cache lock");
        let text = serde_json::to_string_pretty(&*entries)?;
        std::fs::write(path, text + "\n").map_err(|source| Error::Io {
            path: path.clone(),
            source,
        })
    }
}
