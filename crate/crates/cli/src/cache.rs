//! Append-only JSON-lines store of computed constants.
//!
//! Keys look like `lp|p=3|s=2|j=0|N=12`. Everything before `|N=` is the
//! prefix; a lookup at precision `N` is served by the entry with the same
//! prefix and the largest stored `N' ≥ N`, cut down to `N` digits.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::report::{PadicDigits, VERSION};

pub const CACHE_ENV: &str = "PADIC_HYPER_CACHE";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub valuation: Option<i64>,
    pub digits: Vec<u32>,
    /// Absolute precision of a value that is zero to its precision.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero_to: Option<i64>,
    pub version: String,
}

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// Splits `name|...|N=12` into the prefix and `12`.
fn split_key(key: &str) -> Option<(&str, usize)> {
    let (prefix, n) = key.rsplit_once("|N=")?;
    Some((prefix, n.parse().ok()?))
}

pub fn make_key(name: &str, args: &[(&str, String)], n: usize) -> String {
    let mut key = name.to_string();
    for (k, v) in args {
        key.push_str(&format!("|{k}={v}"));
    }
    key.push_str(&format!("|N={n}"));
    key
}

pub struct Cache {
    path: PathBuf,
    entries: Vec<CacheEntry>,
}

impl Cache {
    /// Loads every well-formed line; a missing file is an empty cache.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, CacheError> {
        let path = path.as_ref().to_path_buf();
        let mut entries = Vec::new();
        match File::open(&path) {
            Ok(f) => {
                for line in BufReader::new(f).lines() {
                    let line = line.map_err(|source| CacheError::Io {
                        path: path.clone(),
                        source,
                    })?;
                    if let Ok(e) = serde_json::from_str::<CacheEntry>(&line) {
                        entries.push(e);
                    }
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(source) => return Err(CacheError::Io { path, source }),
        }
        Ok(Cache { path, entries })
    }

    pub fn entries(&self) -> &[CacheEntry] {
        &self.entries
    }

    /// The best entry for `key`, truncated to the key's precision.
    pub fn get(&self, key: &str) -> Option<PadicDigits> {
        let (prefix, n) = split_key(key)?;
        let best = self
            .entries
            .iter()
            .filter_map(|e| split_key(&e.key).map(|(pre, m)| (pre, m, e)))
            .filter(|(pre, m, _)| *pre == prefix && *m >= n)
            .max_by_key(|(_, m, _)| *m)?
            .2;
        let mut digits = best.digits.clone();
        digits.truncate(n);
        Some(PadicDigits {
            valuation: best.valuation,
            precision: match best.valuation {
                Some(v) => v + digits.len() as i64,
                None => best.zero_to.unwrap_or(0),
            },
            digits,
        })
    }

    /// Appends an entry unless the exact key is already stored.
    pub fn put(&mut self, key: &str, value: &PadicDigits) -> Result<(), CacheError> {
        if self.entries.iter().any(|e| e.key == key) {
            return Ok(());
        }
        let entry = CacheEntry {
            key: key.to_string(),
            valuation: value.valuation,
            digits: value.digits.clone(),
            zero_to: value.valuation.is_none().then_some(value.precision),
            version: VERSION.to_string(),
        };
        let io = |source| CacheError::Io {
            path: self.path.clone(),
            source,
        };
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(io)?;
        let line = serde_json::to_string(&entry).expect("entries serialize");
        writeln!(f, "{line}").map_err(|source| CacheError::Io {
            path: self.path.clone(),
            source,
        })?;
        self.entries.push(entry);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn digits(v: i64, d: &[u32]) -> PadicDigits {
        PadicDigits {
            valuation: Some(v),
            digits: d.to_vec(),
            precision: v + d.len() as i64,
        }
    }

    #[test]
    fn key_layout() {
        let k = make_key("lp", &[("p", "3".into()), ("s", "2".into())], 12);
        assert_eq!(k, "lp|p=3|s=2|N=12");
        assert_eq!(split_key(&k), Some(("lp|p=3|s=2", 12)));
    }

    #[test]
    fn higher_precision_supersedes() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let mut c = Cache::open(&path).unwrap();
        c.put("x|p=3|N=4", &digits(0, &[1, 2, 0, 1])).unwrap();
        c.put("x|p=3|N=8", &digits(0, &[1, 2, 0, 1, 1, 1, 0, 2]))
            .unwrap();
        let reopened = Cache::open(&path).unwrap();
        assert_eq!(reopened.entries().len(), 2);
        assert_eq!(
            reopened.get("x|p=3|N=6").unwrap().digits,
            vec![1, 2, 0, 1, 1, 1]
        );
        assert_eq!(reopened.get("x|p=3|N=3").unwrap().digits, vec![1, 2, 0]);
        assert!(reopened.get("x|p=3|N=9").is_none());
        assert!(reopened.get("x|p=5|N=2").is_none());
    }

    #[test]
    fn entries_are_immutable() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let mut c = Cache::open(&path).unwrap();
        c.put("y|N=2", &digits(1, &[1, 1])).unwrap();
        c.put("y|N=2", &digits(1, &[2, 2])).unwrap();
        assert_eq!(
            Cache::open(&path).unwrap().get("y|N=2").unwrap().digits,
            vec![1, 1]
        );
    }
}
