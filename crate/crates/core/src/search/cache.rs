//! Newline-delimited JSON cache of search records keyed by `(N, dim, relaxed)`.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::SearchRecord;
use crate::error::{Error, Result};

pub const CACHE_SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheLine {
    schema_version: u32,
    #[serde(rename = "N")]
    modulus: u64,
    dim: usize,
    relaxed: bool,
    best_gen: Vec<u64>,
    lambda_sq: String,
    normalized: f64,
    candidates_scanned: u64,
}

impl From<&SearchRecord> for CacheLine {
    fn from(r: &SearchRecord) -> Self {
        Self {
            schema_version: CACHE_SCHEMA_VERSION,
            modulus: r.modulus,
            dim: r.dim,
            relaxed: r.relaxed,
            best_gen: r.best_gen.clone(),
            lambda_sq: r.lambda_sq.to_string(),
            normalized: r.normalized,
            candidates_scanned: r.candidates_scanned,
        }
    }
}

impl TryFrom<CacheLine> for SearchRecord {
    type Error = String;
    fn try_from(l: CacheLine) -> std::result::Result<Self, String> {
        let lambda_sq = l.lambda_sq.parse::<u128>().map_err(|e| format!("lambda_sq: {e}"))?;
        Ok(SearchRecord {
            modulus: l.modulus,
            dim: l.dim,
            best_gen: l.best_gen,
            lambda_sq,
            normalized: l.normalized,
            relaxed: l.relaxed,
            candidates_scanned: l.candidates_scanned,
        })
    }
}

type Key = (u64, usize, bool);

fn key(r: &SearchRecord) -> Key {
    (r.modulus, r.dim, r.relaxed)
}

/// File-backed cache. Writes replace the whole file atomically via a rename.
#[derive(Clone, Debug)]
pub struct ResultCache {
    path: PathBuf,
}

impl ResultCache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// All valid current-schema records. Malformed lines are skipped with a
    /// warning; records from other schema versions are ignored.
    pub fn load(&self) -> Result<BTreeMap<Key, SearchRecord>> {
        let text = match fs::read_to_string(&self.path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(BTreeMap::new()),
            Err(e) => return Err(e.into()),
        };
        let mut out = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            match parse_line(idx + 1, line) {
                Ok(Some(rec)) => {
                    out.insert(key(&rec), rec);
                }
                Ok(None) => {}
                Err(e) => log::warn!("{}: {e}; skipping", self.path.display()),
            }
        }
        Ok(out)
    }

    pub fn get(&self, modulus: u64, dim: usize, relaxed: bool) -> Result<Option<SearchRecord>> {
        Ok(self.load()?.remove(&(modulus, dim, relaxed)))
    }

    pub fn put(&self, record: &SearchRecord) -> Result<()> {
        self.put_all(std::slice::from_ref(record))
    }

    pub fn put_all(&self, records: &[SearchRecord]) -> Result<()> {
        let mut all = self.load()?;
        for r in records {
            all.insert(key(r), r.clone());
        }
        let mut buf = String::new();
        for r in all.values() {
            buf.push_str(&serde_json::to_string(&CacheLine::from(r)).expect("cache line serialises"));
            buf.push('\n');
        }
        let dir = self.path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
        let file_name = self.path.file_name().and_then(|f| f.to_str()).unwrap_or("cache");
        let tmp = dir.join(format!(".{file_name}.tmp-{}", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(buf.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &self.path)?;
        Ok(())
    }
}

fn parse_line(line_no: usize, line: &str) -> Result<Option<SearchRecord>> {
    let corrupt = |reason: String| Error::CorruptRecord { line: line_no, reason };
    let value: serde_json::Value = serde_json::from_str(line).map_err(|e| corrupt(e.to_string()))?;
    match value.get("schema_version").and_then(serde_json::Value::as_u64) {
        Some(v) if v == CACHE_SCHEMA_VERSION as u64 => {}
        Some(_) => return Ok(None),
        None => return Err(corrupt("missing schema_version".into())),
    }
    let parsed: CacheLine = serde_json::from_value(value).map_err(|e| corrupt(e.to_string()))?;
    SearchRecord::try_from(parsed).map(Some).map_err(corrupt)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(n: u64) -> SearchRecord {
        SearchRecord {
            modulus: n,
            dim: 3,
            best_gen: vec![1, 13, 169],
            lambda_sq: 1891,
            normalized: 1.1136598095754813,
            relaxed: false,
            candidates_scanned: 29161,
        }
    }

    #[test]
    fn put_then_get() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResultCache::new(dir.path().join("c.jsonl"));
        assert_eq!(cache.get(244, 3, false).unwrap(), None);
        cache.put(&record(244)).unwrap();
        assert_eq!(cache.get(244, 3, false).unwrap(), Some(record(244)));
        assert_eq!(cache.get(244, 3, true).unwrap(), None);
    }

    #[test]
    fn corrupt_and_stale_lines_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let cache = ResultCache::new(&path);
        cache.put_all(&[record(244), record(245)]).unwrap();
        let mut text = fs::read_to_string(&path).unwrap();
        text.push_str("{not json\n");
        text.push_str("{\"schema_version\":0,\"N\":7}\n");
        text.push_str("{\"schema_version\":1,\"N\":9,\"dim\":3,\"relaxed\":false,\"best_gen\":[1,2,3],\"lambda_sq\":\"x\",\"normalized\":1.0,\"candidates_scanned\":1}\n");
        fs::write(&path, text).unwrap();
        let all = cache.load().unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(cache.get(245, 3, false).unwrap(), Some(record(245)));
        assert!(matches!(parse_line(3, "{not json"), Err(Error::CorruptRecord { line: 3, .. })));
    }

    #[test]
    fn lambda_is_decimal_string() {
        let line = serde_json::to_string(&CacheLine::from(&record(244))).unwrap();
        assert!(line.contains("\"lambda_sq\":\"1891\""));
        assert!(line.contains("\"N\":244"));
    }

    #[test]
    fn unwritable_location_is_io_error() {
        let cache = ResultCache::new("/nonexistent-dir/for/sure/c.jsonl");
        assert!(matches!(cache.put(&record(10)), Err(Error::Io(_))));
    }
}
