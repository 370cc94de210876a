//! Append-only JSON-lines cache of stratum results.
//!
//! Each line stores one `StratumResult` keyed by (dimension, canonical
//! partition encoding, config fingerprint). Entries with a different
//! fingerprint are kept in the file but never reused. Writes are flushed per
//! line, so an interrupted run leaves a valid prefix.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::partitions::MdPartition;
use crate::stratum::StratumResult;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CacheRecord {
    pub m: usize,
    pub key: String,
    pub fingerprint: String,
    pub result: StratumResult,
}

#[derive(Debug)]
pub struct ResultsCache {
    path: PathBuf,
    entries: HashMap<(usize, String, String), StratumResult>,
}

impl ResultsCache {
    /// Loads an existing cache file (or starts empty if absent). A line that
    /// fails to parse is an error: a corrupt cache should be noticed, not
    /// silently skipped.
    pub fn open(path: &Path) -> std::io::Result<Self> {
        let mut entries = HashMap::new();
        match File::open(path) {
            Ok(file) => {
                for (lineno, line) in BufReader::new(file).lines().enumerate() {
                    let line = line?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    let record: CacheRecord = serde_json::from_str(&line).map_err(|e| {
                        std::io::Error::new(
                            std::io::ErrorKind::InvalidData,
                            format!("{}:{}: {}", path.display(), lineno + 1, e),
                        )
                    })?;
                    entries.insert(
                        (record.m, record.key, record.fingerprint),
                        record.result,
                    );
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(e),
        }
        Ok(ResultsCache {
            path: path.to_path_buf(),
            entries,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(
        &self,
        m: usize,
        lambda: &MdPartition,
        fingerprint: &str,
    ) -> Option<&StratumResult> {
        self.entries
            .get(&(m, lambda.canonical_string(), fingerprint.to_string()))
    }

    /// Appends one result and flushes immediately.
    pub fn append(
        &mut self,
        m: usize,
        fingerprint: &str,
        result: &StratumResult,
    ) -> std::io::Result<()> {
        let key = result.lambda.canonical_string();
        let record = CacheRecord {
            m,
            key: key.clone(),
            fingerprint: fingerprint.to_string(),
            result: result.clone(),
        };
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        let mut line = serde_json::to_string(&record).expect("cache record serializes");
        line.push('\n');
        file.write_all(line.as_bytes())?;
        file.flush()?;
        self.entries
            .insert((m, key, fingerprint.to_string()), record.result);
        Ok(())
    }
}
