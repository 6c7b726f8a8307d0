//! Append-only record log.
//!
//! One JSON object per line; the log is the single source of truth and the
//! in-memory indexes are rebuilt from it on startup. Deletes are recorded as
//! tombstone entries, keeping the file strictly append-only (and diff-able).
//! Wiping the data directory resets the store.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use peyedf_core::wire::{DimeEvent, InformationElement};

use crate::error::StoreError;

pub const LOG_FILE: &str = "records.log";

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "camelCase")]
pub enum LogEntry {
    PutEvent { id: i64, payload: DimeEvent },
    PutElement { id: i64, payload: InformationElement },
    DeleteEvent { id: i64 },
    DeleteElement { id: i64 },
}

pub struct RecordLog {
    path: PathBuf,
    file: File,
}

impl RecordLog {
    /// Open (creating if needed) and replay the log under `dir`.
    pub fn open(dir: &Path) -> Result<(RecordLog, Vec<LogEntry>), StoreError> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(LOG_FILE);
        let mut entries = Vec::new();
        if path.exists() {
            let reader = BufReader::new(File::open(&path)?);
            for (lineno, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let entry: LogEntry = serde_json::from_str(&line).map_err(|e| {
                    StoreError::bad_request(format!(
                        "corrupt log entry at {}:{}: {e}",
                        path.display(),
                        lineno + 1
                    ))
                })?;
                entries.push(entry);
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(&path)?;
        Ok((RecordLog { path, file }, entries))
    }

    pub fn append(&mut self, entry: &LogEntry) -> Result<(), StoreError> {
        let mut line = serde_json::to_string(entry)?;
        line.push('\n');
        self.file.write_all(line.as_bytes())?;
        self.file.flush()?;
        Ok(())
    }

    pub fn path(&self) -> &Path {
        &self.path
    }
}
