//! Append-only JSONL cache of sweep results, keyed by `(q, artifact version)`.

use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sdgroup_core::classify::SdClassification;

use crate::record::ARTIFACT_VERSION;

pub const CACHE_ENV: &str = "SD_CACHE_DIR";
pub const CACHE_FILE: &str = "sweep.jsonl";

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Entry {
    version: String,
    q: u64,
    result: SdClassification,
}

/// `$SD_CACHE_DIR`, else `$XDG_CACHE_HOME/sdgroup`, else `$HOME/.cache/sdgroup`.
pub fn default_dir() -> Option<PathBuf> {
    let env = |k| std::env::var_os(k).filter(|v| !v.is_empty()).map(PathBuf::from);
    env(CACHE_ENV)
        .or_else(|| env("XDG_CACHE_HOME").map(|d| d.join("sdgroup")))
        .or_else(|| env("HOME").map(|d| d.join(".cache").join("sdgroup")))
}

#[derive(Debug)]
pub struct SweepCache {
    path: PathBuf,
    entries: BTreeMap<u64, SdClassification>,
}

impl SweepCache {
    /// Loads entries for the current version. A malformed file is discarded
    /// (the returned warning says so) and rebuilt on the next write.
    pub fn open(dir: &Path) -> (SweepCache, Option<String>) {
        let path = dir.join(CACHE_FILE);
        let mut entries = BTreeMap::new();
        let mut warning = None;
        if let Ok(text) = fs::read_to_string(&path) {
            let parsed: Result<Vec<Entry>, _> =
                text.lines().filter(|l| !l.trim().is_empty()).map(serde_json::from_str::<Entry>).collect();
            match parsed {
                Ok(list) => {
                    for e in list.into_iter().filter(|e| e.version == ARTIFACT_VERSION && e.result.q == e.q) {
                        entries.insert(e.q, e.result);
                    }
                }
                Err(err) => {
                    warning = Some(format!("warning: cache {} is corrupt ({err}); rebuilding", path.display()));
                    let _ = fs::remove_file(&path);
                }
            }
        }
        (SweepCache { path, entries }, warning)
    }

    pub fn get(&self, q: u64) -> Option<&SdClassification> {
        self.entries.get(&q)
    }

    /// Appends new results; only the coordinating thread calls this.
    pub fn append(&mut self, results: &[SdClassification]) -> io::Result<()> {
        if results.is_empty() {
            return Ok(());
        }
        if let Some(dir) = self.path.parent() {
            fs::create_dir_all(dir)?;
        }
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        let mut buf = String::new();
        for r in results {
            let e = Entry { version: ARTIFACT_VERSION.to_string(), q: r.q, result: r.clone() };
            buf.push_str(&serde_json::to_string(&e).expect("entries serialize"));
            buf.push('\n');
            self.entries.insert(r.q, r.clone());
        }
        file.write_all(buf.as_bytes())
    }

    pub fn path(&self) -> &Path {
        &self.path
    }
}
