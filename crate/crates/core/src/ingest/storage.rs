use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::model::{CorpusSnapshot, SCHEMA_VERSION};

/// Persistence for corpus snapshots.
pub trait SnapshotStore {
    fn save(&self, snapshot: &CorpusSnapshot) -> Result<()>;
    fn load(&self) -> Result<CorpusSnapshot>;
}

/// Directory-backed store: `manifest.json` plus one newline-delimited JSON
/// file per collection, every collection sorted by id.
#[derive(Debug, Clone)]
pub struct FileStore {
    dir: PathBuf,
}

const MANIFEST: &str = "manifest.json";
const SOURCES: &str = "sources.jsonl";
const HOTELS: &str = "hotels.jsonl";
const REVIEWS: &str = "reviews.jsonl";

#[derive(Serialize, Deserialize)]
struct Manifest {
    schema_version: u32,
}

impl FileStore {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn exists(&self) -> bool {
        self.dir.join(MANIFEST).is_file()
    }

    fn write(&self, name: &str, bytes: &[u8]) -> Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, bytes).map_err(|e| Error::io(path, e))
    }

    fn read(&self, name: &str) -> Result<String> {
        let path = self.dir.join(name);
        fs::read_to_string(&path).map_err(|e| Error::io(path, e))
    }

    /// Stores an auxiliary JSON document (computed aggregates, reports) next to
    /// the snapshot.
    pub fn save_artifact<T: Serialize>(&self, name: &str, value: &T) -> Result<()> {
        fs::create_dir_all(&self.dir).map_err(|e| Error::io(&self.dir, e))?;
        let mut bytes = serde_json::to_vec_pretty(value)?;
        bytes.push(b'\n');
        self.write(name, &bytes)
    }

    pub fn load_artifact<T: DeserializeOwned>(&self, name: &str) -> Result<Option<T>> {
        if !self.dir.join(name).is_file() {
            return Ok(None);
        }
        Ok(Some(serde_json::from_str(&self.read(name)?)?))
    }
}

fn to_jsonl<T: Serialize>(items: &[T]) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    for item in items {
        serde_json::to_writer(&mut out, item)?;
        out.push(b'\n');
    }
    Ok(out)
}

fn from_jsonl<T: DeserializeOwned>(text: &str) -> Result<Vec<T>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(Error::from))
        .collect()
}

impl SnapshotStore for FileStore {
    fn save(&self, snapshot: &CorpusSnapshot) -> Result<()> {
        snapshot.validate()?;
        let mut sorted = snapshot.clone();
        sorted.sort();
        fs::create_dir_all(&self.dir).map_err(|e| Error::io(&self.dir, e))?;
        self.write(SOURCES, &to_jsonl(&sorted.sources)?)?;
        self.write(HOTELS, &to_jsonl(&sorted.hotels)?)?;
        self.write(REVIEWS, &to_jsonl(&sorted.reviews)?)?;
        let manifest = serde_json::to_vec(&Manifest {
            schema_version: sorted.schema_version,
        })?;
        self.write(MANIFEST, &manifest)
    }

    fn load(&self) -> Result<CorpusSnapshot> {
        let manifest: Manifest = serde_json::from_str(&self.read(MANIFEST)?)?;
        if manifest.schema_version != SCHEMA_VERSION {
            return Err(Error::Schema {
                found: manifest.schema_version,
                expected: SCHEMA_VERSION,
            });
        }
        let mut snapshot = CorpusSnapshot {
            schema_version: manifest.schema_version,
            sources: from_jsonl(&self.read(SOURCES)?)?,
            hotels: from_jsonl(&self.read(HOTELS)?)?,
            reviews: from_jsonl(&self.read(REVIEWS)?)?,
        };
        snapshot.sort();
        Ok(snapshot)
    }
}
