//! Content-addressed result cache. One record per file, named by the SHA-256
//! of the canonical job key. The first line holds the SHA-256 of the body so
//! truncated or edited files are detected and treated as absent.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::record::{JobKey, ResultRecord, SCHEMA};

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache I/O on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Outcome of a lookup.
#[derive(Debug, PartialEq, Eq)]
pub enum Lookup {
    Hit(ResultRecord),
    Miss,
    /// A file exists but is unusable; the reason is logged.
    Invalid(String),
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &JobKey) -> PathBuf {
        self.dir
            .join(format!("{}.json", sha256_hex(key.canonical().as_bytes())))
    }

    pub fn lookup(&self, key: &JobKey) -> Lookup {
        let path = self.path_for(key);
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Invalid(format!("{}: {e}", path.display())),
        };
        let Some((header, body)) = text.split_once('\n') else {
            return Lookup::Invalid(format!("{}: missing checksum line", path.display()));
        };
        if header.strip_prefix("sha256:") != Some(sha256_hex(body.as_bytes()).as_str()) {
            return Lookup::Invalid(format!("{}: checksum mismatch", path.display()));
        }
        let record: ResultRecord = match serde_json::from_str(body) {
            Ok(r) => r,
            Err(e) => return Lookup::Invalid(format!("{}: {e}", path.display())),
        };
        if record.key.schema != SCHEMA || &record.key != key {
            return Lookup::Miss;
        }
        Lookup::Hit(record)
    }

    /// The cached record, if usable. Unusable files produce a warning.
    pub fn get(&self, key: &JobKey) -> Option<ResultRecord> {
        match self.lookup(key) {
            Lookup::Hit(r) => Some(r),
            Lookup::Miss => None,
            Lookup::Invalid(why) => {
                log::warn!("ignoring cache entry: {why}");
                None
            }
        }
    }

    /// Writes atomically: a temporary file in the cache directory is renamed
    /// over the target.
    pub fn put(&self, record: &ResultRecord) -> Result<(), CacheError> {
        let io = |path: &Path| {
            let path = path.to_path_buf();
            move |source| CacheError::Io { path, source }
        };
        fs::create_dir_all(&self.dir).map_err(io(&self.dir))?;
        let body = serde_json::to_string(record).expect("plain data serializes");
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io(&self.dir))?;
        writeln!(tmp, "sha256:{}", sha256_hex(body.as_bytes())).map_err(io(tmp.path()))?;
        tmp.write_all(body.as_bytes()).map_err(io(tmp.path()))?;
        let target = self.path_for(&record.key);
        tmp.persist(&target).map_err(|e| CacheError::Io {
            path: target.clone(),
            source: e.error,
        })?;
        Ok(())
    }
}
