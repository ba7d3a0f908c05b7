//! Persistent store of evaluated constants, keyed by `"<index>@<digits>"`.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::RwLock;

use crate::error::{MzvError, Result};
use crate::index::Index;

/// Environment variable naming the default cache file.
pub const CACHE_ENV: &str = "MZV_CACHE";

/// Decimal strings of evaluated MZVs.
///
/// The file is a JSON object with sorted keys, e.g. `{"2,1@40": "1.2020…"}`.
/// Saving writes a sibling temporary file and renames it over the target.
#[derive(Debug, Default)]
pub struct EvalCache {
    path: Option<PathBuf>,
    entries: RwLock<BTreeMap<String, String>>,
    dirty: AtomicBool,
}

impl EvalCache {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Loads `path` if it exists; a missing file starts an empty cache bound to it.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let entries = match std::fs::read_to_string(&path) {
            Ok(text) if text.trim().is_empty() => BTreeMap::new(),
            Ok(text) => serde_json::from_str(&text).map_err(|source| MzvError::CacheFormat {
                path: path.clone(),
                source,
            })?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => BTreeMap::new(),
            Err(source) => return Err(MzvError::CacheIo { path, source }),
        };
        Ok(EvalCache {
            path: Some(path),
            entries: RwLock::new(entries),
            dirty: AtomicBool::new(false),
        })
    }

    /// Path from `MZV_CACHE`, if set and nonempty.
    pub fn path_from_env() -> Option<PathBuf> {
        std::env::var_os(CACHE_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn key(k: &Index, digits: u32) -> String {
        format!("{k}@{digits}")
    }

    pub fn get(&self, k: &Index, digits: u32) -> Option<String> {
        self.entries
            .read()
            .unwrap()
            .get(&Self::key(k, digits))
            .cloned()
    }

    pub fn insert(&self, k: &Index, digits: u32, value: String) {
        let mut entries = self.entries.write().unwrap();
        let key = Self::key(k, digits);
        if entries.get(&key) != Some(&value) {
            entries.insert(key, value);
            self.dirty.store(true, Ordering::Release);
        }
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Writes the cache back if it is file-backed and has changed.
    pub fn save(&self) -> Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        if !self.dirty.load(Ordering::Acquire) {
            return Ok(());
        }
        let entries = self.entries.read().unwrap();
        let io_err = |source| MzvError::CacheIo {
            path: path.clone(),
            source,
        };
        let dir = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
            _ => PathBuf::from("."),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io_err)?;
        let text = serde_json::to_string_pretty(&*entries).expect("string map serializes");
        tmp.write_all(text.as_bytes()).map_err(io_err)?;
        tmp.write_all(b"\n").map_err(io_err)?;
        tmp.persist(path).map_err(|e| io_err(e.error))?;
        self.dirty.store(false, Ordering::Release);
        Ok(())
    }
}
