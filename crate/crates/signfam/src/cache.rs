//! Persistent solver results keyed by `"n,k,l,target,pruning"`.
//!
//! Timeout results are lower bounds: a later exact result, or a larger
//! lower bound, replaces them. Exact results are never overwritten.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use signfam_core::solver::{Status, Target};
use signfam_core::Profile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CachedStatus {
    Exact,
    LowerBoundTimeout,
}

impl From<Status> for CachedStatus {
    fn from(s: Status) -> Self {
        match s {
            Status::Exact => CachedStatus::Exact,
            Status::LowerBoundTimeout => CachedStatus::LowerBoundTimeout,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub value: usize,
    pub status: CachedStatus,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

pub fn cache_key(profile: Profile, target: Target, pruning: bool) -> String {
    let t = match target {
        Target::G => "g",
        Target::M => "m",
    };
    format!("{},{},{},{t},{pruning}", profile.n, profile.k, profile.l)
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct ResultCache {
    path: Option<PathBuf>,
    entries: BTreeMap<String, CacheEntry>,
}

impl ResultCache {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Loads `path`, or starts empty when it is missing. A file that does
    /// not parse is replaced by an empty cache and reported as a warning.
    pub fn open(path: impl AsRef<Path>) -> (Self, Option<String>) {
        let path = path.as_ref().to_path_buf();
        let (entries, warning) = match fs::read_to_string(&path) {
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => (BTreeMap::new(), None),
            Err(e) => (
                BTreeMap::new(),
                Some(format!("cannot read cache {}: {e}; starting fresh", path.display())),
            ),
            Ok(text) => match serde_json::from_str(&text) {
                Ok(map) => (map, None),
                Err(e) => (
                    BTreeMap::new(),
                    Some(format!("corrupt cache {}: {e}; starting fresh", path.display())),
                ),
            },
        };
        (
            Self {
                path: Some(path),
                entries,
            },
            warning,
        )
    }

    pub fn entries(&self) -> &BTreeMap<String, CacheEntry> {
        &self.entries
    }

    pub fn get(&self, key: &str) -> Option<&CacheEntry> {
        self.entries.get(key)
    }

    /// Stores a result unless it would downgrade what is already known.
    /// Returns whether the entry changed.
    pub fn record(&mut self, key: String, value: usize, status: CachedStatus) -> bool {
        let better = match self.entries.get(&key) {
            None => true,
            Some(old) => match (old.status, status) {
                (CachedStatus::Exact, _) => false,
                (CachedStatus::LowerBoundTimeout, CachedStatus::Exact) => true,
                (CachedStatus::LowerBoundTimeout, CachedStatus::LowerBoundTimeout) => value > old.value,
            },
        };
        if better {
            let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
            self.entries.insert(
                key,
                CacheEntry {
                    value,
                    status,
                    timestamp,
                },
            );
        }
        better
    }

    /// Writes through a temporary file so a crash never leaves half a cache.
    pub fn save(&self) -> std::io::Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string_pretty(&self.entries)?)?;
        fs::rename(tmp, path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn upgrade_rules() {
        let mut c = ResultCache::in_memory();
        let k = "6,3,2,g,true".to_string();
        assert!(c.record(k.clone(), 20, CachedStatus::LowerBoundTimeout));
        assert!(!c.record(k.clone(), 19, CachedStatus::LowerBoundTimeout));
        assert!(c.record(k.clone(), 25, CachedStatus::LowerBoundTimeout));
        assert!(c.record(k.clone(), 30, CachedStatus::Exact));
        assert!(!c.record(k.clone(), 31, CachedStatus::LowerBoundTimeout));
        assert_eq!(c.get(&k).unwrap().value, 30);
    }

    #[test]
    fn key_format() {
        let p = Profile::new(6, 3, 2).unwrap();
        assert_eq!(cache_key(p, Target::G, true), "6,3,2,g,true");
        assert_eq!(cache_key(p, Target::M, false), "6,3,2,m,false");
    }
}
