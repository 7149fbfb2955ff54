use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use markoff_k3::CensusRow;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "MK3_CACHE_DIR";

/// Content-addressed store of orbit-size summaries, one JSON file per
/// `(version, p, k, options)` key.
pub struct RunCache {
    dir: PathBuf,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    row: CensusRow,
}

impl RunCache {
    /// The cache named by `MK3_CACHE_DIR`, if set.
    pub fn from_env() -> io::Result<Option<Self>> {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => Self::open(Path::new(&d)).map(Some),
            _ => Ok(None),
        }
    }

    pub fn open(dir: &Path) -> io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(RunCache {
            dir: dir.to_path_buf(),
        })
    }

    fn key(p: u64, k: u64, options: &str) -> String {
        let text = format!("{}|{p}|{k}|{options}", env!("CARGO_PKG_VERSION"));
        hex::encode(Sha256::digest(text.as_bytes()))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, p: u64, k: u64, options: &str) -> Option<CensusRow> {
        let key = Self::key(p, k, options);
        let text = fs::read_to_string(self.path(&key)).ok()?;
        let e: Entry = serde_json::from_str(&text).ok()?;
        (e.key == key).then_some(e.row)
    }

    pub fn put(&self, options: &str, row: &CensusRow) -> io::Result<()> {
        let key = Self::key(row.p, row.k, options);
        let entry = Entry {
            key: key.clone(),
            row: row.clone(),
        };
        let body = serde_json::to_string(&entry).map_err(io::Error::other)?;
        write_atomic(&self.path(&key), body.as_bytes())
    }
}

/// Writes through a temporary file and a rename, so readers never see a
/// partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_option_keys() {
        let dir = tempfile::tempdir().unwrap();
        let cache = RunCache::open(dir.path()).unwrap();
        let row = CensusRow {
            p: 7,
            k: 1,
            sizes: vec![64],
        };
        assert!(cache.get(7, 1, "default").is_none());
        cache.put("default", &row).unwrap();
        assert_eq!(cache.get(7, 1, "default"), Some(row));
        assert!(cache.get(7, 1, "deltas").is_none());
    }
}
