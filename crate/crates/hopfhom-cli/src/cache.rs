//! On-disk cache of computed homology dimensions.
//!
//! Entries are JSON files named by the sha256 of their key. Each file carries its key and a
//! checksum of the payload; any mismatch or parse failure is treated as corruption, and the
//! caller recomputes and overwrites.

use std::fs;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::report::sha256_hex;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Payload {
    pub dims: Vec<usize>,
    /// [even, odd] as (dim, stabilized), present for hp.
    pub periodic: Option<Vec<(Option<usize>, bool)>>,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    checksum: String,
    payload: Payload,
}

pub enum Lookup {
    Hit(Payload),
    Miss,
    Corrupt(String),
}

pub struct Cache {
    dir: PathBuf,
}

fn checksum(p: &Payload) -> String {
    sha256_hex(serde_json::to_string(p).expect("payload serializes").as_bytes())
}

impl Cache {
    /// `HOPFHOM_CACHE_DIR`, or `./.hopfhom-cache`.
    pub fn from_env() -> Self {
        let dir = std::env::var_os("HOPFHOM_CACHE_DIR").map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".hopfhom-cache"));
        Cache { dir }
    }

    #[cfg(test)]
    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.json", sha256_hex(key.as_bytes())))
    }

    pub fn get(&self, key: &str) -> Lookup {
        let text = match fs::read_to_string(self.path(key)) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Corrupt(e.to_string()),
        };
        match serde_json::from_str::<Entry>(&text) {
            Err(e) => Lookup::Corrupt(e.to_string()),
            Ok(e) if e.key != key => Lookup::Corrupt("key mismatch".into()),
            Ok(e) if e.checksum != checksum(&e.payload) => Lookup::Corrupt("checksum mismatch".into()),
            Ok(e) => Lookup::Hit(e.payload),
        }
    }

    /// Writes through a temporary file and a rename, so concurrent writers of the same key
    /// leave one complete entry.
    pub fn put(&self, key: &str, payload: &Payload) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let entry = Entry { key: key.into(), checksum: checksum(payload), payload: payload.clone() };
        let path = self.path(key);
        let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
        fs::write(&tmp, serde_json::to_string(&entry).expect("entry serializes"))?;
        fs::rename(tmp, path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::at(dir.path());
        let p = Payload { dims: vec![1, 0, 1], periodic: None };
        assert!(matches!(c.get("k"), Lookup::Miss));
        c.put("k", &p).unwrap();
        assert!(matches!(c.get("k"), Lookup::Hit(ref q) if *q == p));
        let text = fs::read_to_string(c.path("k")).unwrap().replace("[1,0,1]", "[1,0,2]");
        fs::write(c.path("k"), text).unwrap();
        assert!(matches!(c.get("k"), Lookup::Corrupt(_)));
        fs::write(c.path("k"), "garbage").unwrap();
        assert!(matches!(c.get("k"), Lookup::Corrupt(_)));
        assert_ne!(c.path("a"), c.path("b"));
    }
}
