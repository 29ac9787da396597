//! Content-addressed, append-only certificate cache (JSON lines).

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{kt_with_witnesses, KtCertificate};
use crate::bits::BitString;
use crate::machine::{Program, MACHINE_VERSION};

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Entry {
    key: String,
    budget: u64,
    certificate: KtCertificate,
}

pub struct KtCache {
    path: Option<PathBuf>,
    entries: HashMap<String, (u64, KtCertificate)>,
    pub hits: u64,
    pub misses: u64,
}

/// `sha256(machineVersion ‖ w ‖ u)` over the hex+length encodings.
pub fn cache_key(w: &BitString, u: &BitString) -> String {
    let mut h = Sha256::new();
    h.update(MACHINE_VERSION.as_bytes());
    for s in [w, u] {
        h.update(b"|");
        h.update(s.len().to_string().as_bytes());
        h.update(b":");
        h.update(s.to_hex().as_bytes());
    }
    hex::encode(h.finalize())
}

impl KtCache {
    pub fn in_memory() -> KtCache {
        KtCache { path: None, entries: HashMap::new(), hits: 0, misses: 0 }
    }

    /// Loads an existing cache file (missing file = empty cache). Later lines win.
    pub fn open(path: &Path) -> io::Result<KtCache> {
        let mut cache = KtCache { path: Some(path.to_path_buf()), ..KtCache::in_memory() };
        if path.exists() {
            for line in BufReader::new(File::open(path)?).lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let e: Entry = serde_json::from_str(&line).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
                cache.entries.insert(e.key, (e.budget, e.certificate));
            }
        }
        Ok(cache)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// A cached certificate that answers a query at `budget`: exact, or computed with at least this budget.
    pub fn get(&self, w: &BitString, u: &BitString, budget: u64) -> Option<&KtCertificate> {
        match self.entries.get(&cache_key(w, u)) {
            Some((b, c)) if c.exact || *b >= budget => Some(c),
            _ => None,
        }
    }

    pub fn put(&mut self, budget: u64, cert: KtCertificate) -> io::Result<()> {
        let key = cache_key(&cert.target, &cert.condition);
        if let Some((b, c)) = self.entries.get(&key) {
            if *b == budget && *c == cert {
                return Ok(());
            }
        }
        if let Some(path) = &self.path {
            let e = Entry { key: key.clone(), budget, certificate: cert.clone() };
            let mut f = OpenOptions::new().create(true).append(true).open(path)?;
            writeln!(f, "{}", serde_json::to_string(&e).expect("entry serializes"))?;
        }
        self.entries.insert(key, (budget, cert));
        Ok(())
    }

    /// Cached `kt_with_witnesses`.
    pub fn kt(&mut self, w: &BitString, u: &BitString, budget: u64, witnesses: &[(Program, u64)]) -> io::Result<KtCertificate> {
        if let Some(c) = self.get(w, u, budget) {
            let c = c.clone();
            // A caller-supplied witness may still beat a cached non-exact bound.
            if c.exact || witnesses.is_empty() {
                self.hits += 1;
                return Ok(c);
            }
        }
        self.misses += 1;
        let c = kt_with_witnesses(w, u, budget, witnesses);
        self.put(budget, c.clone())?;
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn persists_and_reloads() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("kt.jsonl");
        let w = BitString::parse01("0110").unwrap();
        let u = BitString::new();
        let mut c = KtCache::open(&path).unwrap();
        let first = c.kt(&w, &u, 12, &[]).unwrap();
        assert_eq!(c.misses, 1);
        let again = c.kt(&w, &u, 12, &[]).unwrap();
        assert_eq!(first, again);
        assert_eq!(c.hits, 1);
        let reloaded = KtCache::open(&path).unwrap();
        assert_eq!(reloaded.get(&w, &u, 12), Some(&first));
        // Idempotent: re-putting the same value does not grow the file.
        let before = std::fs::read_to_string(&path).unwrap();
        c.put(12, first).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), before);
    }

    #[test]
    fn key_depends_on_both_strings() {
        let a = BitString::parse01("01").unwrap();
        let b = BitString::parse01("010").unwrap();
        assert_ne!(cache_key(&a, &b), cache_key(&b, &a));
        assert_ne!(cache_key(&a, &BitString::new()), cache_key(&BitString::parse01("010").unwrap(), &BitString::new()));
    }
}
