//! Persistent fingerprint cache: one JSON object per line,
//! `{"g6": <canonical graph6>, "fingerprint": {...}}`, append-only.
//!
//! A malformed final line is treated as an interrupted write: it is dropped
//! and the file truncated before the next append. A malformed line anywhere
//! else aborts the load. Each load recomputes a random 1% of the entries
//! (at least one) and refuses the file if any disagrees.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::graph6;
use crate::spectral::{fingerprint, Fingerprint, FingerprintJson};

pub const CACHE_ENV: &str = "NLSPEC_CACHE";

#[derive(Serialize, Deserialize)]
struct Line {
    g6: String,
    fingerprint: FingerprintJson,
}

/// The cache location: the explicit path if given, else `$NLSPEC_CACHE`.
pub fn cache_path(flag: Option<&Path>) -> Option<PathBuf> {
    flag.map(Path::to_path_buf).or_else(|| {
        std::env::var_os(CACHE_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
    })
}

pub struct FingerprintCache {
    path: PathBuf,
    entries: HashMap<String, Fingerprint>,
    writer: BufWriter<File>,
}

impl FingerprintCache {
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        Self::open_with_rng(path, &mut rand::thread_rng())
    }

    pub fn open_with_rng(path: impl AsRef<Path>, rng: &mut impl Rng) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut text = String::new();
        if path.exists() {
            File::open(&path)?.read_to_string(&mut text)?;
        }
        let (entries, keep) = parse(&text, &path)?;
        if keep < text.len() {
            log::warn!(
                "{}: dropping malformed final line (interrupted write?)",
                path.display()
            );
        }
        let file = OpenOptions::new().create(true).append(true).open(&path)?;
        // Drop a torn tail, and terminate a final valid line that lacks a newline.
        file.set_len(keep as u64)?;
        let mut writer = BufWriter::new(file);
        if keep > 0 && !text[..keep].ends_with('\n') {
            writer.write_all(b"\n")?;
            writer.flush()?;
        }
        let cache = FingerprintCache {
            path,
            entries,
            writer,
        };
        cache.audit(rng)?;
        Ok(cache)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, g6: &str) -> Option<&Fingerprint> {
        self.entries.get(g6)
    }

    /// Read-only view, safe to share across workers.
    pub fn entries(&self) -> &HashMap<String, Fingerprint> {
        &self.entries
    }

    /// Records a fingerprint for a canonical graph6 key. Existing keys are
    /// left untouched.
    pub fn insert(&mut self, g6: &str, fp: &Fingerprint) -> Result<()> {
        if self.entries.contains_key(g6) {
            return Ok(());
        }
        let line = Line {
            g6: g6.to_string(),
            fingerprint: fp.to_json(),
        };
        serde_json::to_writer(&mut self.writer, &line)?;
        self.writer.write_all(b"\n")?;
        self.entries.insert(g6.to_string(), fp.clone());
        Ok(())
    }

    pub fn flush(&mut self) -> Result<()> {
        self.writer.flush()?;
        Ok(())
    }

    fn audit(&self, rng: &mut impl Rng) -> Result<()> {
        if self.entries.is_empty() {
            return Ok(());
        }
        let mut keys: Vec<&String> = self.entries.keys().collect();
        keys.sort();
        let k = keys.len().div_ceil(100);
        for i in rand::seq::index::sample(rng, keys.len(), k) {
            let key = keys[i];
            let g = graph6::decode(key)?;
            if canonical_form(&g).g6 != *key {
                return Err(Error::Cache(format!(
                    "key {key:?} is not in canonical form"
                )));
            }
            if fingerprint(&g).to_json() != self.entries[key].to_json() {
                return Err(Error::Cache(format!(
                    "stored fingerprint of {key:?} is wrong"
                )));
            }
        }
        log::debug!(
            "{}: audited {k} of {} entries",
            self.path.display(),
            keys.len()
        );
        Ok(())
    }
}

impl Drop for FingerprintCache {
    fn drop(&mut self) {
        if let Err(e) = self.writer.flush() {
            log::warn!("{}: flush failed: {e}", self.path.display());
        }
    }
}

/// Parses the cache text; returns the entries and the byte length of the
/// valid prefix.
fn parse(text: &str, path: &Path) -> Result<(HashMap<String, Fingerprint>, usize)> {
    let mut entries = HashMap::new();
    let mut offset = 0;
    let lines: Vec<&str> = text.split_inclusive('\n').collect();
    for (i, raw) in lines.iter().enumerate() {
        let body = raw.trim_end_matches(['\n', '\r']);
        let parsed = if body.trim().is_empty() {
            Ok(None)
        } else {
            serde_json::from_str::<Line>(body)
                .map_err(Error::from)
                .and_then(|l| Ok(Some((l.g6, Fingerprint::from_json(&l.fingerprint)?))))
        };
        match parsed {
            Ok(Some((g6, fp))) => {
                entries.insert(g6, fp);
            }
            Ok(None) => {}
            Err(e) if i + 1 == lines.len() => {
                log::debug!("{}: final line unreadable: {e}", path.display());
                return Ok((entries, offset));
            }
            Err(e) => {
                return Err(Error::Cache(format!(
                    "{}: line {} is malformed: {e}",
                    path.display(),
                    i + 1
                )))
            }
        }
        offset += raw.len();
    }
    Ok((entries, offset))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, generalized_friendship};
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn entry(g: &crate::graph::Graph) -> (String, Fingerprint) {
        (canonical_form(g).g6, fingerprint(g))
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("fp.ndjson");
        let (k1, f1) = entry(&cycle(5).unwrap());
        let (k2, f2) = entry(&generalized_friendship(2, 2).unwrap());
        {
            let mut c = FingerprintCache::open(&path).unwrap();
            assert!(c.is_empty());
            c.insert(&k1, &f1).unwrap();
            c.insert(&k2, &f2).unwrap();
            c.insert(&k2, &f2).unwrap();
        }
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 2);
        let c = FingerprintCache::open(&path).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.get(&k2), Some(&f2));
    }

    #[test]
    fn torn_tail_is_truncated() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("fp.ndjson");
        let (k1, f1) = entry(&cycle(5).unwrap());
        {
            let mut c = FingerprintCache::open(&path).unwrap();
            c.insert(&k1, &f1).unwrap();
        }
        let good = std::fs::read_to_string(&path).unwrap();
        std::fs::write(&path, format!("{good}{{\"g6\":\"D")).unwrap();
        let (k2, f2) = entry(&cycle(4).unwrap());
        {
            let mut c = FingerprintCache::open(&path).unwrap();
            assert_eq!(c.len(), 1);
            c.insert(&k2, &f2).unwrap();
        }
        let c = FingerprintCache::open(&path).unwrap();
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn earlier_corruption_aborts() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("fp.ndjson");
        let (k1, f1) = entry(&cycle(5).unwrap());
        let line = serde_json::to_string(&Line {
            g6: k1,
            fingerprint: f1.to_json(),
        })
        .unwrap();
        std::fs::write(&path, format!("not json\n{line}\n")).unwrap();
        assert!(matches!(
            FingerprintCache::open(&path),
            Err(Error::Cache(_))
        ));
    }

    #[test]
    fn audit_catches_wrong_values() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("fp.ndjson");
        let (k, _) = entry(&cycle(5).unwrap());
        let wrong = fingerprint(&cycle(4).unwrap());
        let line = serde_json::to_string(&Line {
            g6: k,
            fingerprint: wrong.to_json(),
        })
        .unwrap();
        std::fs::write(&path, format!("{line}\n")).unwrap();
        let mut rng = StdRng::seed_from_u64(7);
        assert!(matches!(
            FingerprintCache::open_with_rng(&path, &mut rng),
            Err(Error::Cache(_))
        ));
    }

    #[test]
    fn path_resolution() {
        let p = Path::new("/tmp/x.ndjson");
        assert_eq!(cache_path(Some(p)), Some(p.to_path_buf()));
    }
}
