//! On-disk cache of character tables, one JSON file per group.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{Context, Result};
use sfcgroup::chartab::{self, CharacterTable, MAX_TABLE_CLASSES};
use sfcgroup::PermutationGroup;
use sha2::{Digest, Sha256};

use crate::VERSION;

#[derive(Clone, Debug)]
pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)
            .with_context(|| format!("cannot create cache directory {}", dir.display()))?;
        Ok(TableCache {
            dir: dir.to_path_buf(),
        })
    }

    /// File stem for a canonical spec: SHA-256 of the version and the spec.
    pub fn key(canonical_spec: &str) -> String {
        let mut h = Sha256::new();
        h.update(VERSION.as_bytes());
        h.update(b"\n");
        h.update(canonical_spec.as_bytes());
        hex::encode(h.finalize())
    }

    pub fn path(&self, canonical_spec: &str) -> PathBuf {
        self.dir.join(format!("{}.json", Self::key(canonical_spec)))
    }

    /// Installs the cached table on `g`, or computes and stores it. Groups
    /// too large for a table are left alone. A stale or corrupt entry is
    /// recomputed and overwritten.
    pub fn attach(
        &self,
        canonical_spec: &str,
        g: &PermutationGroup,
    ) -> Result<Option<Arc<CharacterTable>>> {
        if g.class_count()? > MAX_TABLE_CLASSES {
            return Ok(None);
        }
        let path = self.path(canonical_spec);
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(t) = serde_json::from_str::<CharacterTable>(&text) {
                if let Ok(t) = chartab::install_character_table(g, t) {
                    return Ok(Some(t));
                }
            }
            eprintln!(
                "warning: discarding unusable cache entry {}",
                path.display()
            );
        }
        let t = chartab::character_table(g)?;
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_string(&*t)?)
            .with_context(|| format!("cannot write {}", tmp.display()))?;
        fs::rename(&tmp, &path).with_context(|| format!("cannot write {}", path.display()))?;
        Ok(Some(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_depends_on_spec() {
        assert_ne!(TableCache::key("Q8"), TableCache::key("Q12"));
        assert_eq!(TableCache::key("Q8").len(), 64);
    }
}
