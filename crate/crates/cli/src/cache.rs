use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Result;
use sha2::{Digest, Sha256};

/// Results stored on disk, keyed by input content, command and seed.
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: &Path) -> Result<Cache> {
        fs::create_dir_all(dir)?;
        Ok(Cache {
            dir: dir.to_path_buf(),
        })
    }

    pub fn key(input: &[u8], command: &str, seed: u64) -> String {
        let mut h = Sha256::new();
        h.update(Sha256::digest(input));
        h.update(command.as_bytes());
        h.update(seed.to_le_bytes());
        hex::encode(h.finalize())
    }

    pub fn get(&self, key: &str) -> Option<String> {
        fs::read_to_string(self.dir.join(format!("{key}.json"))).ok()
    }

    pub fn put(&self, key: &str, payload: &str) -> Result<()> {
        let tmp = self.dir.join(format!("{key}.tmp"));
        fs::write(&tmp, payload)?;
        fs::rename(tmp, self.dir.join(format!("{key}.json")))?;
        Ok(())
    }
}
