//! Write-once result cache keyed by a SHA-256 of the request.

use std::fs;
use std::io;
use std::path::PathBuf;

use sha2::{Digest, Sha256};

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn open(dir: Option<PathBuf>) -> io::Result<Self> {
        if let Some(d) = &dir {
            fs::create_dir_all(d)?;
        }
        Ok(Cache { dir })
    }

    fn path(&self, key: &[&str]) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        let mut h = Sha256::new();
        h.update(concat!("cn-spectra/", env!("CARGO_PKG_VERSION")));
        for part in key {
            h.update([0u8]);
            h.update(part.as_bytes());
        }
        let hex: String = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
        Some(dir.join(format!("{hex}.out")))
    }

    pub fn get(&self, key: &[&str]) -> Option<String> {
        fs::read_to_string(self.path(key)?).ok()
    }

    /// Stores `value` unless an entry exists. The file appears atomically.
    pub fn put(&self, key: &[&str], value: &str) -> io::Result<()> {
        let Some(path) = self.path(key) else {
            return Ok(());
        };
        if path.exists() {
            return Ok(());
        }
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, value)?;
        fs::rename(&tmp, &path)
    }

    pub fn get_or_try<E>(
        &self,
        key: &[&str],
        compute: impl FnOnce() -> Result<String, E>,
    ) -> Result<String, E>
    where
        E: From<io::Error>,
    {
        if let Some(hit) = self.get(key) {
            return Ok(hit);
        }
        let value = compute()?;
        self.put(key, &value)?;
        Ok(value)
    }
}
