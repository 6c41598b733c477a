//! On-disk enumerator cache keyed by the SHA-256 of the code's field order
//! and reduced generator matrix, so equal codes share an entry however they
//! were specified. Entries hold the serialized enumerator; a corrupt or
//! mismatched entry is ignored and overwritten.

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use wesym_core::code::LinearCode;

use crate::dto::EnumeratorDto;

pub fn key(code: &LinearCode) -> String {
    let mut h = Sha256::new();
    h.update(format!("wesym-enum-v1 q={} n={} k={}\n", code.q(), code.len(), code.dim()));
    for row in code.reduced_generator() {
        let line: Vec<String> = row.iter().map(ToString::to_string).collect();
        h.update(line.join(" "));
        h.update("\n");
    }
    hex::encode(h.finalize())
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, code: &LinearCode) -> PathBuf {
        self.dir.join(format!("{}.json", key(code)))
    }

    pub fn get(&self, code: &LinearCode) -> Option<EnumeratorDto> {
        let text = std::fs::read_to_string(self.path(code)).ok()?;
        let dto: EnumeratorDto = serde_json::from_str(&text).ok()?;
        let fits = dto.q == code.q() as u64 && dto.n == code.len() && dto.k == code.dim() && dto.coeffs.len() == code.len() + 1;
        fits.then_some(dto)
    }

    /// Writes through a temporary file so readers never see a partial entry.
    pub fn put(&self, code: &LinearCode, dto: &EnumeratorDto) -> std::io::Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        let path = self.path(code);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        std::fs::write(&tmp, serde_json::to_string(dto).expect("serializable"))?;
        std::fs::rename(tmp, path)
    }
}
