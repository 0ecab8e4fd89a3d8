//! Machine-readable output documents, stored under their SHA-256 hash.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub schema_version: String,
    pub kind: String,
    pub parameters: Value,
    pub payload: Value,
    pub verification: Value,
}

impl Document {
    pub fn new(kind: &str, parameters: Value, payload: Value, verification: Value) -> Document {
        Document { schema_version: SCHEMA_VERSION.into(), kind: kind.into(), parameters, payload, verification }
    }

    /// Pretty JSON with sorted object keys and a trailing newline.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut s = serde_json::to_string_pretty(self).expect("documents are plain JSON values");
        s.push('\n');
        s.into_bytes()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Document, String> {
        let d: Document = serde_json::from_slice(bytes).map_err(|e| format!("not a singmod document: {e}"))?;
        if d.schema_version != SCHEMA_VERSION {
            return Err(format!("unsupported schema version {:?}", d.schema_version));
        }
        Ok(d)
    }

    /// Write to `dir/<sha256>.json`, returning the path.
    pub fn write(&self, dir: &Path) -> std::io::Result<PathBuf> {
        let bytes = self.to_bytes();
        std::fs::create_dir_all(dir)?;
        let path = dir.join(format!("{}.json", content_hash(&bytes)));
        std::fs::write(&path, &bytes)?;
        Ok(path)
    }
}

pub fn content_hash(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
