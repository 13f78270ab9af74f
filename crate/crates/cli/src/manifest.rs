//! Output inventory: every run writes `manifest.json` listing each
//! artifact with its sha256, then re-reads the directory to verify the
//! bytes on disk match what was computed in memory.
//!
//! Wall-clock sidecars are listed without a hash — they are the one
//! output class allowed to differ between otherwise identical runs.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thermoforge_core::{Error, Result};

#[derive(Clone, Debug)]
pub struct Artifact {
    pub name: String,
    pub bytes: Vec<u8>,
    /// False exempts the file from hashing and byte-level verification.
    pub hashed: bool,
}

impl Artifact {
    pub fn hashed(name: impl Into<String>, bytes: impl Into<Vec<u8>>) -> Artifact {
        Artifact {
            name: name.into(),
            bytes: bytes.into(),
            hashed: true,
        }
    }

    pub fn unhashed(name: impl Into<String>, bytes: impl Into<Vec<u8>>) -> Artifact {
        Artifact {
            name: name.into(),
            bytes: bytes.into(),
            hashed: false,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    /// Absent for files excluded from determinism checks.
    pub sha256: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub files: Vec<ManifestEntry>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Manifest for a set of artifacts, sorted by file name. Duplicate names
/// indicate a suite bug and are rejected.
pub fn build_manifest(artifacts: &[Artifact]) -> Result<Manifest> {
    let mut files: Vec<ManifestEntry> = artifacts
        .iter()
        .map(|a| ManifestEntry {
            name: a.name.clone(),
            sha256: a.hashed.then(|| sha256_hex(&a.bytes)),
        })
        .collect();
    files.sort_by(|a, b| a.name.cmp(&b.name));
    for pair in files.windows(2) {
        if pair[0].name == pair[1].name {
            return Err(Error::InvalidParameter(format!(
                "duplicate artifact name '{}'",
                pair[0].name
            )));
        }
    }
    Ok(Manifest { files })
}

/// Write all artifacts plus `manifest.json` into `dir`, then verify the
/// directory against the manifest.
pub fn write_all(dir: &Path, artifacts: &[Artifact]) -> Result<Manifest> {
    let manifest = build_manifest(artifacts)?;
    std::fs::create_dir_all(dir)
        .map_err(|e| Error::Data(format!("cannot create {}: {e}", dir.display())))?;
    for artifact in artifacts {
        let path = dir.join(&artifact.name);
        std::fs::write(&path, &artifact.bytes)
            .map_err(|e| Error::Data(format!("cannot write {}: {e}", path.display())))?;
    }
    let mut text = serde_json::to_string_pretty(&manifest)
        .map_err(|e| Error::Unsupported(format!("manifest serialization: {e}")))?;
    text.push('\n');
    std::fs::write(dir.join("manifest.json"), text)
        .map_err(|e| Error::Data(format!("cannot write manifest.json: {e}")))?;
    verify(dir, &manifest)?;
    Ok(manifest)
}

/// Check that every manifest entry exists on disk and hashed entries
/// match their recorded digest.
pub fn verify(dir: &Path, manifest: &Manifest) -> Result<()> {
    for entry in &manifest.files {
        let path = dir.join(&entry.name);
        let bytes = std::fs::read(&path)
            .map_err(|e| Error::Data(format!("manifest names missing file {}: {e}", entry.name)))?;
        if let Some(expected) = &entry.sha256 {
            let actual = sha256_hex(&bytes);
            if &actual != expected {
                return Err(Error::Data(format!(
                    "hash mismatch for {}: manifest {expected}, disk {actual}",
                    entry.name
                )));
            }
        }
    }
    Ok(())
}

/// Load and verify the manifest found in `dir`.
pub fn verify_dir(dir: &Path) -> Result<Manifest> {
    let text = std::fs::read_to_string(dir.join("manifest.json"))
        .map_err(|e| Error::Data(format!("cannot read manifest.json: {e}")))?;
    let manifest: Manifest = serde_json::from_str(&text)
        .map_err(|e| Error::Data(format!("malformed manifest.json: {e}")))?;
    verify(dir, &manifest)?;
    Ok(manifest)
}
