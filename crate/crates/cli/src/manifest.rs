//! Run manifests: every command writes one JSON record of its resolved
//! parameters, seeds, input digests and outputs, sufficient to reproduce the
//! run. Output files themselves never embed timing, so a rerun with the same
//! manifest parameters is byte-identical; only the manifest's own
//! `duration_ms` varies.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::formats::SCHEMA_VERSION;

#[derive(Debug, Serialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub parameters: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<String>,
    pub duration_ms: u128,
}

pub struct ManifestBuilder {
    command: &'static str,
    parameters: serde_json::Value,
    seed: Option<u64>,
    inputs: Vec<FileDigest>,
    outputs: Vec<String>,
    started: Instant,
}

impl ManifestBuilder {
    pub fn new(command: &'static str, parameters: serde_json::Value, seed: Option<u64>) -> Self {
        Self {
            command,
            parameters,
            seed,
            inputs: Vec::new(),
            outputs: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn input(&mut self, path: &Path) -> Result<(), CliError> {
        let bytes = std::fs::read(path)
            .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        let mut hasher = Sha256::new();
        hasher.update(&bytes);
        self.inputs.push(FileDigest {
            path: path.display().to_string(),
            sha256: hex::encode(hasher.finalize()),
        });
        Ok(())
    }

    pub fn output(&mut self, path: &Path) {
        self.outputs.push(path.display().to_string());
    }

    /// Writes `<primary output stem>.manifest.json` next to the primary
    /// output and returns its path.
    pub fn write(self, primary_output: &Path) -> Result<PathBuf, CliError> {
        let manifest = RunManifest {
            schema_version: SCHEMA_VERSION,
            tool: "infosel",
            version: env!("CARGO_PKG_VERSION"),
            command: self.command,
            parameters: self.parameters,
            seed: self.seed,
            inputs: self.inputs,
            outputs: self.outputs,
            duration_ms: self.started.elapsed().as_millis(),
        };
        let path = manifest_path(primary_output);
        crate::formats::write_json(&manifest, &path)?;
        Ok(path)
    }
}

pub fn manifest_path(primary_output: &Path) -> PathBuf {
    let stem = primary_output
        .file_stem()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_else(|| "run".to_string());
    primary_output.with_file_name(format!("{stem}.manifest.json"))
}
