use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const MANIFEST_FILE: &str = "manifest.json";
pub const CONFIG_FILE: &str = "config.toml";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub run_id: String,
    /// SHA-256 of the stored `config.toml`, hex encoded.
    pub config_hash: String,
    pub code_version: String,
    pub started_at: String,
    pub finished_at: String,
    pub seed: u64,
    pub planners: Vec<String>,
    pub betas: Vec<f64>,
    pub trials: Vec<u64>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        fs::write(dir.join(MANIFEST_FILE), serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }

    pub fn read(dir: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(dir.join(MANIFEST_FILE))
            .map_err(|e| CliError::Runtime(format!("{}: {e}", dir.join(MANIFEST_FILE).display())))?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Checks the stored config against the recorded hash.
    pub fn verify(&self, dir: &Path) -> Result<(), CliError> {
        let bytes = fs::read(dir.join(CONFIG_FILE))?;
        let actual = sha256_hex(&bytes);
        if actual != self.config_hash {
            return Err(CliError::Runtime(format!("config.toml hash {actual} does not match manifest {}", self.config_hash)));
        }
        Ok(())
    }
}
