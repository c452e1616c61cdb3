use std::fs;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const ORACLE_TOL: f64 = 1e-8;

#[derive(Clone, Debug, Default, Serialize, PartialEq)]
pub struct OracleSummary {
    pub checked: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl OracleSummary {
    pub fn new() -> Self {
        Self {
            checked: 0,
            max_deviation: 0.0,
            tolerance: ORACLE_TOL,
        }
    }

    pub fn record(&mut self, value: f64, oracle: f64) -> f64 {
        let d = (value - oracle).abs();
        self.checked += 1;
        self.max_deviation = self.max_deviation.max(d);
        d
    }

    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OutputDigest {
    pub file: String,
    pub bytes: usize,
    pub sha256: String,
}

/// One per run, written next to the data files.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub tool_version: String,
    pub seed: Option<u64>,
    pub config: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSummary>,
    pub outputs: Vec<OutputDigest>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Data produced by a command before anything touches the disk.
pub struct CommandOutput {
    pub config: serde_json::Value,
    pub files: Vec<(String, Vec<u8>)>,
    pub oracle: Option<OracleSummary>,
}

pub fn write_run(out: &Path, subcommand: &str, seed: Option<u64>, output: CommandOutput) -> std::io::Result<RunManifest> {
    fs::create_dir_all(out)?;
    let mut outputs = Vec::with_capacity(output.files.len());
    for (name, bytes) in &output.files {
        fs::write(out.join(name), bytes)?;
        outputs.push(OutputDigest {
            file: name.clone(),
            bytes: bytes.len(),
            sha256: sha256_hex(bytes),
        });
    }
    let manifest = RunManifest {
        subcommand: subcommand.to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        seed,
        config: output.config,
        oracle: output.oracle,
        outputs,
    };
    let mut json = serde_json::to_vec_pretty(&manifest).expect("manifest serializes");
    json.push(b'\n');
    fs::write(out.join(format!("{subcommand}.manifest.json")), json)?;
    Ok(manifest)
}
