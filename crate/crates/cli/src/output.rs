//! Manifests and result files.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use timelag_core::TeCurve;

use crate::error::CliError;

#[derive(Debug, Serialize)]
pub struct InputRecord {
    pub path: PathBuf,
    pub bytes: u64,
    pub sha256: String,
}

impl InputRecord {
    pub fn hash(path: &Path) -> Result<Self, CliError> {
        let data = fs::read(path).map_err(|e| CliError::io(path, e))?;
        Ok(Self {
            path: path.to_owned(),
            bytes: data.len() as u64,
            sha256: hex::encode(Sha256::digest(&data)),
        })
    }
}

/// Provenance written next to every result.
#[derive(Debug, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub args: Vec<String>,
    pub config: Value,
    pub inputs: Vec<InputRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<u128>,
}

pub struct Run {
    pub command: &'static str,
    pub timing: bool,
    started: Instant,
}

impl Run {
    pub fn start(command: &'static str, timing: bool) -> Self {
        Self {
            command,
            timing,
            started: Instant::now(),
        }
    }

    pub fn manifest(&self, config: Value, inputs: Vec<InputRecord>) -> Manifest {
        Manifest {
            tool: "timelag",
            version: env!("CARGO_PKG_VERSION"),
            command: self.command,
            args: std::env::args().skip(1).collect(),
            config,
            inputs,
            duration_ms: self.timing.then(|| self.started.elapsed().as_millis()),
        }
    }
}

pub fn to_bits(nats: f64) -> f64 {
    nats / std::f64::consts::LN_2
}

pub fn curve_json(curve: &TeCurve<f64>) -> Value {
    json!({
        "direction": curve.direction,
        "entries": curve.entries.iter().map(|&(lag, te)| json!({ "lag": lag, "te_nats": te })).collect::<Vec<_>>(),
        "identified_lag": curve.identified_lag,
        "max_te_nats": curve.max_te,
    })
}

pub fn write_json(path: &Path, value: &impl Serialize) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("json value serializes");
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Writes rows of already formatted fields.
pub fn write_csv<I, R>(path: &Path, header: &[&str], rows: I) -> Result<(), CliError>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let file = fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut w = csv::Writer::from_writer(file);
    w.write_record(header).map_err(|e| CliError::csv(path, e))?;
    for row in rows {
        w.write_record(row).map_err(|e| CliError::csv(path, e))?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

pub fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

/// Lowercase ASCII with runs of anything else collapsed to `_`.
pub fn slug(name: &str) -> String {
    let mut out = String::new();
    for ch in name.chars() {
        if ch.is_ascii_alphanumeric() {
            out.push(ch.to_ascii_lowercase());
        } else if !out.is_empty() && !out.ends_with('_') {
            out.push('_');
        }
    }
    while out.ends_with('_') {
        out.pop();
    }
    out
}

/// `base` with `ext` appended (not replacing an existing extension).
pub fn with_suffix(base: &Path, ext: &str) -> PathBuf {
    let mut s = base.as_os_str().to_owned();
    s.push(ext);
    PathBuf::from(s)
}
