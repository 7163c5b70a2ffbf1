use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use fraclab::{Error, Result};

#[derive(Serialize)]
pub struct RunManifest<'a, P: Serialize> {
    pub subcommand: &'a str,
    pub parameters: &'a P,
    pub outputs: Vec<String>,
    pub duration_seconds: f64,
    pub version: &'a str,
}

/// Writes `contents` to `dir/name`, creating `dir`.
pub fn write_output(dir: &Path, name: &str, contents: &[u8]) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, contents)?;
    Ok(path)
}

pub fn write_manifest<P: Serialize>(
    dir: &Path,
    subcommand: &str,
    parameters: &P,
    outputs: &[PathBuf],
    started: Instant,
) -> Result<PathBuf> {
    let m = RunManifest {
        subcommand,
        parameters,
        outputs: outputs.iter().map(|p| p.display().to_string()).collect(),
        duration_seconds: started.elapsed().as_secs_f64(),
        version: fraclab::VERSION,
    };
    let text = serde_json::to_string_pretty(&m).map_err(|e| Error::Io(e.to_string()))?;
    write_output(dir, "manifest.json", format!("{text}\n").as_bytes())
}
