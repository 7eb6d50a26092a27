use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;

use circgraph::SEED_SCHEME;

/// Sidecar written next to every output file.
#[derive(Debug, Serialize)]
pub struct Metadata<'a, A: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed_scheme: &'static str,
    pub command: &'static str,
    pub argv: Vec<String>,
    pub seeds: BTreeMap<&'static str, u64>,
    pub args: &'a A,
}

impl<'a, A: Serialize> Metadata<'a, A> {
    pub fn new(command: &'static str, args: &'a A, seeds: &[(&'static str, u64)]) -> Self {
        Metadata {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            seed_scheme: SEED_SCHEME,
            command,
            argv: std::env::args().collect(),
            seeds: seeds.iter().copied().collect(),
            args,
        }
    }
}

pub fn meta_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

/// Write `<output>.meta.json`.
pub fn write_metadata<A: Serialize>(output: &Path, meta: &Metadata<'_, A>) -> Result<()> {
    let path = meta_path(output);
    let json = serde_json::to_string_pretty(meta)?;
    fs::write(&path, json + "\n").with_context(|| format!("writing {}", path.display()))
}

/// Write to `path`, or to stdout when absent.
pub fn emit(path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, contents).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(contents.as_bytes())?;
            Ok(())
        }
    }
}

/// `prefix` with `suffix` appended to the file name.
pub fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}
