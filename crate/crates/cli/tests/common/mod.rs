#![allow(dead_code)]

use std::path::{Path, PathBuf};

use gupnoise_cli::{parse_config, RunConfig};
use tempfile::TempDir;

/// Parses `text` with outputs redirected into `dir`.
pub fn config_in(dir: &Path, text: &str) -> RunConfig {
    let mut config = parse_config(text, Path::new("test.toml")).expect("valid config");
    config.output.dir = dir.to_path_buf();
    config
}

pub fn tempdir() -> TempDir {
    tempfile::tempdir().expect("temporary directory")
}

pub fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).expect("write config");
    path
}

pub fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut reader = csv::Reader::from_path(path).expect("csv");
    let header = reader.headers().expect("header").iter().map(str::to_owned).collect();
    let rows = reader
        .records()
        .map(|r| r.expect("record").iter().map(|v| v.parse::<f64>().expect("number")).collect())
        .collect();
    (header, rows)
}

pub fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).expect("read json")).expect("json")
}
