//! CSV and JSON artifacts.
//!
//! Numbers are written with Rust's shortest round-trip formatting, so an
//! identical run reproduces every file byte for byte.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use selfsim_heat::grid::{SolutionField, TimeSeries};

use crate::error::CliResult;

fn num(v: f64) -> String {
    format!("{v:?}")
}

fn writer(path: &Path) -> CliResult<csv::Writer<fs::File>> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    Ok(csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)?)
}

/// Long-format field CSV with header `t,x,u`.
pub fn write_field(path: &Path, field: &SolutionField) -> CliResult<()> {
    let mut w = writer(path)?;
    w.write_record(["t", "x", "u"])?;
    let nodes = field.grid().nodes();
    for (t, row) in field.times().iter().zip(field.rows()) {
        for (x, u) in nodes.iter().zip(row) {
            w.write_record([num(*t), num(*x), num(*u)])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Probe CSV with header `t,u`.
pub fn write_series(path: &Path, ts: &TimeSeries) -> CliResult<()> {
    let mut w = writer(path)?;
    w.write_record(["t", "u"])?;
    for (t, u) in ts.iter() {
        w.write_record([num(t), num(u)])?;
    }
    w.flush()?;
    Ok(())
}

/// Any CSV with a header row of column names.
pub fn write_table(path: &Path, header: &[&str], rows: &[Vec<f64>]) -> CliResult<()> {
    let mut w = writer(path)?;
    w.write_record(header)?;
    for r in rows {
        w.write_record(r.iter().map(|v| num(*v)))?;
    }
    w.flush()?;
    Ok(())
}

/// Pretty JSON with every object's keys sorted.
pub fn to_sorted_json(value: &impl Serialize) -> CliResult<String> {
    // `serde_json::Map` is a BTreeMap unless `preserve_order` is enabled
    let v: Value = serde_json::to_value(value)?;
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

pub fn write_json(path: &Path, value: &impl Serialize) -> CliResult<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, to_sorted_json(value)?)?;
    Ok(())
}

/// Output location shared by the files of one run.
#[derive(Debug, Clone)]
pub struct Artifacts {
    dir: PathBuf,
    stem: String,
    written: Vec<PathBuf>,
}

impl Artifacts {
    pub fn new(dir: impl Into<PathBuf>, stem: impl Into<String>) -> Self {
        Self {
            dir: dir.into(),
            stem: stem.into(),
            written: Vec::new(),
        }
    }

    /// `<dir>/<stem>_<suffix>`, recorded for the report.
    pub fn path(&mut self, suffix: &str) -> PathBuf {
        let p = self.dir.join(format!("{}_{suffix}", self.stem));
        self.written.push(p.clone());
        p
    }

    pub fn written(&self) -> Vec<String> {
        self.written
            .iter()
            .map(|p| p.display().to_string())
            .collect()
    }
}
