use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::{ExperimentConfig, Format};
use crate::experiments::{Artifact, Cell};

pub const ARTIFACT: &str = "surface-cnot";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Header written ahead of every data section.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub artifact: String,
    pub version: String,
    pub config: ExperimentConfig,
}

impl Metadata {
    pub fn new(config: &ExperimentConfig) -> Self {
        Metadata {
            artifact: ARTIFACT.into(),
            version: VERSION.into(),
            config: config.clone(),
        }
    }
}

/// Twelve significant digits, locale independent.
pub fn format_number(x: f64) -> String {
    format!("{x:.11e}")
}

fn csv_field(c: &Cell) -> String {
    match c {
        Cell::Num(x) => format_number(*x),
        Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Cell::Text(s) => s.clone(),
    }
}

/// The CSV text: `# <metadata json>`, a header row, then the data rows.
pub fn render_csv(meta: &Metadata, art: &Artifact) -> String {
    let mut out = String::new();
    let header = serde_json::to_string(meta).expect("metadata serializes");
    writeln!(out, "# {header}").unwrap();
    writeln!(out, "{}", art.columns.join(",")).unwrap();
    for row in &art.rows {
        let fields: Vec<String> = row.iter().map(csv_field).collect();
        writeln!(out, "{}", fields.join(",")).unwrap();
    }
    out
}

/// The JSON document `{"meta": ..., "data": ...}`.
pub fn render_json(meta: &Metadata, art: &Artifact) -> String {
    let doc = serde_json::json!({ "meta": meta, "data": art });
    let mut s = serde_json::to_string_pretty(&doc).expect("artifact serializes");
    s.push('\n');
    s
}

pub fn output_path(cfg: &ExperimentConfig) -> PathBuf {
    cfg.output
        .dir
        .join(format!("{}.{}", cfg.experiment, cfg.output.format.extension()))
}

pub fn write(cfg: &ExperimentConfig, art: &Artifact) -> std::io::Result<PathBuf> {
    let meta = Metadata::new(cfg);
    let text = match cfg.output.format {
        Format::Csv => render_csv(&meta, art),
        Format::Json => render_json(&meta, art),
    };
    std::fs::create_dir_all(&cfg.output.dir)?;
    let path = output_path(cfg);
    std::fs::write(&path, text)?;
    Ok(path)
}

/// Reads the metadata header back from an emitted file.
pub fn read_metadata(path: &Path) -> Result<Metadata, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    if let Some(first) = text.lines().next().and_then(|l| l.strip_prefix("# ")) {
        return serde_json::from_str(first).map_err(|e| e.to_string());
    }
    let doc: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    serde_json::from_value(doc["meta"].clone()).map_err(|e| e.to_string())
}

/// Everything after the metadata: the data rows of a CSV or the `data`
/// member of a JSON document.
pub fn data_section(path: &Path) -> Result<String, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    if text.starts_with("# ") {
        return Ok(text.lines().skip(1).collect::<Vec<_>>().join("\n"));
    }
    let doc: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    Ok(doc["data"].to_string())
}
