//! Result tables, serialization, and run manifests.
//!
//! Every command produces a [`RunOutput`]: named scalars plus an optional
//! table. JSON output carries complex numbers as `{re, im}` objects; CSV
//! renders them as `a+bi` text. A manifest with the full configuration and
//! wall time is written next to the output file so any run can be
//! reproduced from its artifacts alone.

use crate::parse::format_complex;
use num_complex::Complex64;
use serde_json::{json, Map, Value as Json};
use std::path::Path;

pub const SCHEMA: &str = "wormkit.v1";

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Real(f64),
    Int(i64),
    Text(String),
    Complex(Complex64),
}

impl Value {
    fn to_json(&self) -> Json {
        match self {
            Value::Real(x) => json!(x),
            Value::Int(n) => json!(n),
            Value::Text(s) => json!(s),
            Value::Complex(z) => json!({"re": z.re, "im": z.im}),
        }
    }

    fn to_csv_field(&self) -> String {
        match self {
            Value::Real(x) => format!("{x}"),
            Value::Int(n) => format!("{n}"),
            Value::Text(s) => s.clone(),
            Value::Complex(z) => format_complex(*z),
        }
    }
}

#[derive(Debug, Default)]
pub struct RunOutput {
    pub scalars: Vec<(String, Value)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl RunOutput {
    pub fn scalar(&mut self, name: &str, value: Value) {
        self.scalars.push((name.to_string(), value));
    }

    pub fn table(&mut self, columns: &[&str]) {
        self.columns = columns.iter().map(|s| s.to_string()).collect();
    }

    pub fn row(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_json(&self, command: &str) -> Json {
        let mut scalars = Map::new();
        for (k, v) in &self.scalars {
            scalars.insert(k.clone(), v.to_json());
        }
        json!({
            "schema": SCHEMA,
            "command": command,
            "scalars": Json::Object(scalars),
            "columns": self.columns,
            "rows": self.rows.iter().map(|r| {
                r.iter().map(|v| v.to_json()).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }

    /// CSV rendering: the table when there is one, otherwise the scalars as
    /// `key,value` records.
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut writer = csv::WriterBuilder::new()
            .quote_style(csv::QuoteStyle::Necessary)
            .from_writer(Vec::new());
        if self.columns.is_empty() {
            writer.write_record(["key", "value"])?;
            for (k, v) in &self.scalars {
                writer.write_record([k.as_str(), v.to_csv_field().as_str()])?;
            }
        } else {
            writer.write_record(&self.columns)?;
            for row in &self.rows {
                let fields: Vec<String> = row.iter().map(|v| v.to_csv_field()).collect();
                writer.write_record(&fields)?;
            }
        }
        let bytes = writer.into_inner().expect("csv writer buffer");
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Short human summary for stdout.
    pub fn summary(&self) -> String {
        let mut parts: Vec<String> = self
            .scalars
            .iter()
            .map(|(k, v)| format!("{k}={}", v.to_csv_field()))
            .collect();
        if !self.rows.is_empty() {
            parts.push(format!("rows={}", self.rows.len()));
        }
        parts.join(" ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Write the result file and its `<output>.manifest.json` companion.
pub fn write_artifacts(
    command: &str,
    output: &RunOutput,
    format: Format,
    path: &Path,
    argv: &[String],
    config: Json,
    wall_ms: f64,
) -> anyhow::Result<()> {
    let rendered = match format {
        Format::Json => serde_json::to_string_pretty(&output.to_json(command))? + "\n",
        Format::Csv => output.to_csv()?,
    };
    std::fs::write(path, rendered)?;

    let mut scalars = Map::new();
    for (k, v) in &output.scalars {
        scalars.insert(k.clone(), v.to_json());
    }
    let manifest = json!({
        "schema": SCHEMA,
        "command": command,
        "argv": argv,
        "configuration": config,
        "results": Json::Object(scalars),
        "output_file": path.file_name().map(|s| s.to_string_lossy().into_owned()),
        "format": match format { Format::Json => "json", Format::Csv => "csv" },
        "library_version": env!("CARGO_PKG_VERSION"),
        "wall_time_ms": wall_ms,
    });
    let manifest_path = path.with_extension(match path.extension() {
        Some(ext) => format!("{}.manifest.json", ext.to_string_lossy()),
        None => "manifest.json".to_string(),
    });
    std::fs::write(&manifest_path, serde_json::to_string_pretty(&manifest)? + "\n")?;
    Ok(())
}
