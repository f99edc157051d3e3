use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// What a subcommand produced.
pub struct Output {
    /// Printed one per line in JSON mode.
    pub json: Vec<Value>,
    /// Flat records for CSV mode; `None` reuses `json`.
    pub csv: Option<Vec<Value>>,
    pub pass: bool,
}

impl Output {
    pub fn single(v: Value, pass: bool) -> Self {
        Output { json: vec![v], csv: None, pass }
    }

    pub fn lines(json: Vec<Value>, pass: bool) -> Self {
        Output { json, csv: None, pass }
    }

    pub fn render(&self, format: Format) -> std::io::Result<String> {
        match format {
            Format::Json => {
                let mut s = String::new();
                for v in &self.json {
                    s.push_str(&v.to_string());
                    s.push('\n');
                }
                Ok(s)
            }
            Format::Csv => to_csv(self.csv.as_ref().unwrap_or(&self.json)),
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Header from the first record's keys; nested values are written as JSON.
fn to_csv(records: &[Value]) -> std::io::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if let Some(Value::Object(first)) = records.first() {
        let keys: Vec<&String> = first.keys().collect();
        w.write_record(keys.iter().map(|k| k.as_str()))?;
        for r in records {
            let row: Vec<String> = keys.iter().map(|k| r.get(k.as_str()).map(cell).unwrap_or_default()).collect();
            w.write_record(&row)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn emit(text: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}
