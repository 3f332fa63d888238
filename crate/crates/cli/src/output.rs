//! Machine-readable command output.
//!
//! A payload is a JSON object. Tabular results live under `rows` as an array
//! of flat objects; CSV output is that table, or a single row built from the
//! payload's own fields when it has no table.

use std::fmt::Display;
use std::io::{self, Write};

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub command: String,
    pub parameters: Map<String, Value>,
    pub payload: Map<String, Value>,
}

/// Exact values (big integers, rationals) always travel as decimal strings.
pub fn exact(v: impl Display) -> Value {
    Value::String(v.to_string())
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) if n.is_f64() => format_float(n.as_f64().expect("f64 number")),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        nested => nested.to_string(),
    }
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            parameters: Map::new(),
            payload: Map::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn field(&mut self, key: &str, value: impl Into<Value>) {
        self.payload.insert(key.to_string(), value.into());
    }

    pub fn rows(&mut self, rows: Vec<Value>) {
        self.payload.insert("rows".to_string(), Value::Array(rows));
    }

    pub fn to_json(&self) -> Value {
        let mut top = Map::new();
        top.insert("command".into(), Value::String(self.command.clone()));
        top.insert("parameters".into(), Value::Object(self.parameters.clone()));
        top.insert("payload".into(), Value::Object(self.payload.clone()));
        Value::Object(top)
    }

    pub fn write_json(&self, out: &mut dyn Write) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
        writeln!(out)
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        let single;
        let rows: &[Value] = match self.payload.get("rows") {
            Some(Value::Array(rows)) => rows,
            _ => {
                single = [Value::Object(self.payload.clone())];
                &single
            }
        };
        let mut writer = csv::Writer::from_writer(out);
        let header: Vec<String> = match rows.first() {
            Some(Value::Object(first)) => first.keys().cloned().collect(),
            _ => Vec::new(),
        };
        if header.is_empty() {
            return writer.flush();
        }
        writer.write_record(&header)?;
        for row in rows {
            let cells = header.iter().map(|key| row.get(key).map(csv_cell).unwrap_or_default());
            writer.write_record(cells)?;
        }
        writer.flush()
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Json => self.write_json(out),
            Format::Csv => self.write_csv(out),
        }
    }
}
