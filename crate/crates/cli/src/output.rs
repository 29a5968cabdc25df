//! Rendering of single-point results and sweep tables.

use serde_json::{json, Map, Value};
use std::fmt::Write as _;

use optlink_core::sweep::{Cell, SweepTable, NA_TOKEN};

use crate::{ConfigDocument, Format};

pub enum Field {
    Num(f64),
    Bool(bool),
    Text(String),
}

impl Field {
    fn csv(&self) -> String {
        match self {
            Field::Num(v) => format_number(*v),
            Field::Bool(b) => b.to_string(),
            Field::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Field::Num(v) => json!(v),
            Field::Bool(b) => json!(b),
            Field::Text(s) => json!(s),
        }
    }
}

/// Shortest round-trip form, with an exponent for very small or large magnitudes.
fn format_number(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-4..1e15).contains(&a) {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

/// Ordered named values; CSV renders a header row and one value row.
#[derive(Default)]
pub struct Record(Vec<(&'static str, Field)>);

impl Record {
    pub fn push(&mut self, name: &'static str, value: Field) -> &mut Self {
        self.0.push((name, value));
        self
    }

    pub fn num(&mut self, name: &'static str, value: f64) -> &mut Self {
        self.push(name, Field::Num(value))
    }

    pub fn text(&mut self, name: &'static str, value: String) -> &mut Self {
        self.push(name, Field::Text(value))
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let names: Vec<_> = self.0.iter().map(|(n, _)| *n).collect();
                let values: Vec<_> = self.0.iter().map(|(_, v)| v.csv()).collect();
                format!("{}\n{}\n", names.join(","), values.join(","))
            }
            Format::Json => {
                let map: Map<String, Value> = self
                    .0
                    .iter()
                    .map(|(n, v)| (n.to_string(), v.json()))
                    .collect();
                let mut s = serde_json::to_string_pretty(&map).expect("record serializes");
                s.push('\n');
                s
            }
        }
    }
}

/// Sweep table as JSON; failed cells keep the `NA` marker.
pub fn table_json(table: &SweepTable) -> String {
    let metadata: Map<String, Value> = table
        .metadata
        .iter()
        .map(|(k, v)| (k.clone(), json!(v)))
        .collect();
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|r| {
            std::iter::once(json!(r.x))
                .chain(r.cells.iter().map(|c| match c {
                    Cell::Value(v) => json!(v),
                    Cell::Na(_) => json!(NA_TOKEN),
                }))
                .collect()
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&json!({
        "metadata": metadata,
        "headers": table.headers,
        "rows": rows,
    }))
    .expect("table serializes");
    s.push('\n');
    s
}

/// `key,value` lines with dotted keys; null values print as empty.
pub fn flatten_document(doc: &ConfigDocument) -> String {
    let value = serde_json::to_value(doc).expect("document serializes");
    let mut out = String::from("key,value\n");
    if let Value::Object(sections) = value {
        for (section, fields) in sections {
            if let Value::Object(fields) = fields {
                for (k, v) in fields {
                    let v = match v {
                        Value::Null => String::new(),
                        Value::String(s) => s,
                        other => other.to_string(),
                    };
                    let _ = writeln!(out, "{section}.{k},{v}");
                }
            }
        }
    }
    out
}
