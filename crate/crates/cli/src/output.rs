use std::io::{self, Write};

use anyhow::{Context, Result};
use grafting_lab::CertifiedInterval;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Format, Io};

pub const SCHEMA: &str = "grafting-lab/1";

/// Fixed 17-significant-digit rendering used for every float we print.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone)]
pub enum Cell {
    Num(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => num(*x),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => json!(x),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

pub fn lo_hi(x: CertifiedInterval) -> [Cell; 2] {
    [Cell::Num(x.lo()), Cell::Num(x.hi())]
}

/// Rows under a fixed header, rendered as CSV or as a JSON document whose
/// `rows` are objects keyed by the header.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.iter().map(Cell::csv).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json_rows(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let obj = self.header.iter().zip(r).map(|(h, c)| (h.to_string(), c.json())).collect();
                Value::Object(obj)
            })
            .collect();
        Value::Array(rows)
    }
}

struct FixedDigits;

impl serde_json::ser::Formatter for FixedDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(num(value).as_bytes())
    }
}

pub fn json_text<T: Serialize>(doc: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedDigits);
    doc.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf)?)
}

/// A table as CSV, or wrapped with `extra` fields into a versioned JSON report.
pub fn render(table: &Table, format: Format, command: &str, extra: Value) -> Result<String> {
    match format {
        Format::Csv => Ok(table.to_csv()),
        Format::Json => {
            let mut doc = json!({ "schema": SCHEMA, "command": command });
            if let (Value::Object(d), Value::Object(e)) = (&mut doc, extra) {
                d.extend(e);
            }
            doc["rows"] = table.to_json_rows();
            json_text(&doc)
        }
    }
}

pub fn emit(io: &Io, text: &str) -> Result<()> {
    match &io.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}
