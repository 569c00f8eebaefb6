//! Row tables rendered as CSV or as `{config, rows}` JSON.

use std::fs::File;
use std::io::{self, BufWriter, Write};

use serde::Serialize;
use serde_json::{Map, Value};

use crate::args::{Format, OutputArgs};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    UInt(u64),
    /// Arbitrary-size integer, kept as its decimal string.
    Big(String),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::UInt(v) => v.to_string(),
            Cell::Big(s) | Cell::Text(s) => s.clone(),
            Cell::Float(x) => fmt_float(*x),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::UInt(v) => Value::from(*v),
            Cell::Big(s) | Cell::Text(s) => Value::String(s.clone()),
            // Non-finite values become null.
            Cell::Float(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Bool(b) => Value::Bool(*b),
        }
    }
}

/// 17 significant digits, fixed layout.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, out: &mut W) -> io::Result<()> {
        writeln!(out, "{}", self.header.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }

    pub fn to_json<C: Serialize>(&self, command: &str, config: &C) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .header
                    .iter()
                    .zip(row)
                    .map(|(h, c)| (h.to_string(), c.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut config = serde_json::to_value(config).unwrap_or(Value::Null);
        if let Value::Object(m) = &mut config {
            m.insert("command".into(), Value::String(command.into()));
        }
        let mut top = Map::new();
        top.insert("config".into(), config);
        top.insert("rows".into(), Value::Array(rows));
        Value::Object(top)
    }
}

/// Writes `table` to `--out` or to `stdout`.
pub fn emit<C: Serialize>(
    table: &Table,
    command: &str,
    config: &C,
    output: &OutputArgs,
    stdout: &mut dyn Write,
) -> io::Result<()> {
    match &output.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            render(table, command, config, output.format, &mut w)?;
            w.flush()
        }
        None => render(table, command, config, output.format, stdout),
    }
}

fn render<C: Serialize, W: Write + ?Sized>(
    table: &Table,
    command: &str,
    config: &C,
    format: Format,
    out: &mut W,
) -> io::Result<()> {
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            table.write_csv(&mut buf)?;
            out.write_all(&buf)
        }
        Format::Json => {
            let text = serde_json::to_string_pretty(&table.to_json(command, config)).map_err(io::Error::other)?;
            writeln!(out, "{text}")
        }
    }
}
