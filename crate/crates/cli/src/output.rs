use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde_json::{Map, Value};

use crate::args::Format;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
}

impl Cell {
    fn csv(&self) -> String {
        match *self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.16e}"),
        }
    }

    fn json(&self) -> Value {
        match *self {
            Cell::Int(v) => Value::from(v),
            Cell::Float(v) => serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number),
        }
    }
}

/// Named columns plus run metadata.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub meta: Map<String, Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<String>) -> Self {
        Self { columns, ..Default::default() }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<Value>) {
        self.meta.insert(key.to_string(), value.into());
    }

    pub fn write_csv<W: Write>(&self, w: &mut W) -> io::Result<()> {
        for (key, value) in &self.meta {
            match value {
                Value::String(s) => writeln!(w, "# {key}: {s}")?,
                other => writeln!(w, "# {key}: {other}")?,
            }
        }
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect();
                Value::Object(obj)
            })
            .collect();
        let mut top = Map::new();
        top.insert("meta".into(), Value::Object(self.meta.clone()));
        top.insert("rows".into(), Value::Array(rows));
        Value::Object(top)
    }

    pub fn write<W: Write>(&self, format: Format, w: &mut W) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(w),
            Format::Json => {
                serde_json::to_writer(&mut *w, &self.to_json())?;
                writeln!(w)
            }
        }
    }
}

/// Buffered writer to a file or standard output.
pub fn open(out: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}
