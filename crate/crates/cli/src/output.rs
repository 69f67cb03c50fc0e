//! Records rendered as a text line, CSV or JSON with identical field names.

use std::fs;
use std::io::Write;

use num_complex::Complex64;
use serde_json::{Map, Value};

use crate::format::{complex, csv_field, g, json_complex, json_num};
use crate::{CliError, Format, RunConfig};

#[derive(Debug, Clone)]
pub enum Field {
    Num(f64),
    Int(usize),
    Complex(Complex64),
    Text(String),
    Missing,
}

impl Field {
    fn text(&self) -> String {
        match self {
            Field::Num(x) => g(*x),
            Field::Int(i) => i.to_string(),
            Field::Complex(z) => complex(*z),
            Field::Text(s) => s.clone(),
            Field::Missing => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Field::Num(x) => json_num(*x),
            Field::Int(i) => Value::from(*i),
            Field::Complex(z) => json_complex(*z),
            Field::Text(s) => Value::String(s.clone()),
            Field::Missing => Value::Null,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Record(pub Vec<(&'static str, Field)>);

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num(mut self, key: &'static str, x: f64) -> Self {
        self.0.push((key, Field::Num(x)));
        self
    }

    pub fn int(mut self, key: &'static str, i: usize) -> Self {
        self.0.push((key, Field::Int(i)));
        self
    }

    pub fn complex(mut self, key: &'static str, z: Complex64) -> Self {
        self.0.push((key, Field::Complex(z)));
        self
    }

    pub fn text(mut self, key: &'static str, s: impl Into<String>) -> Self {
        self.0.push((key, Field::Text(s.into())));
        self
    }

    pub fn field(mut self, key: &'static str, f: Field) -> Self {
        self.0.push((key, f));
        self
    }

    pub fn line(&self) -> String {
        self.0
            .iter()
            .map(|(k, v)| match v {
                Field::Missing => format!("{k} = -"),
                _ => format!("{k} = {}", v.text()),
            })
            .collect::<Vec<_>>()
            .join("  ")
    }

    fn json(&self) -> Value {
        let mut map = Map::new();
        for (k, v) in &self.0 {
            map.insert((*k).to_string(), v.json());
        }
        Value::Object(map)
    }
}

/// One record (`rho`, `theta0`, ...) or a table (`curve`, `spectrum`).
pub enum Output {
    Single(Record),
    Table(Vec<Record>),
}

impl Output {
    fn records(&self) -> &[Record] {
        match self {
            Output::Single(r) => std::slice::from_ref(r),
            Output::Table(rows) => rows,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let rows = self.records();
                let mut s = String::new();
                if let Some(first) = rows.first() {
                    s.push_str(&first.0.iter().map(|(k, _)| *k).collect::<Vec<_>>().join(","));
                    s.push('\n');
                }
                for r in rows {
                    s.push_str(&r.0.iter().map(|(_, v)| csv_field(&v.text())).collect::<Vec<_>>().join(","));
                    s.push('\n');
                }
                s
            }
            Format::Json => {
                let value = match self {
                    Output::Single(r) => r.json(),
                    Output::Table(rows) => Value::Array(rows.iter().map(Record::json).collect()),
                };
                let mut s = serde_json::to_string_pretty(&value).expect("JSON values serialize");
                s.push('\n');
                s
            }
        }
    }

    fn text(&self) -> String {
        self.records().iter().map(|r| r.line() + "\n").collect()
    }
}

/// Writes the formatted output to `--out` (or stdout). The human-readable
/// form goes to stdout unless stdout already carries the formatted output.
/// `default` is the format used when none was requested but `--out` was given.
pub fn emit(cfg: &RunConfig, out: &Output, default: Option<Format>) -> Result<(), CliError> {
    let format = cfg.format.or(if cfg.out.is_some() { default.or(Some(Format::Json)) } else { default });
    let mut stdout = std::io::stdout().lock();
    match (&cfg.out, format) {
        (Some(path), Some(f)) => {
            fs::write(path, out.render(f))
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
            match out {
                Output::Single(_) => stdout.write_all(out.text().as_bytes())?,
                Output::Table(rows) => writeln!(stdout, "wrote {} rows to {}", rows.len(), path.display())?,
            }
        }
        (None, Some(f)) => stdout.write_all(out.render(f).as_bytes())?,
        (_, None) => stdout.write_all(out.text().as_bytes())?,
    }
    Ok(())
}
