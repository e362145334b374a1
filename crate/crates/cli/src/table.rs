//! Flat key/value summaries with an optional list of rows, rendered in any
//! [`Format`]. Used by the subcommands that stop short of a full report.

use std::fmt::Write as _;

use crate::report::Format;

#[derive(Debug, Clone)]
enum Value {
    Num {
        v: f64,
        unit: &'static str,
        digits: usize,
    },
    Int(i64),
    Text(String),
}

#[derive(Debug, Clone)]
pub struct Field {
    /// Machine name, used as CSV column and structured key.
    key: &'static str,
    /// Human label.
    label: &'static str,
    value: Value,
}

impl Field {
    pub fn num(
        key: &'static str,
        label: &'static str,
        v: f64,
        unit: &'static str,
        digits: usize,
    ) -> Field {
        Field {
            key,
            label,
            value: Value::Num { v, unit, digits },
        }
    }

    pub fn int(key: &'static str, label: &'static str, v: i64) -> Field {
        Field {
            key,
            label,
            value: Value::Int(v),
        }
    }

    pub fn text(key: &'static str, label: &'static str, v: impl Into<String>) -> Field {
        Field {
            key,
            label,
            value: Value::Text(v.into()),
        }
    }

    fn display(&self) -> String {
        match &self.value {
            Value::Num {
                v,
                unit: "",
                digits,
            } => format!("{v:.digits$}"),
            Value::Num { v, unit, digits } => format!("{v:.digits$} {unit}"),
            Value::Int(i) => i.to_string(),
            Value::Text(t) => t.clone(),
        }
    }

    fn toml(&self) -> toml::Value {
        match &self.value {
            Value::Num { v, .. } => toml::Value::Float(*v),
            Value::Int(i) => toml::Value::Integer(*i),
            Value::Text(t) => toml::Value::String(t.clone()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    summary: Vec<Field>,
    rows: Option<(&'static str, Vec<Vec<Field>>)>,
}

impl Table {
    pub fn new(summary: Vec<Field>) -> Table {
        Table {
            summary,
            rows: None,
        }
    }

    /// Attaches per-item rows; in CSV they replace the summary line.
    pub fn with_rows(mut self, name: &'static str, rows: Vec<Vec<Field>>) -> Table {
        self.rows = Some((name, rows));
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Human => self.human(),
            Format::Csv => match &self.rows {
                Some((_, rows)) => csv(rows_header(rows), rows),
                None => csv(
                    self.summary.iter().map(|f| f.key).collect(),
                    std::slice::from_ref(&self.summary),
                ),
            },
            Format::Structured => self.structured(),
        }
    }

    fn human(&self) -> String {
        let mut out = String::new();
        for f in &self.summary {
            let _ = writeln!(out, "  {:<26}{}", f.label, f.display());
        }
        if let Some((_, rows)) = &self.rows {
            if let Some(first) = rows.first() {
                let widths: Vec<usize> = first
                    .iter()
                    .enumerate()
                    .map(|(i, f)| {
                        rows.iter()
                            .map(|r| r[i].display().len())
                            .chain([f.label.len()])
                            .max()
                            .unwrap_or(0)
                    })
                    .collect();
                let header: Vec<String> = first
                    .iter()
                    .zip(&widths)
                    .map(|(f, w)| format!("{:>w$}", f.label))
                    .collect();
                let _ = writeln!(out, "    {}", header.join("  "));
                for row in rows {
                    let cells: Vec<String> = row
                        .iter()
                        .zip(&widths)
                        .map(|(f, w)| format!("{:>w$}", f.display()))
                        .collect();
                    let _ = writeln!(out, "    {}", cells.join("  "));
                }
            }
        }
        out
    }

    fn structured(&self) -> String {
        let mut table = toml::Table::new();
        for f in &self.summary {
            table.insert(f.key.to_string(), f.toml());
        }
        if let Some((name, rows)) = &self.rows {
            let items = rows
                .iter()
                .map(|r| {
                    toml::Value::Table(r.iter().map(|f| (f.key.to_string(), f.toml())).collect())
                })
                .collect();
            table.insert(name.to_string(), toml::Value::Array(items));
        }
        toml::to_string(&table).expect("plain table always serializes")
    }
}

fn rows_header(rows: &[Vec<Field>]) -> Vec<&'static str> {
    rows.first()
        .map(|r| r.iter().map(|f| f.key).collect())
        .unwrap_or_default()
}

fn csv(header: Vec<&'static str>, rows: &[Vec<Field>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    if !header.is_empty() {
        w.write_record(&header).expect("write to memory");
    }
    for row in rows {
        w.write_record(row.iter().map(|f| match &f.value {
            Value::Num { v, digits, .. } => format!("{v:.digits$}"),
            _ => f.display(),
        }))
        .expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is UTF-8")
}
