//! Rendering of flat documents and tables as json, csv or aligned text.
//!
//! Rationals are always emitted as `"p/q"` strings; field order is fixed by
//! the caller, so identical inputs give identical bytes.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{Map, Value as Json};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Pretty,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Pretty => "txt",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Text(String),
    Bool(bool),
    None,
}

impl Cell {
    fn plain(&self) -> String {
        match self {
            Cell::Text(t) => t.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::None => "none".into(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Cell::Text(t) => Json::String(t.clone()),
            Cell::Bool(b) => Json::Bool(*b),
            Cell::None => Json::Null,
        }
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl<T: ToString> From<Option<T>> for Cell {
    fn from(x: Option<T>) -> Self {
        x.map_or(Cell::None, |v| Cell::Text(v.to_string()))
    }
}

pub fn text(x: impl ToString) -> Cell {
    Cell::Text(x.to_string())
}

/// Ordered key-value document.
#[derive(Clone, Debug, Default)]
pub struct Doc {
    fields: Vec<(String, Cell)>,
}

impl Doc {
    pub fn new() -> Self {
        Doc::default()
    }

    pub fn field(mut self, key: &str, value: impl Into<Cell>) -> Self {
        self.fields.push((key.into(), value.into()));
        self
    }

    pub fn push(&mut self, key: &str, value: impl Into<Cell>) {
        self.fields.push((key.into(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Cell> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    fn json(&self) -> Json {
        let mut m = Map::new();
        for (k, v) in &self.fields {
            m.insert(k.clone(), v.json());
        }
        Json::Object(m)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(&self.json()),
            Format::Csv => {
                let header: Vec<&str> = self.fields.iter().map(|(k, _)| k.as_str()).collect();
                let row: Vec<String> = self.fields.iter().map(|(_, v)| csv_escape(&v.plain())).collect();
                format!("{}\n{}\n", header.join(","), row.join(","))
            }
            Format::Pretty => {
                let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                let mut out = String::new();
                for (k, v) in &self.fields {
                    let _ = writeln!(out, "{k:<width$} = {}", v.plain());
                }
                out
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Table {
    headers: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(headers: &[&'static str]) -> Self {
        Table { headers: headers.to_vec(), rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.headers.len());
        self.rows.push(cells);
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let rows = self
                    .rows
                    .iter()
                    .map(|r| {
                        let mut m = Map::new();
                        for (h, c) in self.headers.iter().zip(r) {
                            m.insert((*h).into(), c.json());
                        }
                        Json::Object(m)
                    })
                    .collect();
                to_json(&Json::Array(rows))
            }
            Format::Csv => {
                let mut out = self.headers.join(",");
                out.push('\n');
                for r in &self.rows {
                    let cells: Vec<String> = r.iter().map(|c| csv_escape(&c.plain())).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
                out
            }
            Format::Pretty => {
                let plain: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::plain).collect()).collect();
                let widths: Vec<usize> = (0..self.headers.len())
                    .map(|i| plain.iter().map(|r| r[i].len()).chain([self.headers[i].len()]).max().unwrap_or(0))
                    .collect();
                let line = |cells: Vec<&str>| {
                    let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
                    padded.join("  ") + "\n"
                };
                let mut out = line(self.headers.clone());
                for r in &plain {
                    out.push_str(&line(r.iter().map(String::as_str).collect()));
                }
                out
            }
        }
    }
}

fn to_json(v: &Json) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("string-keyed json always serializes");
    s.push('\n');
    s
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
