// Copyright 2026 The qcadfs Authors
// SPDX-License-Identifier: Apache-2.0

//! Tabular results and their CSV / JSON renderings.
//!
//! Floating-point cells are printed with 12 fractional digits so output is
//! byte-stable across runs and thread counts.

use serde_json::{json, Map, Value};

pub const DECIMALS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Num(f64),
    Text(String),
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Text(v.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Report {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match header");
        self.rows.push(row);
    }

    pub fn columns(&self) -> &[&'static str] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    /// UTF-8, LF line endings, header row first.
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(csv_cell).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// `{"schema": 1, "scenario": …, "rows": [{column: value, …}, …]}`.
    pub fn to_json(&self, scenario: &Value) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (col, cell) in self.columns.iter().zip(row) {
                    obj.insert((*col).to_owned(), json_cell(cell));
                }
                Value::Object(obj)
            })
            .collect();
        let doc = json!({ "schema": 1, "scenario": scenario, "rows": rows });
        let mut text = serde_json::to_string_pretty(&doc).expect("report values are finite");
        text.push('\n');
        text
    }
}

pub fn format_number(x: f64) -> String {
    let s = format!("{x:.DECIMALS$}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_owned(),
        _ => s,
    }
}

fn round_number(x: f64) -> f64 {
    let scale = 10f64.powi(DECIMALS as i32);
    let r = (x * scale).round() / scale;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn csv_cell(cell: &Cell) -> String {
    match cell {
        Cell::Int(v) => v.to_string(),
        Cell::Num(x) => format_number(*x),
        Cell::Text(t) if t.contains([',', '"', '\n', '\r']) => format!("\"{}\"", t.replace('"', "\"\"")),
        Cell::Text(t) => t.clone(),
    }
}

fn json_cell(cell: &Cell) -> Value {
    match cell {
        Cell::Int(v) => json!(v),
        Cell::Num(x) => json!(round_number(*x)),
        Cell::Text(t) => json!(t),
    }
}
