//! Tabular reports rendered as CSV or markdown.

use std::fmt::Write as _;

/// Decimals for MPSS scores.
pub const MPSS_DECIMALS: usize = 4;
/// Decimals for efficiency scores.
pub const EFFICIENCY_DECIMALS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Csv,
    Markdown,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Number { value: f64, decimals: usize },
    Missing,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn num(value: f64, decimals: usize) -> Self {
        Cell::Number { value, decimals }
    }

    fn render(&self, raw: bool) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Number { value, .. } if raw => value.to_string(),
            Cell::Number { value, decimals } => {
                let s = format!("{value:.decimals$}");
                // no "-0.0000"
                if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
                    s[1..].to_string()
                } else {
                    s
                }
            }
            Cell::Missing => "NA".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportTable {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Print numbers at full precision instead of their rounding.
    pub raw: bool,
}

impl ReportTable {
    pub fn new(title: impl Into<String>, headers: impl IntoIterator<Item = impl Into<String>>) -> Self {
        Self {
            title: title.into(),
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
            raw: false,
        }
    }

    /// Panics on a row of the wrong width.
    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.headers.len(), "report row width");
        self.rows.push(row);
    }
}

pub fn render(table: &ReportTable, format: Format) -> String {
    let cells: Vec<Vec<String>> = table
        .rows
        .iter()
        .map(|r| r.iter().map(|c| c.render(table.raw)).collect())
        .collect();
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&table.headers).expect("in-memory write");
            for row in &cells {
                w.write_record(row).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8 cells")
        }
        Format::Markdown => {
            let escape = |s: &str| s.replace('|', "\\|");
            let mut out = String::new();
            if !table.title.is_empty() {
                let _ = writeln!(out, "{}\n", table.title);
            }
            let line = |cols: Vec<String>| format!("| {} |\n", cols.join(" | "));
            out.push_str(&line(table.headers.iter().map(|h| escape(h)).collect()));
            out.push_str(&line(table.headers.iter().map(|_| "---".to_string()).collect()));
            for row in &cells {
                out.push_str(&line(row.iter().map(|c| escape(c)).collect()));
            }
            out
        }
    }
}
