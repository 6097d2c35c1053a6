use mgslope_core::Rational;
use serde::Serialize;
use serde_json::Value;

use crate::args::Format;

/// Rows for table and csv output. Columns listed in `exact` hold
/// rationals and get a decimal companion under `--decimal`.
#[derive(Debug, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub exact: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&'static str], exact: &[&'static str]) -> Table {
        Table {
            columns: columns.to_vec(),
            exact: exact.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn with_decimals(&self, places: Option<usize>) -> (Vec<String>, Vec<Vec<String>>) {
        let Some(k) = places else {
            let header = self.columns.iter().map(|c| c.to_string()).collect();
            return (header, self.rows.clone());
        };
        let mut header = Vec::new();
        for c in &self.columns {
            header.push(c.to_string());
            if self.exact.contains(c) {
                header.push(format!("{c}~"));
            }
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut out = Vec::new();
                for (c, cell) in self.columns.iter().zip(row) {
                    out.push(cell.clone());
                    if self.exact.contains(c) {
                        out.push(decimal(cell, k));
                    }
                }
                out
            })
            .collect();
        (header, rows)
    }
}

fn decimal(cell: &str, places: usize) -> String {
    match cell.parse::<Rational>() {
        Ok(q) => q.to_decimal(places),
        Err(_) => cell.to_string(),
    }
}

#[derive(Debug, Serialize)]
pub struct OutputRecord {
    pub command: &'static str,
    pub inputs: Value,
    pub results: Value,
    pub format: Format,
}

pub fn render(record: &OutputRecord, table: &Table, decimal: Option<usize>) -> String {
    match record.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(record).expect("records serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let (header, rows) = table.with_decimals(decimal);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&header).expect("in-memory write");
            for row in &rows {
                w.write_record(row).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
        }
        Format::Table => {
            let (header, rows) = table.with_decimals(decimal);
            let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for row in &rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            let line = |cells: &[String]| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            let mut out = line(&header);
            let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
            out += &line(&rule);
            for row in &rows {
                out += &line(row);
            }
            out
        }
    }
}
