use std::fmt::Display;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::Format;
use crate::CliError;

/// Rows for CSV output.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|c| quote(c)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn quote(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

pub fn cell(v: impl Display) -> String {
    v.to_string()
}

pub fn opt_cell<T: Display>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Result of one subcommand.
pub struct Output {
    pub json: String,
    pub table: Table,
    /// Extra files written next to the main output.
    pub attachments: Vec<(PathBuf, String)>,
    /// Whether every exact assertion held.
    pub passed: bool,
}

impl Output {
    pub fn new<T: Serialize>(kind: &str, data: &T, table: Table) -> Result<Self, CliError> {
        Ok(Output { json: palinprefix::lab::to_json(kind, data)?, table, attachments: Vec::new(), passed: true })
    }

    pub fn failed_if(mut self, failed: bool) -> Self {
        self.passed &= !failed;
        self
    }

    pub fn emit(&self, format: Format, out: Option<&Path>) -> Result<(), CliError> {
        let body = match format {
            Format::Json => self.json.clone(),
            Format::Csv => self.table.to_csv(),
        };
        match out {
            Some(p) => write_file(p, &body)?,
            None => print!("{body}"),
        }
        for (p, text) in &self.attachments {
            write_file(p, text)?;
        }
        Ok(())
    }
}

fn write_file(p: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(p, text).map_err(|e| CliError::config(format!("cannot write {}: {e}", p.display())))
}

/// `<out>.<suffix>` next to the main output file.
pub fn sibling(out: &Path, suffix: &str) -> PathBuf {
    let mut name = out.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(format!(".{suffix}"));
    out.with_file_name(name)
}
