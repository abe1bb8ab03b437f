//! Uniform report rendering: every subcommand produces one `Rendered`
//! value, emitted as an aligned table, CSV with a commented header, or a
//! key-sorted JSON envelope. Identical configs yield byte-identical output
//! in every format.

use std::collections::BTreeMap;
use std::io::Write;

use serde_json::{json, Value};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
    Structured,
}

impl Format {
    pub fn parse(text: &str) -> Option<Format> {
        match text {
            "table" => Some(Format::Table),
            "csv" => Some(Format::Csv),
            "structured" => Some(Format::Structured),
            _ => None,
        }
    }
}

/// A fully materialized report, ready for any output format.
pub struct Rendered {
    /// Echoed configuration, including defaults in force.
    pub config: BTreeMap<String, String>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Extra human-facing lines (assumptions, maxima, violations).
    pub notes: Vec<String>,
    /// Payload for the structured format.
    pub payload: Value,
    pub violations: u64,
    pub partial: bool,
}

impl Rendered {
    pub fn new(config: BTreeMap<String, String>) -> Self {
        Rendered {
            config,
            columns: Vec::new(),
            rows: Vec::new(),
            notes: Vec::new(),
            payload: Value::Null,
            violations: 0,
            partial: false,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.partial {
            3
        } else if self.violations > 0 {
            1
        } else {
            0
        }
    }

    pub fn emit(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Table => self.emit_table(out),
            Format::Csv => self.emit_csv(out),
            Format::Structured => self.emit_structured(out),
        }
    }

    fn emit_table(&self, out: &mut dyn Write) -> std::io::Result<()> {
        for (k, v) in &self.config {
            writeln!(out, "# {k}: {v}")?;
        }
        if !self.columns.is_empty() {
            let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
            for row in &self.rows {
                for (i, cell) in row.iter().enumerate() {
                    widths[i] = widths[i].max(cell.len());
                }
            }
            let header: Vec<String> = self
                .columns
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            writeln!(out, "{}", header.join("  ").trim_end())?;
            for row in &self.rows {
                let line: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                writeln!(out, "{}", line.join("  ").trim_end())?;
            }
        }
        for note in &self.notes {
            writeln!(out, "{note}")?;
        }
        if self.partial {
            writeln!(out, "PARTIAL RESULTS: budget exhausted")?;
        }
        writeln!(out, "violations: {}", self.violations)?;
        Ok(())
    }

    fn emit_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        for (k, v) in &self.config {
            writeln!(out, "# {k}: {v}")?;
        }
        if self.partial {
            writeln!(out, "# partial: true")?;
        }
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let quoted: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
            writeln!(out, "{}", quoted.join(","))?;
        }
        Ok(())
    }

    fn emit_structured(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let config: Value = self
            .config
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect::<serde_json::Map<String, Value>>()
            .into();
        let envelope = json!({
            "schema_version": SCHEMA_VERSION,
            "config": config,
            "report": self.payload,
            "summary": {
                "violations": self.violations,
                "partial": self.partial,
                "exit_code": self.exit_code(),
            },
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&envelope)?)
    }
}

fn csv_cell(cell: &str) -> String {
    if cell.contains(',') || cell.contains('"') || cell.contains('\n') {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}
