//! Output rendering shared by all subcommands.
//!
//! A report is a list of summary fields plus one table. In text mode both go
//! to stdout: `key: value` lines, then the table with a `#` header line and
//! `-` for empty cells. In
//! CSV mode stdout carries only the table (header row first, fixed column
//! count) and the summary goes to stderr as `# key: value` lines.

use std::io::{self, Write};

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
}

#[derive(Debug, Default)]
pub struct Report {
    pub summary: Vec<(&'static str, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(columns: &[&'static str]) -> Self {
        Report {
            columns: columns.to_vec(),
            ..Report::default()
        }
    }

    pub fn field(&mut self, key: &'static str, value: impl ToString) {
        self.summary.push((key, value.to_string()));
    }

    pub fn row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Text => {
                for (k, v) in &self.summary {
                    writeln!(out, "{k}: {v}")?;
                }
                writeln!(out, "# {}", self.columns.join(" "))?;
                for row in &self.rows {
                    let cells: Vec<&str> = row
                        .iter()
                        .map(|c| if c.is_empty() { "-" } else { c.as_str() })
                        .collect();
                    writeln!(out, "{}", cells.join(" "))?;
                }
            }
            Format::Csv => {
                for (k, v) in &self.summary {
                    writeln!(err, "# {k}: {v}")?;
                }
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }
}
