//! Output plumbing: text tables, JSON documents and CSV, all with
//! deterministic ordering. Rationals are rendered `p/q` in text and CSV and
//! as `{"num": .., "den": ..}` in JSON; never as decimals.

use std::io::Write;

use parhiggs::Rat;
use serde_json::{json, Value};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub fn rat_json(r: Rat) -> Value {
    json!({"num": *r.numer(), "den": *r.denom()})
}

pub fn rat_text(r: Rat) -> String {
    r.to_string()
}

/// Key/value report: one `key: value` line in text, one two-column row per
/// key in CSV, and the given JSON document as-is.
pub fn emit_kv(format: Format, pairs: &[(&str, String)], doc: &Value) -> Result<(), CliError> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Text => {
            for (k, v) in pairs {
                writeln!(out, "{k}: {v}")?;
            }
        }
        Format::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(doc)?)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["key", "value"])?;
            for (k, v) in pairs {
                w.write_record([*k, v.as_str()])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// Row table: aligned columns in text, header + rows in CSV, and the given
/// JSON document (normally an array of objects) as-is.
pub fn emit_table(
    format: Format,
    header: &[&str],
    rows: &[Vec<String>],
    doc: &Value,
) -> Result<(), CliError> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Text => {
            let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for row in rows {
                for (i, cell) in row.iter().enumerate() {
                    widths[i] = widths[i].max(cell.len());
                }
            }
            let line = |cells: Vec<&str>| -> String {
                cells
                    .iter()
                    .enumerate()
                    .map(|(i, c)| format!("{:<width$}", c, width = widths[i]))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            writeln!(out, "{}", line(header.to_vec()))?;
            for row in rows {
                writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
            }
        }
        Format::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(doc)?)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(header)?;
            for row in rows {
                w.write_record(row)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// "a,b,c" in text/CSV contexts.
pub fn list_text<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Bit vector as a compact 0/1 string.
pub fn bits_text(bits: &[u8]) -> String {
    bits.iter().map(|b| char::from(b'0' + b)).collect()
}
