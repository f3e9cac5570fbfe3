//! Judgment tables as CSV: a header row (`model` followed by target names)
//! and one row per model of `0`/`1` cells.
//!
//! Names may not contain quotes or commas, so no quoting is ever needed.

use thiserror::Error;

use crate::table::{JudgmentTable, TableError};

/// First header cell written by [`write_csv`]; ignored on input.
pub const HEADER_LABEL: &str = "model";

/// Parse failures. Lines and fields are 1-based positions in the file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CsvError {
    #[error("input is empty")]
    Empty,
    #[error("line {line} is not valid UTF-8")]
    NotUtf8 { line: usize },
    #[error("header on line {line} names no targets")]
    NoTargets { line: usize },
    #[error("no model rows after the header")]
    NoModels,
    #[error("line {line} has {found} fields, expected {expected}")]
    RaggedRow {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}, field {field} (target {target:?}): value {value:?} is not 0 or 1")]
    MalformedValue {
        line: usize,
        field: usize,
        target: String,
        value: String,
    },
    #[error("invalid table: {0}")]
    Table(#[from] TableError),
}

/// Parses CSV bytes into a validated table. Accepts LF or CRLF line endings,
/// a leading byte-order mark, and blank lines (skipped). Cells are trimmed
/// of surrounding whitespace.
pub fn parse_csv(bytes: &[u8]) -> Result<JudgmentTable, CsvError> {
    let bytes = bytes.strip_prefix(b"\xEF\xBB\xBF").unwrap_or(bytes);
    let mut lines = Vec::new();
    for (i, raw) in bytes.split(|&b| b == b'\n').enumerate() {
        let line = i + 1;
        let raw = raw.strip_suffix(b"\r").unwrap_or(raw);
        let text = std::str::from_utf8(raw).map_err(|_| CsvError::NotUtf8 { line })?;
        if !text.trim().is_empty() {
            lines.push((line, text));
        }
    }

    let mut rows = lines.into_iter();
    let (header_line, header) = rows.next().ok_or(CsvError::Empty)?;
    let targets: Vec<&str> = header.split(',').skip(1).map(str::trim).collect();
    if targets.is_empty() {
        return Err(CsvError::NoTargets { line: header_line });
    }
    let expected = targets.len() + 1;

    let mut models = Vec::new();
    let mut bits = Vec::new();
    for (line, text) in rows {
        let fields: Vec<&str> = text.split(',').map(str::trim).collect();
        if fields.len() != expected {
            return Err(CsvError::RaggedRow {
                line,
                expected,
                found: fields.len(),
            });
        }
        let mut row = Vec::with_capacity(targets.len());
        for (k, value) in fields[1..].iter().enumerate() {
            row.push(match *value {
                "0" => 0,
                "1" => 1,
                other => {
                    return Err(CsvError::MalformedValue {
                        line,
                        field: k + 2,
                        target: targets[k].to_owned(),
                        value: other.to_owned(),
                    })
                }
            });
        }
        models.push(fields[0]);
        bits.push(row);
    }
    if models.is_empty() {
        return Err(CsvError::NoModels);
    }
    Ok(JudgmentTable::build(&targets, &models, &bits)?)
}

/// Writes a table in the format [`parse_csv`] reads, LF line endings.
pub fn write_csv(table: &JudgmentTable) -> String {
    let mut out = String::from(HEADER_LABEL);
    for t in table.targets() {
        out.push(',');
        out.push_str(&t.name);
    }
    out.push('\n');
    for m in table.models() {
        out.push_str(&m.name);
        for &cell in table.row(m.index).expect("model index in range") {
            out.push_str(if cell { ",1" } else { ",0" });
        }
        out.push('\n');
    }
    out
}
