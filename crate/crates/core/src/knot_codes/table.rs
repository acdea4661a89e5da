//! Knot tables: JSON lines of `{"name", "gauss", "expected"?}`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{parse_gauss_code, GaussCode};
use crate::rational::{format_rational, parse_rational, Q};

/// The fixture table shipped with the crate: small knots given as braid
/// closures, with reference values of `v2` and `v3`.
pub const BUNDLED_KNOT_TABLE: &str = include_str!("../../fixtures/knots.jsonl");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotRecord {
    pub name: String,
    pub code: GaussCode,
    /// Reference values by invariant name.
    pub expected: BTreeMap<String, Q>,
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("cannot read knot table: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Serialize, Deserialize)]
struct RecordLine {
    name: String,
    gauss: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    expected: BTreeMap<String, String>,
}

impl KnotRecord {
    pub fn new(name: impl Into<String>, code: GaussCode) -> Self {
        KnotRecord { name: name.into(), code, expected: BTreeMap::new() }
    }

    /// One JSON line in table format.
    pub fn to_json_line(&self) -> String {
        let line = RecordLine {
            name: self.name.clone(),
            gauss: self.code.to_string(),
            expected: self.expected.iter().map(|(k, v)| (k.clone(), format_rational(v))).collect(),
        };
        serde_json::to_string(&line).expect("plain strings serialize")
    }
}

/// Parses one table line; `line` is only used for error messages.
pub fn parse_knot_table_line(text: &str, line: usize) -> Result<KnotRecord, TableError> {
    let err = |message: String| TableError::Parse { line, message };
    let raw: RecordLine = serde_json::from_str(text).map_err(|e| err(e.to_string()))?;
    if raw.name.trim().is_empty() {
        return Err(err("empty knot name".into()));
    }
    let code = parse_gauss_code(&raw.gauss).map_err(|e| err(e.to_string()))?;
    let expected = raw
        .expected
        .into_iter()
        .map(|(k, v)| parse_rational(&v).map(|q| (k, q)))
        .collect::<Result<_, _>>()
        .map_err(|e| err(e.to_string()))?;
    Ok(KnotRecord { name: raw.name, code, expected })
}

/// Parses a whole table. Blank lines are skipped; line numbers are 1-based.
pub fn parse_knot_table(text: &str) -> Result<Vec<KnotRecord>, TableError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_knot_table_line(l, i + 1))
        .collect()
}

pub fn load_knot_table(path: impl AsRef<Path>) -> Result<Vec<KnotRecord>, TableError> {
    let text = std::fs::read_to_string(path)?;
    parse_knot_table(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_lines() {
        let text = r#"{"name": "unknot", "gauss": ""}

{"name": "3_1", "gauss": "O1+ U2+ O3+ U1+ O2+ U3+", "expected": {"v2": "1", "v3": "1"}}
"#;
        let recs = parse_knot_table(text).unwrap();
        assert_eq!(recs.len(), 2);
        assert!(recs[0].code.is_empty());
        assert_eq!(recs[1].expected["v2"], Q::from_integer(1));
        assert_eq!(parse_knot_table_line(&recs[1].to_json_line(), 1).unwrap(), recs[1]);
    }

    #[test]
    fn empty_table() {
        assert!(parse_knot_table("").unwrap().is_empty());
    }

    #[test]
    fn reports_line_numbers() {
        let text = "{\"name\": \"a\", \"gauss\": \"\"}\n{\"name\": \"b\", \"gauss\": \"O1+ Z1+\"}\n";
        match parse_knot_table(text) {
            Err(TableError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        for bad in
            ["not json", r#"{"name": "", "gauss": ""}"#, r#"{"name": "x", "gauss": "", "expected": {"v2": "1/0"}}"#]
        {
            assert!(matches!(parse_knot_table(bad), Err(TableError::Parse { line: 1, .. })), "{bad}");
        }
    }

    #[test]
    fn missing_file_is_io_error() {
        assert!(matches!(load_knot_table("/nonexistent/knots.jsonl"), Err(TableError::Io(_))));
    }
}
