//! Row tables rendered as aligned text, CSV or JSON lines.

use std::io::Write;

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

/// Cells are JSON values so that JSON output can nest; `Null` cells are
/// omitted from JSON rows and left blank elsewhere.
pub struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, out: &mut dyn Write, format: Format) -> Result<(), String> {
        let io = |e: std::io::Error| e.to_string();
        match format {
            Format::Json => {
                for row in &self.rows {
                    let obj: Map<String, Value> = self
                        .columns
                        .iter()
                        .zip(row)
                        .filter(|(_, v)| !v.is_null())
                        .map(|(c, v)| (c.to_string(), v.clone()))
                        .collect();
                    writeln!(out, "{}", Value::Object(obj)).map_err(io)?;
                }
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.columns).map_err(|e| e.to_string())?;
                for row in &self.rows {
                    w.write_record(row.iter().map(flat)).map_err(|e| e.to_string())?;
                }
                w.flush().map_err(io)?;
            }
            Format::Plain => {
                let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(flat).collect()).collect();
                let widths: Vec<usize> = (0..self.columns.len())
                    .map(|i| cells.iter().map(|r| r[i].len()).chain([self.columns[i].len()]).max().unwrap_or(0))
                    .collect();
                let line = |out: &mut dyn Write, items: Vec<&str>| {
                    let padded: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
                    writeln!(out, "{}", padded.join("  ").trim_end())
                };
                line(out, self.columns.clone()).map_err(io)?;
                for r in &cells {
                    line(out, r.iter().map(String::as_str).collect()).map_err(io)?;
                }
            }
        }
        Ok(())
    }
}

/// One-line text form of a cell.
fn flat(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Object(m) => m.iter().map(|(k, v)| format!("{k}={}", flat(v))).collect::<Vec<_>>().join(";"),
        Value::Array(a) => a.iter().map(flat).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn render(t: &Table, f: Format) -> String {
        let mut buf = Vec::new();
        t.write(&mut buf, f).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn formats() {
        let mut t = Table::new(vec!["name", "value", "extra"]);
        t.push(vec![json!("a,b"), json!("1/2"), Value::Null]);
        t.push(vec![json!("c"), json!({"v2": "1"}), json!(true)]);
        assert_eq!(
            render(&t, Format::Json),
            "{\"name\":\"a,b\",\"value\":\"1/2\"}\n{\"name\":\"c\",\"value\":{\"v2\":\"1\"},\"extra\":true}\n"
        );
        assert_eq!(render(&t, Format::Csv), "name,value,extra\n\"a,b\",1/2,\nc,v2=1,true\n");
        assert_eq!(render(&t, Format::Plain), "name  value  extra\na,b   1/2\nc     v2=1   true\n");
    }

    #[test]
    fn empty_table() {
        let t = Table::new(vec!["label"]);
        assert_eq!(render(&t, Format::Json), "");
        assert_eq!(render(&t, Format::Plain), "label\n");
    }
}
