//! Report plumbing: fixed-column rows rendered as RFC-4180 CSV or a JSON
//! array of row objects.
//!
//! Every report embeds the run configuration, the library version string and
//! the numeric tolerances the subcommand gated on, so a report file is
//! self-describing.  CSV carries that preamble in `#`-prefixed comment lines
//! ahead of the header; JSON carries it in a leading `"row": "meta"` object.
//! Two runs with identical configs (including the seed) produce byte-identical
//! bytes: all floats go through the shortest-round-trip formatter and row
//! order is fixed by the sweep grid, never by worker completion order.

use serde_json::{json, Map, Value};
use std::io::Write;

pub struct Report {
    pub subcommand: &'static str,
    /// Rendered flag settings, in flag order.
    pub config: Vec<(String, String)>,
    /// Named tolerances the pass/fail columns used.
    pub tolerances: Vec<(&'static str, f64)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    /// Conjunction of every row-level pass column.
    pub pass: bool,
}

impl Report {
    pub fn new(subcommand: &'static str, columns: Vec<&'static str>) -> Self {
        Report {
            subcommand,
            config: Vec::new(),
            tolerances: Vec::new(),
            columns,
            rows: Vec::new(),
            pass: true,
        }
    }

    pub fn push_row(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match schema");
        if let Some(p) = self
            .columns
            .iter()
            .position(|c| *c == "pass")
            .and_then(|i| row[i].as_bool())
        {
            self.pass &= p;
        }
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# subcommand: {}\n", self.subcommand));
        out.push_str(&format!("# version: {}\n", lindblad_core::VERSION));
        for (k, v) in &self.config {
            out.push_str(&format!("# config: {k}={v}\n"));
        }
        for (k, v) in &self.tolerances {
            out.push_str(&format!("# tolerance: {k}={v}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(csv_cell).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let mut meta = Map::new();
        meta.insert("row".into(), json!("meta"));
        meta.insert("subcommand".into(), json!(self.subcommand));
        meta.insert("version".into(), json!(lindblad_core::VERSION));
        let mut cfg = Map::new();
        for (k, v) in &self.config {
            cfg.insert(k.clone(), json!(v));
        }
        meta.insert("config".into(), Value::Object(cfg));
        let mut tol = Map::new();
        for (k, v) in &self.tolerances {
            tol.insert((*k).into(), json!(v));
        }
        meta.insert("tolerances".into(), Value::Object(tol));
        meta.insert("pass".into(), json!(self.pass));

        let mut arr = vec![Value::Object(meta)];
        for row in &self.rows {
            let mut obj = Map::new();
            for (c, v) in self.columns.iter().zip(row) {
                obj.insert((*c).into(), v.clone());
            }
            arr.push(Value::Object(obj));
        }
        let mut s = serde_json::to_string_pretty(&Value::Array(arr)).expect("serialize");
        s.push('\n');
        s
    }

    pub fn write(&self, format: Format, out: Option<&std::path::Path>) -> std::io::Result<()> {
        let text = self.render(format);
        match out {
            Some(path) => std::fs::write(path, text),
            None => std::io::stdout().write_all(text.as_bytes()),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Csv,
    Json,
}

/// RFC-4180: quote a field iff it contains a comma, quote, CR or LF; double
/// embedded quotes.  Numbers and booleans never need quoting.
fn csv_cell(v: &Value) -> String {
    let raw = match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    };
    if raw.contains([',', '"', '\r', '\n']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw
    }
}

pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_cell(&json!("a,b")), "\"a,b\"");
        assert_eq!(csv_cell(&json!("say \"hi\"")), "\"say \"\"hi\"\"\"");
        assert_eq!(csv_cell(&json!(1.5)), "1.5");
        assert_eq!(csv_cell(&json!(true)), "true");
    }

    #[test]
    fn pass_column_aggregates() {
        let mut r = Report::new("x", vec!["v", "pass"]);
        r.push_row(vec![num(1.0), json!(true)]);
        assert!(r.pass);
        r.push_row(vec![num(2.0), json!(false)]);
        assert!(!r.pass);
    }

    #[test]
    fn deterministic_render() {
        let mut r = Report::new("x", vec!["v", "pass"]);
        r.config.push(("seed".into(), "7".into()));
        r.tolerances.push(("tol", 1e-9));
        r.push_row(vec![num(0.1 + 0.2), json!(true)]);
        assert_eq!(r.render(Format::Csv), r.render(Format::Csv));
        assert_eq!(r.render(Format::Json), r.render(Format::Json));
        assert!(r.render(Format::Csv).contains("0.30000000000000004"));
    }
}
