use super::spec::Format;
use serde_json::{json, Map, Value};
use std::io::Write;
use std::path::Path;

/// Column-oriented numeric results plus free-form metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub task: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub meta: Map<String, Value>,
}

/// 17 significant digits: enough to round-trip any f64.
fn fmt_number(v: f64) -> String {
    format!("{v:.16e}")
}

impl Table {
    pub fn new(task: &str, columns: &[&str]) -> Self {
        Self {
            task: task.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            meta: Map::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| fmt_number(v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Numbers use the shortest representation that round-trips exactly.
    pub fn to_json(&self) -> String {
        let mut obj = Map::new();
        obj.insert("task".into(), json!(self.task));
        obj.insert("columns".into(), json!(self.columns));
        obj.insert("rows".into(), json!(self.rows));
        for (k, v) in &self.meta {
            obj.insert(k.clone(), v.clone());
        }
        let mut s =
            serde_json::to_string_pretty(&Value::Object(obj)).expect("finite numbers serialize");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn write(&self, format: Format, path: Option<&Path>) -> std::io::Result<()> {
        let text = self.render(format);
        match path {
            Some(p) => std::fs::write(p, text),
            None => std::io::stdout().lock().write_all(text.as_bytes()),
        }
    }
}
