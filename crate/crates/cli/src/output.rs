use std::fs::File;
use std::io::{self, BufWriter, Write};

use anyhow::Context;
use serde_json::{json, Map, Value};

use crate::config::{Format, RunConfig};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone)]
pub enum Cell {
    Num(f64),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            // 17 significant digits, locale independent.
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => json!(x),
            Cell::Bool(b) => json!(b),
            Cell::Text(s) => json!(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

/// Result of one command: a table, a summary and the overall verdict.
#[derive(Debug, Clone)]
pub struct Report {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Replaces the flat rows in JSON output, for nested records.
    pub json_rows: Option<Vec<Value>>,
    pub summary: Map<String, Value>,
    pub passed: bool,
}

impl Report {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Report {
            columns,
            rows: Vec::new(),
            json_rows: None,
            summary: Map::new(),
            passed: true,
        }
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn note(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.to_string(), value.into());
    }
}

fn meta(cfg: &RunConfig, report: &Report) -> Value {
    json!({
        "tool": "mirrorpress",
        "version": VERSION,
        "command": cfg.command.name(),
        "config": cfg,
        "summary": report.summary,
        "status": if report.passed { "pass" } else { "fail" },
    })
}

pub fn render(cfg: &RunConfig, report: &Report) -> anyhow::Result<String> {
    let meta = meta(cfg, report);
    match cfg.format {
        Format::Json => {
            let rows = match &report.json_rows {
                Some(rows) => rows.clone(),
                None => report
                    .rows
                    .iter()
                    .map(|r| {
                        let obj: Map<String, Value> =
                            report.columns.iter().zip(r).map(|(c, v)| (c.to_string(), v.json())).collect();
                        Value::Object(obj)
                    })
                    .collect(),
            };
            let mut text = serde_json::to_string_pretty(&json!({ "meta": meta, "rows": rows }))?;
            text.push('\n');
            Ok(text)
        }
        Format::Csv => {
            let mut text = format!("# mirrorpress {VERSION}\n");
            flatten("", &meta, &mut text);
            text.push_str(&report.columns.join(","));
            text.push('\n');
            for r in &report.rows {
                let line: Vec<String> = r.iter().map(Cell::csv).collect();
                text.push_str(&line.join(","));
                text.push('\n');
            }
            Ok(text)
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        other => out.push_str(&format!("# {prefix} = {other}\n")),
    }
}

pub fn write(cfg: &RunConfig, report: &Report) -> anyhow::Result<()> {
    let text = render(cfg, report)?;
    match &cfg.out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(file);
            w.write_all(text.as_bytes())?;
            w.flush()?;
        }
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
