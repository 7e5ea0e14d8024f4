//! Run reports and their text rendering.

use std::fmt::Write;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::ToolError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Completed within a budget that cut part of the work.
    Partial,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Partial | Status::Error => 2,
        }
    }
}

/// Everything one command did, with its inputs embedded by value.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub status: Status,
    /// Milliseconds per stage, in execution order.
    pub timing: Map<String, Value>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            inputs: Value::Object(Map::new()),
            results: Value::Object(Map::new()),
            status: Status::Pass,
            timing: Map::new(),
        }
    }

    pub fn input(&mut self, name: &str, value: Value) {
        if let Value::Object(m) = &mut self.inputs {
            m.insert(name.to_string(), value);
        }
    }

    pub fn result(&mut self, name: &str, value: Value) {
        if let Value::Object(m) = &mut self.results {
            m.insert(name.to_string(), value);
        }
    }

    /// Runs `f` and records its wall time under `stage`.
    pub fn stage<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.timing.insert(stage.to_string(), json!(t.elapsed().as_millis() as u64));
        out
    }

    /// Replaces the results with an error object.
    pub fn fail_with(&mut self, err: &ToolError) {
        self.status = Status::Error;
        self.result("error", json!({"kind": err.kind(), "message": err.to_string()}));
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serialises")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn render_text(&self) -> String {
        render(&self.to_json())
    }
}

/// Renders any JSON report as indented text. Arrays of flat objects become
/// tables, numeric matrices are summarised by shape.
pub fn render(v: &Value) -> String {
    let mut out = String::new();
    render_value(&mut out, v, 0);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| x.is_number() || x.is_string()) => {
            if a.len() > 32 {
                Some(format!("[{} items]", a.len()))
            } else {
                let parts: Vec<String> = a.iter().map(|x| scalar(x).unwrap()).collect();
                Some(format!("[{}]", parts.join(", ")))
            }
        }
        Value::Array(a) if !a.is_empty() && a.iter().all(|r| r.as_array().is_some_and(|r| r.iter().all(Value::is_number))) => {
            Some(format!("[{}x{} matrix]", a.len(), a[0].as_array().unwrap().len()))
        }
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        Value::Object(m) if m.is_empty() => Some("{}".into()),
        Value::Object(m) if m.len() > 32 && m.values().all(Value::is_number) => Some(format!("{{{} entries}}", m.len())),
        _ => None,
    }
}

fn is_flat_object(v: &Value) -> bool {
    v.as_object().is_some_and(|m| m.values().all(|x| scalar(x).is_some()))
}

fn render_value(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => writeln!(out, "{pad}{k}: {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}{k}:").unwrap();
                        render_value(out, x, indent + 1);
                    }
                }
            }
        }
        Value::Array(a) if !a.is_empty() && a.iter().all(is_flat_object) => render_table(out, a, &pad),
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => writeln!(out, "{pad}- {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}-").unwrap();
                        render_value(out, x, indent + 1);
                    }
                }
            }
        }
        other => writeln!(out, "{pad}{}", scalar(other).unwrap_or_default()).unwrap(),
    }
}

fn render_table(out: &mut String, rows: &[Value], pad: &str) {
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        for k in r.as_object().unwrap().keys() {
            if !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let m = r.as_object().unwrap();
            cols.iter().map(|c| m.get(c).and_then(scalar).unwrap_or_else(|| "-".into())).collect()
        })
        .collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].chars().count()).max().unwrap_or(0).max(c.len()))
        .collect();
    let line = |vals: &[String]| -> String {
        let parts: Vec<String> = vals.iter().zip(&widths).map(|(v, w)| format!("{v:<w$}")).collect();
        format!("{pad}{}", parts.join("  ").trim_end())
    };
    writeln!(out, "{}", line(&cols)).unwrap();
    for r in &cells {
        writeln!(out, "{}", line(r)).unwrap();
    }
}
