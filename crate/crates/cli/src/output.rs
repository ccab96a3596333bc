//! JSON-lines and human-readable renderings of command records.

use std::fmt::Write as _;

use serde_json::Value;

pub fn jsonl(records: &[Value]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}

pub fn pretty(records: &[Value]) -> String {
    let mut out = String::new();
    for (i, r) in records.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        render(&mut out, r);
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => format_number(x),
            _ => n.to_string(),
        },
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            items.iter().map(scalar).collect::<Vec<_>>().join(", ")
        }
        other => other.to_string(),
    }
}

fn format_number(x: f64) -> String {
    if x != 0.0 && (x.abs() < 1e-4 || x.abs() >= 1e6) {
        format!("{x:.6e}")
    } else {
        format!("{x:.8}")
    }
}

fn flatten(
    prefix: &str,
    v: &Value,
    rows: &mut Vec<(String, String)>,
    tables: &mut Vec<(String, Vec<Value>)>,
) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, child, rows, tables);
            }
        }
        Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => {
            tables.push((prefix.to_string(), items.clone()));
        }
        other => rows.push((prefix.to_string(), scalar(other))),
    }
}

fn render(out: &mut String, record: &Value) {
    let mut rows = Vec::new();
    let mut tables = Vec::new();
    flatten("", record, &mut rows, &mut tables);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in &rows {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    for (name, items) in tables {
        let _ = writeln!(out, "\n{name}:");
        let mut columns: Vec<String> = Vec::new();
        let mut cells: Vec<Vec<(String, String)>> = Vec::new();
        for item in &items {
            let mut r = Vec::new();
            flatten("", item, &mut r, &mut Vec::new());
            for (k, _) in &r {
                if !columns.contains(k) {
                    columns.push(k.clone());
                }
            }
            cells.push(r);
        }
        let lookup = |row: &Vec<(String, String)>, c: &str| {
            row.iter()
                .find(|(k, _)| k == c)
                .map(|(_, v)| v.clone())
                .unwrap_or_default()
        };
        let widths: Vec<usize> = columns
            .iter()
            .map(|c| {
                cells
                    .iter()
                    .map(|r| lookup(r, c).len())
                    .max()
                    .unwrap_or(0)
                    .max(c.len())
            })
            .collect();
        let line = |vals: Vec<String>| {
            vals.iter()
                .zip(&widths)
                .map(|(v, w)| format!("{v:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        let _ = writeln!(out, "{}", line(columns.clone()));
        for r in &cells {
            let _ = writeln!(
                out,
                "{}",
                line(columns.iter().map(|c| lookup(r, c)).collect())
            );
        }
    }
}
