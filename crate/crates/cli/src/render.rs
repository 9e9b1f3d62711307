//! Rendering of command results. JSON is the machine interface; the table
//! and CSV forms are derived from the same value, so all three agree.

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("serializable");
            s.push('\n');
            s
        }
        Format::Table => table(value),
        Format::Csv => csv(value),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            format!("[{}]", a.iter().map(scalar).collect::<Vec<_>>().join(", "))
        }
        other => other.to_string(),
    }
}

/// Flattens nested objects into dotted keys; arrays of objects are left for tabulation.
fn flatten(prefix: &str, obj: &Map<String, Value>, scalars: &mut Vec<(String, String)>, tables: &mut Vec<(String, Vec<Map<String, Value>>)>) {
    for (k, v) in obj {
        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        match v {
            Value::Object(inner) => flatten(&key, inner, scalars, tables),
            Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => {
                let rows = items.iter().map(|x| x.as_object().expect("object").clone()).collect();
                tables.push((key, rows));
            }
            _ => scalars.push((key, scalar(v))),
        }
    }
}

fn columns(rows: &[Map<String, Value>]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for row in rows {
        for k in row.keys() {
            if !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    cols
}

fn cell(row: &Map<String, Value>, col: &str) -> String {
    match row.get(col) {
        None => "-".into(),
        Some(Value::Object(o)) => serde_json::to_string(o).expect("serializable"),
        Some(v) => scalar(v),
    }
}

/// Cells longer than this switch a table to one block per row.
const WIDE: usize = 60;

fn table(value: &Value) -> String {
    let Some(obj) = value.as_object() else {
        return format!("{}\n", scalar(value));
    };
    let mut scalars = Vec::new();
    let mut tables = Vec::new();
    flatten("", obj, &mut scalars, &mut tables);
    let mut out = String::new();
    let width = scalars.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in &scalars {
        out.push_str(&format!("{k:<width$}  {v}\n"));
    }
    for (name, rows) in &tables {
        let cols = columns(rows);
        let cells: Vec<Vec<String>> = rows.iter().map(|r| cols.iter().map(|c| cell(r, c)).collect()).collect();
        if cells.iter().flatten().any(|c| c.len() > WIDE) {
            out.push_str(&format!("\n{name}:\n"));
            let kw = cols.iter().map(String::len).max().unwrap_or(0);
            for (i, r) in cells.iter().enumerate() {
                out.push_str(&format!("  [{i}]\n"));
                for (c, v) in cols.iter().zip(r) {
                    out.push_str(&format!("  {c:<kw$}  {v}\n"));
                }
            }
            continue;
        }
        let widths: Vec<usize> =
            cols.iter().enumerate().map(|(i, c)| cells.iter().map(|r| r[i].len()).max().unwrap_or(0).max(c.len())).collect();
        let line = |items: &[String]| {
            items.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
        };
        out.push_str(&format!("\n{name}:\n{}\n", line(&cols)));
        for r in &cells {
            out.push_str(&line(r));
            out.push('\n');
        }
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// The first array of objects as rows; otherwise `key,value` pairs.
fn csv(value: &Value) -> String {
    let Some(obj) = value.as_object() else {
        return format!("{}\n", csv_field(&scalar(value)));
    };
    let mut scalars = Vec::new();
    let mut tables = Vec::new();
    flatten("", obj, &mut scalars, &mut tables);
    let mut out = String::new();
    if let Some((_, rows)) = tables.first() {
        let cols = columns(rows);
        out.push_str(&cols.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","));
        out.push('\n');
        for r in rows {
            out.push_str(&cols.iter().map(|c| csv_field(&cell(r, c))).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
    } else {
        out.push_str("key,value\n");
        for (k, v) in &scalars {
            out.push_str(&format!("{},{}\n", csv_field(k), csv_field(v)));
        }
    }
    out
}
