//! Tabular reports rendered as CSV or versioned JSON.

use serde_json::{json, Map, Value};

use crate::config::OutputFormat;

pub const SCHEMA: &str = "growth-forge/v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Column {
    pub csv: &'static str,
    pub json: &'static str,
}

impl Column {
    pub const fn new(csv: &'static str, json: &'static str) -> Self {
        Column { csv, json }
    }

    pub const fn same(name: &'static str) -> Self {
        Column { csv: name, json: name }
    }
}

/// Factor tables: `length,count` in CSV, `[{l, p}]` in JSON.
pub const FACTOR_COLUMNS: [Column; 2] = [Column::new("length", "l"), Column::new("count", "p")];

/// Growth tables: `n,dim`.
pub const GROWTH_COLUMNS: [Column; 2] = [Column::same("n"), Column::same("dim")];

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub kind: &'static str,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Value>>,
    pub summary: Vec<(String, Value)>,
}

fn csv_cell(v: &Value) -> String {
    let text = match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text
    }
}

impl Report {
    pub fn new(kind: &'static str, columns: &[Column]) -> Self {
        Report {
            kind,
            columns: columns.to_vec(),
            rows: Vec::new(),
            summary: Vec::new(),
        }
    }

    /// A report with no table, only summary entries.
    pub fn summary_only(kind: &'static str) -> Self {
        Report::new(kind, &[])
    }

    pub fn row(&mut self, values: Vec<Value>) {
        assert_eq!(values.len(), self.columns.len(), "row width");
        self.rows.push(values);
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.summary.push((key.into(), value.into()));
    }

    pub fn has_table(&self) -> bool {
        !self.columns.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<&str> = self.columns.iter().map(|c| c.csv).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(csv_cell).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// `key: value` lines; an entry named `value` prints bare.
    pub fn summary_text(&self) -> String {
        self.summary
            .iter()
            .map(|(k, v)| match k.as_str() {
                "value" => format!("{}\n", plain_text(v)),
                _ => format!("{k}: {}\n", plain_text(v)),
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(r)
                    .map(|(c, v)| (c.json.to_string(), v.clone()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let summary: Map<String, Value> = self.summary.iter().cloned().collect();
        let mut out = json!({ "schema": SCHEMA, "kind": self.kind });
        if self.has_table() {
            out["rows"] = Value::Array(rows);
        }
        out["summary"] = Value::Object(summary);
        out
    }

    /// Full text for stdout: the table (if any) followed by the summary, or one JSON document.
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("json");
                s.push('\n');
                s
            }
            OutputFormat::Csv if self.has_table() => self.to_csv() + &self.summary_text(),
            OutputFormat::Csv => self.summary_text(),
        }
    }

    /// The table alone, for `--out` files; JSON carries the summary too.
    pub fn render_table(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.render(format),
        }
    }
}

fn plain_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_table_formats() {
        let mut r = Report::new("complexity", &FACTOR_COLUMNS);
        r.row(vec![json!(1), json!(2)]);
        r.row(vec![json!(2), json!(3)]);
        r.note("spec", "geo:2");
        assert_eq!(r.to_csv(), "length,count\n1,2\n2,3\n");
        let j = r.to_json();
        assert_eq!(j["schema"], SCHEMA);
        assert_eq!(j["rows"], json!([{"l": 1, "p": 2}, {"l": 2, "p": 3}]));
        assert_eq!(r.render(OutputFormat::Csv), "length,count\n1,2\n2,3\nspec: geo:2\n");
    }

    #[test]
    fn quotes_cells_with_commas() {
        let mut r = Report::new("t", &[Column::same("a")]);
        r.row(vec![json!("x, y")]);
        assert_eq!(r.to_csv(), "a\n\"x, y\"\n");
    }
}
