//! Table rendering: CSV with a config-echo comment line, or a single JSON
//! object.  Both renderings are deterministic — identical tables and
//! configs produce identical bytes.

use std::io::Write;
use std::path::Path;

use crate::config::Format;
use crate::CliError;

/// Gains below this floor render as the floor in dB columns, keeping the
/// output finite.
pub const DB_FLOOR: f64 = 1e-30;

/// Power ratio in decibels with a `1e-30` floor (`-300 dB`).
pub fn db10(linear: f64) -> f64 {
    10.0 * linear.max(DB_FLOOR).log10()
}

/// One table cell.
#[derive(Debug, Clone, Copy)]
pub enum Cell {
    Int(i64),
    Uint(u64),
    Float(f64),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Uint(v) => v.to_string(),
            // Fixed scientific notation keeps columns aligned and output
            // byte-stable across runs.
            Cell::Float(v) => format!("{v:.12e}"),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Int(v) => serde_json::Value::from(*v),
            Cell::Uint(v) => serde_json::Value::from(*v),
            // NaN (e.g. the centre of mass of an empty bin set) becomes null.
            Cell::Float(v) => serde_json::Value::from(*v),
        }
    }
}

/// A rendered result table plus its metadata lines.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Extra `key=value` summaries (e.g. effective ranks); rendered as
    /// additional comment lines in CSV and as the `meta` object in JSON.
    pub meta: Vec<(String, String)>,
}

impl Table {
    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Renders `table` in the requested format.
pub fn render(
    format: Format,
    subcommand: &str,
    echo: &[(String, String)],
    table: &Table,
) -> String {
    match format {
        Format::Csv => render_csv(subcommand, echo, table),
        Format::Json => render_json(subcommand, echo, table),
    }
}

fn render_csv(subcommand: &str, echo: &[(String, String)], table: &Table) -> String {
    let mut out = String::new();
    out.push_str("# nearfield ");
    out.push_str(subcommand);
    for (key, value) in echo {
        out.push(' ');
        out.push_str(key);
        out.push('=');
        out.push_str(value);
    }
    out.push('\n');
    for (key, value) in &table.meta {
        out.push_str("# ");
        out.push_str(key);
        out.push('=');
        out.push_str(value);
        out.push('\n');
    }
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(Cell::csv).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn render_json(subcommand: &str, echo: &[(String, String)], table: &Table) -> String {
    let config: serde_json::Map<String, serde_json::Value> = echo
        .iter()
        .map(|(k, v)| (k.clone(), serde_json::Value::from(v.as_str())))
        .collect();
    let meta: serde_json::Map<String, serde_json::Value> = table
        .meta
        .iter()
        .map(|(k, v)| (k.clone(), serde_json::Value::from(v.as_str())))
        .collect();
    let rows: Vec<serde_json::Value> = table
        .rows
        .iter()
        .map(|row| serde_json::Value::from(row.iter().map(Cell::json).collect::<Vec<_>>()))
        .collect();
    let doc = serde_json::json!({
        "command": subcommand,
        "config": config,
        "columns": table.columns,
        "meta": meta,
        "rows": rows,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("static structure serialises");
    text.push('\n');
    text
}

/// Writes `content` to `path`, or to stdout when no path is given.
pub fn write_out(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(content.as_bytes())
                .and_then(|()| lock.flush())
                .map_err(|e| CliError::Usage(format!("cannot write to stdout: {e}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_table() -> Table {
        Table {
            columns: vec!["bin_index", "gain_linear", "gain_db"],
            rows: vec![
                vec![Cell::Int(-4), Cell::Float(1.0), Cell::Float(db10(1.0))],
                vec![Cell::Int(3), Cell::Float(0.0), Cell::Float(db10(0.0))],
            ],
            meta: vec![("count".into(), "2".into())],
        }
    }

    #[test]
    fn csv_has_echo_meta_header_rows() {
        let echo = vec![("n_antennas".to_string(), "8".to_string())];
        let text = render(Format::Csv, "gain", &echo, &sample_table());
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# nearfield gain n_antennas=8");
        assert_eq!(lines[1], "# count=2");
        assert_eq!(lines[2], "bin_index,gain_linear,gain_db");
        assert_eq!(lines[3], "-4,1.000000000000e0,0.000000000000e0");
        // The dB floor keeps zero-gain rows finite at -300 dB.
        assert_eq!(lines[4], "3,0.000000000000e0,-3.000000000000e2");
    }

    #[test]
    fn json_round_trips() {
        let echo = vec![("n_antennas".to_string(), "8".to_string())];
        let text = render(Format::Json, "gain", &echo, &sample_table());
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["command"], "gain");
        assert_eq!(doc["config"]["n_antennas"], "8");
        assert_eq!(doc["columns"][0], "bin_index");
        assert_eq!(doc["rows"][0][0], -4);
        assert_eq!(doc["meta"]["count"], "2");
    }

    #[test]
    fn db_floor() {
        assert_eq!(db10(0.0), -300.0);
        assert!((db10(0.5) + 3.0103).abs() < 1e-3);
    }
}
