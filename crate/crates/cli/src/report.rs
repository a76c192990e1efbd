use std::fmt::Write as _;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    /// Pretty-printed JSON object.
    Object,
    /// Tab-separated rows; metadata on `#` lines.
    Table,
}

/// Everything a command writes. Only `generated_unix` varies between identical runs.
#[derive(Debug, Clone, Serialize)]
pub struct ReportEnvelope {
    pub command: Value,
    pub input_digest: String,
    pub generated_unix: u64,
    pub results: Value,
    pub warnings: Vec<String>,
    /// Rows for the tabular export; not part of the object form.
    #[serde(skip)]
    pub table: Table,
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Trailing `# key: value` lines.
    pub notes: Vec<(String, String)>,
}

impl ReportEnvelope {
    pub fn new(command: Value, input_digest: String, results: Value, warnings: Vec<String>, table: Table) -> Self {
        let generated_unix = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        ReportEnvelope { command, input_digest, generated_unix, results, warnings, table }
    }

    pub fn render(&self, emit: Emit) -> String {
        match emit {
            Emit::Object => {
                let mut s = serde_json::to_string_pretty(self).expect("report is always serializable");
                s.push('\n');
                s
            }
            Emit::Table => self.render_table(),
        }
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# command: {}", self.command);
        let _ = writeln!(out, "# input_digest: {}", self.input_digest);
        let _ = writeln!(out, "# generated_unix: {}", self.generated_unix);
        out.push_str(&self.table.header.join("\t"));
        out.push('\n');
        for row in &self.table.rows {
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        for (k, v) in &self.table.notes {
            let _ = writeln!(out, "# {k}: {v}");
        }
        for w in &self.warnings {
            let _ = writeln!(out, "# warning: {w}");
        }
        out
    }
}

/// Shortest round-tripping decimal form, so table cells parse back to the same `f64`.
pub fn num(v: f64) -> String {
    format!("{v:?}")
}

/// Drops the timestamp so two reports can be compared byte for byte.
pub fn strip_timestamp(report: &str) -> String {
    report
        .lines()
        .filter(|l| !l.trim_start().starts_with("\"generated_unix\"") && !l.starts_with("# generated_unix:"))
        .collect::<Vec<_>>()
        .join("\n")
}
