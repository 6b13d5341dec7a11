//! Output records and their CSV/JSON rendering.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use crate::error::CliResult;

pub const TOOL: &str = "hypam";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
/// Bumped whenever a CSV column list changes.
pub const CSV_SCHEMA: u32 = 1;

/// Floats with 17 significant digits; non-finite values spelled out.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

/// A rectangular result ready for CSV, plus trailing `#` notes.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub command: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub notes: Vec<String>,
}

impl Table {
    pub fn new(command: &str, columns: &[&'static str]) -> Self {
        Table {
            command: command.into(),
            columns: columns.to_vec(),
            ..Default::default()
        }
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> CliResult<()> {
        writeln!(out, "# {TOOL} {VERSION} {} schema={CSV_SCHEMA}", self.command)?;
        let mut w = csv::Writer::from_writer(&mut *out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        drop(w);
        for note in &self.notes {
            writeln!(out, "# {note}")?;
        }
        Ok(())
    }
}

/// One check at one parameter point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointResult {
    pub index: usize,
    pub check: String,
    pub a: String,
    pub b: String,
    pub c: String,
    pub p: Option<String>,
    /// `concordant`, `discordant`, `undetected_at_cap`, `out_of_scope`, `ok`,
    /// `holds`, `fails`, `regime_violation`, `skipped` or `error`.
    pub outcome: String,
    pub prediction: Option<String>,
    pub status: Option<String>,
    pub first_violation: Option<usize>,
    pub checked_order: Option<usize>,
    pub undecided: Option<usize>,
    pub detail: String,
}

impl PointResult {
    pub const COLUMNS: [&'static str; 13] = [
        "index",
        "check",
        "a",
        "b",
        "c",
        "p",
        "outcome",
        "prediction",
        "status",
        "first_violation",
        "checked_order",
        "undecided",
        "detail",
    ];

    fn row(&self) -> Vec<String> {
        let opt = |o: &Option<usize>| o.map(|v| v.to_string()).unwrap_or_default();
        vec![
            self.index.to_string(),
            self.check.clone(),
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.p.clone().unwrap_or_default(),
            self.outcome.clone(),
            self.prediction.clone().unwrap_or_default(),
            self.status.clone().unwrap_or_default(),
            opt(&self.first_violation),
            opt(&self.checked_order),
            opt(&self.undecided),
            self.detail.clone(),
        ]
    }
}

/// Result of a verify or sweep run.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    /// The inputs as given, normalized to `key = value`.
    pub input: Vec<String>,
    pub points: Vec<PointResult>,
    pub summary: BTreeMap<String, usize>,
}

impl RunReport {
    pub fn new(command: &str, input: Vec<String>, points: Vec<PointResult>) -> Self {
        let mut summary = BTreeMap::new();
        summary.insert("total".to_string(), points.len());
        for p in &points {
            *summary.entry(p.outcome.clone()).or_insert(0) += 1;
        }
        RunReport {
            tool: TOOL,
            version: VERSION,
            command: command.into(),
            input,
            points,
            summary,
        }
    }

    pub fn count(&self, outcome: &str) -> usize {
        self.summary.get(outcome).copied().unwrap_or(0)
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new(&self.command, &PointResult::COLUMNS);
        t.rows = self.points.iter().map(PointResult::row).collect();
        t.notes = self.summary.iter().map(|(k, v)| format!("summary {k}={v}")).collect();
        t
    }
}
