use hsp_core::Error;
use serde::Serialize;
use serde_json::{json, Value};
use std::fs;
use std::path::PathBuf;

pub const EXIT_ASSERTION: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// One command's result: JSON body, CSV tables and the checks it asserted.
pub struct Report {
    pub command: &'static str,
    pub result: Value,
    /// (file name, contents); the first table is the stdout form under `--format csv`.
    pub tables: Vec<(String, String)>,
    /// (check name, passed, detail).
    pub checks: Vec<(String, bool, Value)>,
}

impl Report {
    pub fn new(command: &'static str, result: impl Serialize) -> Report {
        Report { command, result: to_value(result), tables: Vec::new(), checks: Vec::new() }
    }

    pub fn table(mut self, name: impl Into<String>, csv: String) -> Report {
        self.tables.push((name.into(), csv));
        self
    }

    pub fn check(mut self, name: impl Into<String>, passed: bool, detail: impl Serialize) -> Report {
        self.checks.push((name.into(), passed, to_value(detail)));
        self
    }

    pub fn failed(&self) -> Vec<&(String, bool, Value)> {
        self.checks.iter().filter(|c| !c.1).collect()
    }
}

pub fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

/// Failures that end a run.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Runtime(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::Numerical(_) | Error::Singular => CliError::Runtime(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Config(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> CliError {
        CliError::Config(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> CliError {
        CliError::Runtime(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Runtime(_) => EXIT_ASSERTION,
        }
    }

    pub fn diagnostic(&self) -> Value {
        match self {
            CliError::Config(m) => json!({"status": "config-error", "message": m}),
            CliError::Runtime(m) => json!({"status": "runtime-error", "message": m}),
        }
    }
}

/// Where and how reports go.
pub struct Sink {
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl Sink {
    /// Writes `<command>.json` and every table into `--out`, or prints to stdout.
    /// Returns the exit code implied by the report's checks.
    pub fn emit(&self, envelope: Value, report: &Report) -> Result<u8, CliError> {
        let body = serde_json::to_string_pretty(&envelope)? + "\n";
        match &self.out {
            Some(dir) => {
                fs::create_dir_all(dir)?;
                fs::write(dir.join(format!("{}.json", report.command)), &body)?;
                for (name, csv) in &report.tables {
                    fs::write(dir.join(name), csv)?;
                }
            }
            None => match (self.format, report.tables.first()) {
                (Format::Csv, Some((_, csv))) => print!("{csv}"),
                _ => print!("{body}"),
            },
        }
        let failed = report.failed();
        if failed.is_empty() {
            return Ok(0);
        }
        let violated: Vec<Value> =
            failed.iter().map(|(name, _, detail)| json!({"check": name, "detail": detail})).collect();
        eprintln!("{}", serde_json::to_string(&json!({"status": "assertion-failed", "violated": violated}))?);
        Ok(EXIT_ASSERTION)
    }
}

/// CSV from a header and rows of strings.
pub fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Runtime(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Runtime(e.to_string()))
}
