//! JSON and CSV emission. Every document carries the schema version and the
//! resolved parameters.

use std::io::Write;
use std::path::Path;

use asep2::exact::ParamRecord;
use asep2::ParamPoint;
use clap::ValueEnum;
use serde_json::{json, Map, Value};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// A row-oriented view of a result, used for CSV.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Self { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

/// Result of one subcommand.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub command: &'static str,
    pub params: ParamPoint,
    /// False when any requested check failed; drives the exit code.
    pub pass: bool,
    pub body: Map<String, Value>,
    pub table: Table,
}

impl Outcome {
    pub fn to_json(&self) -> Value {
        let mut doc = Map::new();
        doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
        doc.insert("command".into(), json!(self.command));
        doc.insert("params".into(), json!(ParamRecord::from(&self.params)));
        doc.insert("pass".into(), json!(self.pass));
        doc.extend(self.body.clone());
        Value::Object(doc)
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let r = ParamRecord::from(&self.params);
        let mut out = format!(
            "# schema_version={} command={} s={} a={} b={} c={} d={}{}\n",
            SCHEMA_VERSION,
            self.command,
            r.s,
            r.a,
            r.b,
            r.c,
            r.d,
            r.xi.map(|x| format!(" xi={x}")).unwrap_or_default()
        );
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.table.headers).map_err(|e| CliError::Io(e.to_string()))?;
        for row in &self.table.rows {
            w.write_record(row).map_err(|e| CliError::Io(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        out.push_str(&String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))?);
        Ok(out)
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.to_json())
                .map(|s| s + "\n")
                .map_err(|e| CliError::Io(e.to_string())),
            Format::Csv => self.to_csv(),
        }
    }
}

pub fn write_output(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

/// Decimal rendering of `mantissa · e^{log_scale}` that never overflows.
pub fn scaled_decimal(mantissa: f64, log_scale: f64) -> String {
    let v = mantissa * log_scale.exp();
    if v.is_finite() && v != 0.0 {
        return format!("{v:e}");
    }
    if mantissa == 0.0 {
        return "0".into();
    }
    let log10 = mantissa.abs().log10() + log_scale / std::f64::consts::LN_10;
    let exp = log10.floor();
    let lead = 10f64.powf(log10 - exp) * mantissa.signum();
    format!("{lead}e{exp}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_values_render() {
        assert_eq!(scaled_decimal(2.0, 0.0), "2e0");
        let s = scaled_decimal(1.0, 1000.0 * std::f64::consts::LN_10);
        let (lead, exp) = s.split_once('e').unwrap();
        let x: f64 = lead.parse::<f64>().unwrap() * 10f64.powi(exp.parse::<i32>().unwrap() - 1000);
        assert!((x - 1.0).abs() < 1e-9, "{s}");
    }
}
