//! Parameter files: TOML with every rational written as a `"p/q"` string.

use std::path::Path;

use asep2::exact::{parse_rational, ParamRecord};
use asep2::ParamPoint;
use clap::ValueEnum;

use crate::error::CliError;

const KEYS: [&str; 6] = ["s", "a", "b", "c", "d", "xi"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    MaximalCurrent,
    ADominated,
    CDominated,
}

impl Preset {
    pub fn source(self) -> &'static str {
        match self {
            Self::MaximalCurrent => include_str!("../presets/maximal-current.toml"),
            Self::ADominated => include_str!("../presets/a-dominated.toml"),
            Self::CDominated => include_str!("../presets/c-dominated.toml"),
        }
    }
}

/// Reads one value as exact text; integers are accepted, floats are not.
fn exact_text(key: &str, v: &toml::Value) -> Result<String, CliError> {
    match v {
        toml::Value::String(s) => {
            parse_rational(s).map_err(|_| CliError::Params(format!("{key} = {s:?} is not a rational \"p/q\"")))?;
            Ok(s.trim().to_string())
        }
        toml::Value::Integer(i) => Ok(i.to_string()),
        toml::Value::Float(f) => Err(CliError::Params(format!(
            "{key} = {f} is a float; write it as an exact string such as \"1/2\""
        ))),
        other => Err(CliError::Params(format!("{key} has unsupported type {}", other.type_str()))),
    }
}

/// Parses a parameter file, then applies `key=value` overrides.
pub fn parse_params(text: &str, overrides: &[String]) -> Result<ParamPoint, CliError> {
    let mut table: toml::Table = text.parse().map_err(|e: toml::de::Error| CliError::Params(e.message().to_string()))?;
    for o in overrides {
        let (k, v) = o
            .split_once('=')
            .ok_or_else(|| CliError::Params(format!("override {o:?} is not key=value")))?;
        table.insert(k.trim().to_string(), toml::Value::String(v.trim().to_string()));
    }
    if let Some(k) = table.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(CliError::Params(format!("unknown key {k:?}; expected one of {KEYS:?}")));
    }
    let get = |k: &str| -> Result<String, CliError> {
        let v = table.get(k).ok_or_else(|| CliError::Params(format!("missing key {k}")))?;
        exact_text(k, v)
    };
    let record = ParamRecord {
        s: get("s")?,
        a: get("a")?,
        b: get("b")?,
        c: get("c")?,
        d: get("d")?,
        xi: table.get("xi").map(|v| exact_text("xi", v)).transpose()?,
    };
    ParamPoint::try_from(&record).map_err(|e| CliError::Params(e.to_string()))
}

pub fn load_params(path: Option<&Path>, preset: Preset, overrides: &[String]) -> Result<ParamPoint, CliError> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            parse_params(&text, overrides)
        }
        None => parse_params(preset.source(), overrides),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_parse_and_are_physical() {
        for p in Preset::value_variants() {
            let pp = parse_params(p.source(), &[]).unwrap();
            assert!(pp.is_physical(), "{p:?}");
        }
    }

    #[test]
    fn floats_are_rejected() {
        let e = parse_params("s = 0.5\na=\"-1/2\"\nb=\"1/2\"\nc=\"-1/2\"\nd=\"1/3\"", &[]).unwrap_err();
        assert!(e.to_string().contains("float"));
    }

    #[test]
    fn invariant_violation_is_named() {
        let e = parse_params("s=\"1/2\"\na=\"1\"\nb=\"1/2\"\nc=\"-1/2\"\nd=\"1/3\"", &[]).unwrap_err();
        assert!(e.to_string().contains("a must differ from 1"), "{e}");
    }

    #[test]
    fn overrides_and_unknown_keys() {
        let p = parse_params(Preset::ADominated.source(), &["a=-4".into()]).unwrap();
        assert_eq!(p.a(), &asep2::exact::int(-4));
        assert!(parse_params(Preset::ADominated.source(), &["e=2".into()]).is_err());
    }
}
