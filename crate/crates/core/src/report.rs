//! Pass/fail records shared by every verification suite.

use serde::Serialize;
use serde_json::Value;

/// Outcome of one relation check, serialized as `{"relation","point","pass"}`.
#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub relation: String,
    pub point: Value,
    pub pass: bool,
}

impl RelationReport {
    pub fn new(relation: impl Into<String>, point: Value, pass: bool) -> Self {
        RelationReport {
            relation: relation.into(),
            point,
            pass,
        }
    }
}

/// Whether every report in a suite passed.
pub fn all_pass(reports: &[RelationReport]) -> bool {
    reports.iter().all(|r| r.pass)
}
