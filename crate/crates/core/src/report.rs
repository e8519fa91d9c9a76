//! Experiment reports: computed values next to reference values, with a
//! record of where each reference comes from.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// Where a reference value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// stated in the published source of the example
    Published,
    /// computed by an independent method (the tests recompute it)
    Derived,
    /// immediate from the definitions
    Trivial,
}

impl Provenance {
    pub fn label(self) -> &'static str {
        match self {
            Provenance::Published => "published",
            Provenance::Derived => "derived",
            Provenance::Trivial => "trivial",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Match,
    Mismatch,
    /// computed, nothing to compare against
    Informational,
    /// reference constant shown as is; the model cannot compute it
    NotRecomputed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reference {
    pub value: Value,
    pub provenance: Provenance,
    pub recomputed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub computed: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<Reference>,
    pub status: Status,
}

fn to_value<T: Serialize>(v: T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

impl Check {
    pub fn compare<C: Serialize, R: Serialize>(name: &str, computed: C, reference: R, provenance: Provenance) -> Self {
        let computed = to_value(computed);
        let reference = to_value(reference);
        let status = if computed == reference {
            Status::Match
        } else {
            Status::Mismatch
        };
        Self {
            name: name.to_string(),
            computed: Some(computed),
            reference: Some(Reference {
                value: reference,
                provenance,
                recomputed: true,
            }),
            status,
        }
    }

    pub fn published<C: Serialize, R: Serialize>(name: &str, computed: C, reference: R) -> Self {
        Self::compare(name, computed, reference, Provenance::Published)
    }

    pub fn derived<C: Serialize, R: Serialize>(name: &str, computed: C, reference: R) -> Self {
        Self::compare(name, computed, reference, Provenance::Derived)
    }

    pub fn trivial<C: Serialize, R: Serialize>(name: &str, computed: C, reference: R) -> Self {
        Self::compare(name, computed, reference, Provenance::Trivial)
    }

    pub fn info<C: Serialize>(name: &str, computed: C) -> Self {
        Self {
            name: name.to_string(),
            computed: Some(to_value(computed)),
            reference: None,
            status: Status::Informational,
        }
    }

    pub fn not_recomputed<R: Serialize>(name: &str, reference: R, provenance: Provenance) -> Self {
        Self {
            name: name.to_string(),
            computed: None,
            reference: Some(Reference {
                value: to_value(reference),
                provenance,
                recomputed: false,
            }),
            status: Status::NotRecomputed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub id: String,
    /// what the experiment reproduces, in a few words
    pub anchor: String,
    pub checks: Vec<Check>,
    pub runtime_micros: u64,
}

impl ExperimentReport {
    pub fn all_match(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Mismatch)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Mismatch)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// The report with the runtime zeroed, for golden comparisons.
    pub fn without_runtime(&self) -> Self {
        Self {
            runtime_micros: 0,
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== {}: {} ({} µs)", self.id, self.anchor, self.runtime_micros);
        let rows: Vec<[String; 4]> = self
            .checks
            .iter()
            .map(|c| {
                let status = match c.status {
                    Status::Match => "ok",
                    Status::Mismatch => "MISMATCH",
                    Status::Informational => "info",
                    Status::NotRecomputed => "const",
                };
                let computed = c.computed.as_ref().map_or("-".to_string(), compact);
                let reference = c.reference.as_ref().map_or(String::new(), |r| {
                    let mark = if r.recomputed { "" } else { ", not recomputed" };
                    format!("{} [{}{}]", compact(&r.value), r.provenance.label(), mark)
                });
                [status.to_string(), c.name.clone(), computed, reference]
            })
            .collect();
        let width = |k: usize| rows.iter().map(|r| r[k].chars().count()).max().unwrap_or(0);
        let (w0, w1, w2) = (width(0), width(1), width(2));
        for r in rows {
            let line = format!("  {:w0$}  {:w1$}  {:w2$}  {}", r[0], r[1], r[2], r[3]);
            let _ = writeln!(out, "{}", line.trim_end());
        }
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statuses() {
        assert_eq!(Check::published("x", 1, 1).status, Status::Match);
        assert_eq!(Check::derived("x", [1, 2], [1, 3]).status, Status::Mismatch);
        assert_eq!(Check::info("x", "y").status, Status::Informational);
        let c = Check::not_recomputed("x", 69, Provenance::Published);
        assert_eq!(c.status, Status::NotRecomputed);
        assert!(!c.reference.unwrap().recomputed);
    }

    #[test]
    fn json_round_trip_and_table() {
        let r = ExperimentReport {
            schema_version: SCHEMA_VERSION,
            id: "demo".into(),
            anchor: "a demo".into(),
            checks: vec![
                Check::published("degree", 10, 10),
                Check::info("note", serde_json::json!({"a": [1, 2]})),
                Check::not_recomputed("bound", 74, Provenance::Published),
            ],
            runtime_micros: 12,
        };
        assert_eq!(ExperimentReport::from_json(&r.to_json()).unwrap(), r);
        let t = r.to_table();
        assert!(t.contains("degree"));
        assert!(t.contains("not recomputed"));
        assert!(r.all_match());
    }
}
