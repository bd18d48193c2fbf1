//! Verification reports: one record per checked instance, emitted as JSON lines.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub family: String,
    pub p: u32,
    pub indices: BTreeMap<String, i64>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl Record {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Builds an index map from name/value pairs.
pub fn indices(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    records: Vec<Record>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: Record) {
        self.records.push(record);
    }

    /// Records one instance. The witness is only built on failure.
    pub fn check(
        &mut self,
        family: &str,
        p: u32,
        idx: &[(&str, i64)],
        ok: bool,
        witness: impl FnOnce() -> String,
    ) {
        self.records.push(Record {
            family: family.to_string(),
            p,
            indices: indices(idx),
            status: if ok { Status::Pass } else { Status::Fail },
            witness: if ok { None } else { Some(witness()) },
        });
    }

    /// Records a passing instance that carries an informational note.
    pub fn note(&mut self, family: &str, p: u32, idx: &[(&str, i64)], note: String) {
        self.records.push(Record {
            family: family.to_string(),
            p,
            indices: indices(idx),
            status: Status::Pass,
            witness: Some(note),
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.passed())
    }

    pub fn failure_count(&self) -> usize {
        self.failures().count()
    }

    pub fn passed(&self) -> bool {
        self.failure_count() == 0
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} checked, {} failed", self.len(), self.failure_count())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jsonl_round_trip() {
        let mut r = Report::new();
        r.check("e3", 2, &[("i", 1), ("n", 4)], true, || unreachable!());
        r.check("e3", 2, &[("i", 2)], false, || "Sq(2)".into());
        let text = r.to_jsonl();
        let lines: Vec<Record> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines, r.records());
        assert!(text.starts_with(r#"{"family":"e3","p":2,"indices":{"i":1,"n":4},"status":"pass"}"#));
        assert!(!r.passed());
        assert_eq!(r.to_string(), "2 checked, 1 failed");
    }
}
