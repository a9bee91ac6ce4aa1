//! Verification records and JSON-lines reports.

use serde::Serialize;

/// Outcome of one family of identity instances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub fixture: String,
    pub instances: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

/// Accumulates instances of one identity, keeping the first failure.
#[derive(Clone, Debug)]
pub struct Check {
    record: CheckRecord,
}

impl Check {
    pub fn new(id: &str, anchor: &str, fixture: &str) -> Self {
        Check {
            record: CheckRecord {
                id: id.to_string(),
                anchor: anchor.to_string(),
                fixture: fixture.to_string(),
                instances: 0,
                passed: true,
                counterexample: None,
                wall_ms: None,
            },
        }
    }

    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.record.instances += 1;
        if !ok && self.record.passed {
            self.record.passed = false;
            self.record.counterexample = Some(describe());
        }
    }

    /// Merges counts from a check run on another thread; the failure kept is
    /// the one from `self` if both failed.
    pub fn merge(&mut self, other: Check) {
        self.record.instances += other.record.instances;
        if self.record.passed && !other.record.passed {
            self.record.passed = false;
            self.record.counterexample = other.record.counterexample;
        }
    }

    pub fn passed(&self) -> bool {
        self.record.passed
    }

    pub fn finish(self) -> CheckRecord {
        self.record
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, c: Check) {
        self.records.push(c.finish());
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    pub fn total_instances(&self) -> usize {
        self.records.iter().map(|r| r.instances).sum()
    }

    pub fn get(&self, id: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.passed)
    }

    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("serializable"));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_first_failure_and_counts() {
        let mut c = Check::new("x", "anchor", "A1");
        c.record(true, || unreachable!());
        c.record(false, || "first".into());
        c.record(false, || "second".into());
        let mut other = Check::new("x", "anchor", "A1");
        other.record(true, String::new);
        c.merge(other);
        let r = c.finish();
        assert_eq!(r.instances, 4);
        assert!(!r.passed);
        assert_eq!(r.counterexample.as_deref(), Some("first"));
    }

    #[test]
    fn json_lines_omit_absent_fields() {
        let mut rep = Report::new();
        rep.push(Check::new("id", "anchor", "A0"));
        assert_eq!(
            rep.to_json_lines(),
            "{\"id\":\"id\",\"anchor\":\"anchor\",\"fixture\":\"A0\",\"instances\":0,\"passed\":true}\n"
        );
    }
}
