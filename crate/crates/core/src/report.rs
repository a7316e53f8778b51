//! Verification reports shared by all suites.
//!
//! A [`Report`] is a list of [`CaseReport`]s keyed by [`CaseKey`]. Each case
//! tallies named checks: how many exact comparisons were made and how many
//! failed, with full operands for the first failures. Cases are sorted by key
//! before emission and timing is kept out of the serialized form, so equal
//! inputs give byte-identical JSON.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;
/// Failures kept with operands per check; further failures are only counted.
pub const MAX_RECORDED_FAILURES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CaseKey {
    pub suite: String,
    pub p: usize,
    pub q: usize,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub j: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generator: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sample: Option<u64>,
}

impl CaseKey {
    pub fn new(suite: &str, p: usize, q: usize, k: usize) -> Self {
        Self { suite: suite.into(), p, q, k, j: None, generator: None, sample: None }
    }

    pub fn with_j(mut self, j: usize) -> Self {
        self.j = Some(j);
        self
    }

    pub fn with_generator(mut self, g: impl Into<String>) -> Self {
        self.generator = Some(g.into());
        self
    }
}

impl fmt::Display for CaseKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} p={} q={} k={}", self.suite, self.p, self.q, self.k)?;
        if let Some(j) = self.j {
            write!(f, " j={j}")?;
        }
        if let Some(g) = &self.generator {
            write!(f, " generator={g}")?;
        }
        if let Some(s) = self.sample {
            write!(f, " sample={s}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckTally {
    pub comparisons: u64,
    pub failures: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub operands: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub key: CaseKey,
    pub status: Status,
    pub checks: BTreeMap<String, CheckTally>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub measurements: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CaseReport {
    pub fn new(key: CaseKey) -> Self {
        Self {
            key,
            status: Status::Pass,
            checks: BTreeMap::new(),
            measurements: BTreeMap::new(),
            failures: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    /// Records one comparison; `operands` is only evaluated on failure.
    pub fn check(&mut self, name: &str, ok: bool, operands: impl FnOnce() -> Value) {
        let tally = self.checks.entry(name.to_string()).or_default();
        tally.comparisons += 1;
        if !ok {
            tally.failures += 1;
            self.status = Status::Fail;
            if tally.failures as usize <= MAX_RECORDED_FAILURES {
                self.failures.push(Failure { check: name.to_string(), operands: operands() });
            }
        }
    }

    /// Records a failure that is not tied to a comparison, such as an error.
    pub fn error(&mut self, name: &str, message: impl Into<String>) {
        let message = message.into();
        self.check(name, false, || Value::String(message));
    }

    pub fn measure(&mut self, name: &str, value: Value) {
        self.measurements.insert(name.to_string(), value);
    }

    /// Merges the checks of `other` under `prefix.`.
    pub fn absorb(&mut self, prefix: &str, other: CaseReport) {
        for (name, tally) in other.checks {
            let t = self.checks.entry(format!("{prefix}.{name}")).or_default();
            t.comparisons += tally.comparisons;
            t.failures += tally.failures;
        }
        for (name, v) in other.measurements {
            self.measurements.insert(format!("{prefix}.{name}"), v);
        }
        for f in other.failures {
            self.failures.push(Failure { check: format!("{prefix}.{}", f.check), operands: f.operands });
        }
        if other.status == Status::Fail {
            self.status = Status::Fail;
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn comparisons(&self) -> u64 {
        self.checks.values().map(|t| t.comparisons).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub suite: String,
    pub seed: u64,
    pub summary: Summary,
    pub cases: Vec<CaseReport>,
}

impl Report {
    /// Sorts cases by key; panics on duplicate keys, which are a harness bug.
    pub fn new(suite: &str, seed: u64, mut cases: Vec<CaseReport>) -> Self {
        cases.sort_by(|a, b| a.key.cmp(&b.key));
        for pair in cases.windows(2) {
            assert_ne!(pair[0].key, pair[1].key, "duplicate case key");
        }
        let passed = cases.iter().filter(|c| c.passed()).count();
        let summary = Summary { cases: cases.len(), passed, failed: cases.len() - passed };
        Self { schema: SCHEMA_VERSION, suite: suite.into(), seed, summary, cases }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn elapsed(&self) -> Duration {
        self.cases.iter().map(|c| c.elapsed).sum()
    }

    /// Human-readable rendering with timings.
    pub fn render_text(&self) -> String {
        let mut out = format!("suite {} seed {} (schema {})\n", self.suite, self.seed, self.schema);
        for case in &self.cases {
            let status = if case.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{status} {} [{} checks, {} comparisons, {:.1} ms]\n",
                case.key,
                case.checks.len(),
                case.comparisons(),
                case.elapsed.as_secs_f64() * 1e3
            ));
            for (name, value) in &case.measurements {
                out.push_str(&format!("    {name} = {value}\n"));
            }
            for f in &case.failures {
                out.push_str(&format!("    failed {}: {}\n", f.check, f.operands));
            }
        }
        out.push_str(&format!(
            "{} cases, {} passed, {} failed, {:.2} s\n",
            self.summary.cases,
            self.summary.passed,
            self.summary.failed,
            self.elapsed().as_secs_f64()
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cases_are_sorted_and_counted() {
        let mut bad = CaseReport::new(CaseKey::new("s", 1, 0, 2));
        bad.check("x", false, || Value::from(1));
        let good = CaseReport::new(CaseKey::new("s", 0, 1, 2));
        let r = Report::new("s", 0, vec![bad, good]);
        assert_eq!(r.cases[0].key.p, 0);
        assert_eq!(r.summary, Summary { cases: 2, passed: 1, failed: 1 });
        assert!(!r.passed());
    }

    #[test]
    #[should_panic(expected = "duplicate case key")]
    fn duplicate_keys_panic() {
        let a = CaseReport::new(CaseKey::new("s", 1, 0, 2));
        Report::new("s", 0, vec![a.clone(), a]);
    }

    #[test]
    fn failures_are_capped() {
        let mut c = CaseReport::new(CaseKey::new("s", 1, 0, 2));
        for i in 0..20 {
            c.check("x", false, || Value::from(i));
        }
        assert_eq!(c.failures.len(), MAX_RECORDED_FAILURES);
        assert_eq!(c.checks["x"].failures, 20);
    }
}
