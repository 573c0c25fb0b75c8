//! Pass/fail bookkeeping for sampled identity checks.

use serde::{Deserialize, Serialize};

/// Counterexamples kept per report.
pub const MAX_COUNTEREXAMPLES: usize = 3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check_name: String,
    pub instance: String,
    /// Instances actually checked (passed + failed).
    pub samples: usize,
    pub passed: usize,
    pub failed: usize,
    /// Draws rejected because they fell outside the domain of some leg.
    pub skipped: usize,
    pub counterexamples: Vec<serde_json::Value>,
}

impl Report {
    pub fn new(check_name: impl Into<String>, instance: impl Into<String>) -> Self {
        Report {
            check_name: check_name.into(),
            instance: instance.into(),
            samples: 0,
            passed: 0,
            failed: 0,
            skipped: 0,
            counterexamples: Vec::new(),
        }
    }

    pub fn pass(&mut self) {
        self.samples += 1;
        self.passed += 1;
    }

    pub fn fail(&mut self, counterexample: serde_json::Value) {
        self.samples += 1;
        self.failed += 1;
        if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(counterexample);
        }
    }

    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    pub fn record(&mut self, ok: bool, counterexample: impl FnOnce() -> serde_json::Value) {
        if ok {
            self.pass()
        } else {
            self.fail(counterexample())
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn line(&self) -> String {
        format!(
            "{} {} [{}]: {}/{} passed, {} skipped",
            if self.ok() { "PASS" } else { "FAIL" },
            self.check_name,
            self.instance,
            self.passed,
            self.samples,
            self.skipped
        )
    }
}

/// A named collection of reports.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Suite {
    pub name: String,
    pub reports: Vec<Report>,
}

impl Suite {
    pub fn new(name: impl Into<String>) -> Self {
        Suite {
            name: name.into(),
            reports: Vec::new(),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(Report::ok)
    }

    pub fn failed(&self) -> usize {
        self.reports.iter().map(|r| r.failed).sum()
    }

    pub fn passed(&self) -> usize {
        self.reports.iter().map(|r| r.passed).sum()
    }

    pub fn failing(&self) -> impl Iterator<Item = &Report> {
        self.reports.iter().filter(|r| !r.ok())
    }

    pub fn with_check<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a Report> + 'a {
        self.reports.iter().filter(move |r| r.check_name == name)
    }

    pub fn extend(&mut self, other: Suite) {
        self.reports.extend(other.reports);
    }

    /// Minimum checked-sample count over reports with the given name.
    pub fn min_samples(&self, name: &str) -> usize {
        self.with_check(name).map(|r| r.samples).min().unwrap_or(0)
    }

    pub fn text(&self) -> String {
        let mut out = format!(
            "{}: {} checks, {} passed, {} failed\n",
            self.name,
            self.reports.len(),
            self.passed(),
            self.failed()
        );
        for r in &self.reports {
            out.push_str(&r.line());
            out.push('\n');
        }
        out
    }
}
