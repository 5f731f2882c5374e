//! Pass/fail bookkeeping shared by the verifiers.

use serde::Serialize;

/// The outcome of one named identity, aggregated over all its cases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    /// Empty on success; otherwise the first failing case with both sides.
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Starts a check; finish it with [`CheckBuilder::finish`].
    pub fn check(&mut self, suite: &str, name: &str) -> CheckBuilder<'_> {
        CheckBuilder { report: self, suite: suite.into(), name: name.into(), cases: 0, failure: None }
    }
}

pub struct CheckBuilder<'a> {
    report: &'a mut Report,
    suite: String,
    name: String,
    cases: usize,
    failure: Option<String>,
}

impl CheckBuilder<'_> {
    /// Records one case; `detail` is only evaluated for the first failure.
    pub fn case(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(detail());
        }
    }

    pub fn fail(&mut self, detail: String) {
        self.case(false, || detail);
    }

    pub fn finish(self) -> bool {
        let passed = self.failure.is_none();
        self.report.checks.push(Check {
            suite: self.suite,
            name: self.name,
            passed,
            cases: self.cases,
            detail: self.failure.unwrap_or_default(),
        });
        passed
    }
}
