//! Pass/fail reports shared by the structural checkers.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one exhaustive check. On failure `witnesses` names the first
/// offending case (tuple labels, group element, ...) and `message` says what
/// went wrong.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub status: Status,
    /// Arity, simplicial level, or similar index of the failing case.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub message: String,
    pub cases: usize,
}

impl CheckReport {
    pub fn pass(check: impl Into<String>, cases: usize) -> Self {
        CheckReport {
            check: check.into(),
            status: Status::Pass,
            level: None,
            witnesses: Vec::new(),
            message: String::new(),
            cases,
        }
    }

    pub fn fail(
        check: impl Into<String>,
        level: Option<usize>,
        witnesses: Vec<String>,
        message: impl Into<String>,
        cases: usize,
    ) -> Self {
        CheckReport { check: check.into(), status: Status::Fail, level, witnesses, message: message.into(), cases }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Runs `cases`, stopping at the first `Err((level, witnesses, message))`.
    pub fn run<I, F>(check: &str, cases: I, mut f: F) -> Self
    where
        I: IntoIterator,
        F: FnMut(I::Item) -> Result<(), (Option<usize>, Vec<String>, String)>,
    {
        let mut count = 0;
        for case in cases {
            count += 1;
            if let Err((level, witnesses, message)) = f(case) {
                return CheckReport::fail(check, level, witnesses, message, count);
            }
        }
        CheckReport::pass(check, count)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.status {
            Status::Pass => write!(f, "{}: pass ({} case{})", self.check, self.cases, if self.cases == 1 { "" } else { "s" }),
            Status::Fail => {
                write!(f, "{}: FAIL", self.check)?;
                if let Some(level) = self.level {
                    write!(f, " at n={level}")?;
                }
                if !self.witnesses.is_empty() {
                    write!(f, " on ({})", self.witnesses.join(", "))?;
                }
                if !self.message.is_empty() {
                    write!(f, ": {}", self.message)?;
                }
                Ok(())
            }
        }
    }
}

/// Several reports that pass only together.
pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(CheckReport::passed)
}
