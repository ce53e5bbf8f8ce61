use std::fmt::Write as _;

use serde::Serialize;

use super::{CheckResult, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportStatus {
    Pass,
    Fail,
}

/// Results of a suite run in canonical order (by check name, then by the
/// order the suite produced them).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub status: ReportStatus,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(mut checks: Vec<CheckResult>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let status =
            if checks.iter().any(|c| c.status == Status::Fail) { ReportStatus::Fail } else { ReportStatus::Pass };
        Self { status, checks }
    }

    pub fn passed(&self) -> bool {
        self.status == ReportStatus::Pass
    }

    /// Process exit code: 0 when every non-skipped check passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let count = |s| self.checks.iter().filter(|c| c.status == s).count();
        (count(Status::Pass), count(Status::Fail), count(Status::Skipped))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Fixed-width summary table, one line per check.
    pub fn to_table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(5).max(5);
        let mut out = String::new();
        let _ =
            writeln!(out, "{:<width$}  {:<7}  {:>24}  {:>24}  detail", "check", "status", "discrepancy", "tolerance");
        for c in &self.checks {
            let detail = match c.status {
                Status::Skipped => c.note.clone().unwrap_or_default(),
                Status::Fail => c.witness.clone().unwrap_or_default(),
                Status::Pass => c.tolerance_rule.clone(),
            };
            let _ = writeln!(
                out,
                "{:<width$}  {:<7}  {:>24.16e}  {:>24.16e}  {detail}",
                c.name, c.status, c.discrepancy, c.tolerance
            );
        }
        let (p, f, s) = self.counts();
        let _ = writeln!(out, "{p} passed, {f} failed, {s} skipped: {}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_passes() {
        let r = Report::new(Vec::new());
        assert!(r.passed());
        assert_eq!(r.exit_code(), 0);
        assert!(r.to_json().contains("\"checks\": []"));
    }

    #[test]
    fn skipped_checks_do_not_fail() {
        let r =
            Report::new(vec![CheckResult::measured("b", 0.0, 0.0, "exact", None), CheckResult::skipped("a", "why")]);
        assert!(r.passed());
        assert_eq!(r.checks[0].name, "a");
        let bad = Report::new(vec![CheckResult::measured("c", 1.0, 0.0, "exact", None)]);
        assert_eq!(bad.exit_code(), 1);
        assert!(bad.to_table().contains("FAIL"));
    }
}
