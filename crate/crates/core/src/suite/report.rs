use std::fmt::Write as _;
use std::time::Duration;

/// How a single comparison came out.
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    /// Exact identity, holds or not.
    Exact(bool),
    /// p-adic digits of agreement against a threshold.
    Digits { got: i64, need: i64 },
    /// Not applicable to this input.
    Skipped(String),
    /// The computation itself failed.
    Error(String),
}

impl Outcome {
    pub fn passed(&self) -> bool {
        match self {
            Outcome::Exact(ok) => *ok,
            Outcome::Digits { got, need } => got >= need,
            Outcome::Skipped(_) => true,
            Outcome::Error(_) => false,
        }
    }

    fn verdict(&self) -> String {
        match self {
            Outcome::Exact(true) => "exact".into(),
            Outcome::Exact(false) => "FAILED (exact identity does not hold)".into(),
            Outcome::Digits { got, need } if got >= need => format!("{got} digits (need {need})"),
            Outcome::Digits { got, need } => format!("FAILED: {got} digits (need {need})"),
            Outcome::Skipped(why) => format!("skipped: {why}"),
            Outcome::Error(e) => format!("ERROR: {e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckRecord {
    pub check: String,
    /// `label/p` or empty for curve-independent checks.
    pub subject: String,
    /// The formula being compared.
    pub anchor: String,
    pub left: String,
    pub right: String,
    pub outcome: Outcome,
    pub runtime: Duration,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerificationReport {
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.outcome.passed())
    }

    pub fn failures(&self) -> Vec<&CheckRecord> {
        self.records.iter().filter(|r| !r.outcome.passed()).collect()
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    /// Everything except timings; identical inputs give identical text.
    pub fn comparison(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            let tag = if r.outcome.passed() { "PASS" } else { "FAIL" };
            let subj = if r.subject.is_empty() { String::new() } else { format!(" {}", r.subject) };
            let _ = writeln!(s, "[{tag}] {}{subj}: {}", r.check, r.anchor);
            if !r.left.is_empty() || !r.right.is_empty() {
                let _ = writeln!(s, "       left  {}", r.left);
                let _ = writeln!(s, "       right {}", r.right);
            }
            let _ = writeln!(s, "       {}", r.outcome.verdict());
        }
        let n = self.records.len();
        let bad = self.failures().len();
        let _ = writeln!(s, "{} checks, {} passed, {} failed", n, n - bad, bad);
        s
    }

    pub fn timings(&self) -> String {
        let mut s = String::from("timings\n");
        for r in &self.records {
            let _ = writeln!(s, "  {:<14} {:<10} {:>10.3} s", r.check, r.subject, r.runtime.as_secs_f64());
        }
        s
    }

    pub fn render(&self) -> String {
        format!("{}\n{}", self.comparison(), self.timings())
    }
}
